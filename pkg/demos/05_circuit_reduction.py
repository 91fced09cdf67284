"""
From circuit paths to pivoting paths
====================================

"""

from pivotlab import BitString
from pivotlab.circuits import (
    build_reduction,
    c_path,
    c_path_member,
    mixed_walker_circuit,
    r_path_member,
)

C = mixed_walker_circuit(3)
print("circuit path:", [str(x) for x in c_path(C)])

# Ask the same question on both sides for every nonzero target.
for k in range(1, 8):
    x_c = BitString(tuple((k >> s) & 1 for s in (2, 1, 0)))
    ctx = build_reduction(C, x_c)
    run = r_path_member("repaired", ctx)
    print(x_c, "C-PATH", c_path_member(C, x_c), " rule R", run.verdict, f"({len(run)} bases)")

# The literal seven-step rule breaks down; the log says where.
run = r_path_member("paper", build_reduction(C, BitString.parse("011")))
for step, code, detail in run.diagnostics[:4]:
    print(step, code, detail)
