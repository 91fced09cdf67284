"""
Classical pivoting rules on one program
=======================================

"""

from pivotlab import (
    Bland,
    Dantzig,
    GreatestImprovement,
    RandomIndex,
    SteepestEdge,
    big_m_transform,
    brute_force_optimum,
    original_verdict,
    random_nondegenerate_lps,
    trace,
)

lp = list(random_nondegenerate_lps(seed=5, count=15, max_m=4, max_n=8))[14]
bm = big_m_transform(lp)
print(f"{lp.m} rows, {lp.n} columns; big-M start {bm.start}")

for rule in (Dantzig(), Bland(), SteepestEdge(), GreatestImprovement(), RandomIndex(3)):
    tr = trace(rule, bm, cap=1000)
    tr.check()  # adjacency and strictly increasing objective on every step
    value = bm.tableau(tr.last).objective()
    print(f"{rule.name:22s} {len(tr) - 1} pivots  {tr.verdict}  value {value}")

# Same answer as enumerating every basis, read back onto the original program.
truth = brute_force_optimum(lp)
print("oracle:", truth)
print("mapped:", original_verdict(bm, tr.verdict.classification, value))

# The random-index rule is reproducible per seed and differs across seeds.
paths = {tuple(trace(RandomIndex(s), bm, cap=1000).bases) for s in range(20)}
print(len(paths), "distinct random-index paths over 20 seeds")
