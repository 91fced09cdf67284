"""
Shadow vertex: path membership without walking the path
========================================================

"""

import itertools

from pivotlab import Basis, make_lp
from pivotlab.errors import SingularBasis
from pivotlab.shadow import lambda_interval, make_homotopy, shadow_member, shadow_path

lp = make_lp([[1, 1]], [1], [1, 0])
H = make_homotopy(lp, Basis.of(2))
print("b0 =", H.b0, "c0 =", H.c0)
for B in (Basis.of(2), Basis.of(1)):
    print(B, lambda_interval(lp, H, B))

# A larger program: every basis is tested directly, then compared with the walk.
lp = make_lp(
    [[1, 2, -1, 0, 1], [0, 1, 1, 1, -2], [2, -1, 0, 1, 1]],
    [4, 3, 5],
    [1, 3, -1, 2, 1],
)
H = make_homotopy(lp, Basis.of(1, 2, 3))
path = shadow_path(lp, H)
print("path:", [str(B) for B in path.bases], "ends", path.end)
for B, iv in zip(path.bases, path.intervals):
    print(f"  {B}  lambda in {iv}")

members = []
for cols in itertools.combinations(range(1, lp.n + 1), lp.m):
    try:
        if shadow_member(lp, H, Basis(cols)):
            members.append(Basis(cols))
    except SingularBasis:
        pass
print("members:", [str(B) for B in members])
