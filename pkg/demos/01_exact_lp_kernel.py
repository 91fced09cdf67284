"""
Exact LP kernel: bases, classification, big-M
=============================================

"""

from fractions import Fraction

from pivotlab import Basis, basic_solution, big_m_transform, classify_basis, make_lp, reduced_costs

# max x1 subject to x1 + x2 = 1, x >= 0
lp = make_lp([[1, 1]], [1], [1, 0])
for B in (Basis.of(1), Basis.of(2)):
    print(B, "x_B =", basic_solution(lp, B), "reduced =", reduced_costs(lp, B), classify_basis(lp, B))

# Everything stays rational; a third is a third.
skew = make_lp([[3, 1]], [1], [1, 0])
print(basic_solution(skew, Basis.of(1)) == (Fraction(1, 3),))

# The three terminal kinds.
print(classify_basis(make_lp([[1, -1]], [0], [0, 1]), Basis.of(1)))   # ray
print(classify_basis(make_lp([[1, 1]], [-1], [1, 0]), Basis.of(1)))   # x1 + x2 = -1

# Big-M: append -A with cost -M and get a feasible start for free.
bm = big_m_transform(make_lp([[1, 2, 0], [0, 1, 1]], [-2, 3], [1, 1, 1]))
print("start", bm.start, "x_B =", basic_solution(bm, bm.start))
print("costs", [str(c) for c in bm.c])
