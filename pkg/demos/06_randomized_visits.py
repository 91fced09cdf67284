"""
Visit probabilities of the random-index rule
============================================

"""

from fractions import Fraction

from pivotlab import Basis
from pivotlab.corpus import two_branch_lp
from pivotlab.randomized import decide_fp, estimate_visit, visit_probabilities

lp = two_branch_lp()
for B, p in visit_probabilities(lp).items():
    print(B, p)

est = estimate_visit(lp, Basis.of(2, 3), trials=10_000, seed=0, delta=0.01, exact=True)
print(f"p_hat = {float(est.p_hat):.4f}  radius = {est.radius:.4f}  exact = {est.exact_p}")

# Is the visit probability at most 1/4, or at least 1/2?
print(decide_fp(est, Fraction(1, 4), 4))
print(decide_fp(estimate_visit(lp, Basis.of(2, 3), trials=20, seed=1), Fraction(1, 4), 4))
