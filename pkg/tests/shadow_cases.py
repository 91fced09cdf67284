"""Random instances for the shadow-vertex membership checks."""

import itertools
import random

from pivotlab.corpus import random_lp
from pivotlab.errors import DegenerateTie, SingularBasis
from pivotlab.lp import Basis, greedy_basis
from pivotlab.shadow import lambda_interval, make_homotopy, shadow_path


def all_bases(lp):
    for cols in itertools.combinations(range(1, lp.n + 1), lp.m):
        B = Basis(cols)
        try:
            lp.tableau(B)
        except SingularBasis:
            continue
        yield B


def nondegenerate_shadow_cases(seed, count, max_m=5, max_n=10):
    """Yield (lp, H, path, intervals) with no ties anywhere on the homotopy.

    Instances are redrawn when the path hits a tie or some basis is
    feasible at a single lambda only.
    """
    rng = random.Random(seed)
    made = 0
    while made < count:
        m = rng.randint(1, max_m)
        lp = random_lp(rng, m, rng.randint(m + 1, max_n))
        H = make_homotopy(lp, greedy_basis(lp.A))
        try:
            path = shadow_path(lp, H)
        except DegenerateTie:
            continue
        intervals = {B: lambda_interval(lp, H, B) for B in all_bases(lp)}
        if any(not iv.empty and iv.lo == iv.hi for iv in intervals.values()):
            continue
        made += 1
        yield lp, H, path, intervals
