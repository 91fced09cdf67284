"""Visit probabilities of the random-index rule, exactly and by sampling."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from pivotlab.errors import PreconditionError, StateExplosion
from pivotlab.lp import Basis, LinearProgram, classify_basis, pivot
from pivotlab.rules import RandomIndex, Rule

STATE_CAP = 1 << 14


def transitions(lp: LinearProgram, B: Basis) -> tuple[Basis, ...]:
    """Children of ``B`` under random index, one per column of J(B); empty when terminal."""
    key = ("random-index", B.cols)
    kids = lp._cache.get(key)
    if kids is None:
        if classify_basis(lp, B).terminal:
            kids = ()
        else:
            tab = lp.tableau(B)
            if not tab.feasible:
                raise PreconditionError(f"random index reached infeasible basis {B}")
            kids = tuple(pivot(lp, B, j) for j in tab.improving())
        lp._cache[key] = kids
    return kids


def visit_probabilities(lp: LinearProgram, rule: Optional[Rule] = None, cap: int = STATE_CAP) -> dict[Basis, Fraction]:
    """Exact probability that each reachable basis appears on the path.

    The basis graph is acyclic because the objective strictly increases
    along every edge, so mass can be pushed forward in objective order.
    """
    rule = rule or RandomIndex()
    B0 = rule.initial_basis(lp)
    reach = {B0}
    stack = [B0]
    while stack:
        B = stack.pop()
        for K in transitions(lp, B):
            if K not in reach:
                if len(reach) >= cap:
                    raise StateExplosion(f"more than {cap} reachable bases")
                reach.add(K)
                stack.append(K)
    order = sorted(reach, key=lambda B: lp.tableau(B).objective())
    prob = {B: Fraction(0) for B in order}
    prob[B0] = Fraction(1)
    for B in order:
        kids = transitions(lp, B)
        if kids:
            share = prob[B] / len(kids)
            for K in kids:
                prob[K] += share
    return prob


def exact_visit_probability(lp: LinearProgram, query: Basis, rule: Optional[Rule] = None,
                            cap: int = STATE_CAP) -> Fraction:
    return visit_probabilities(lp, rule, cap).get(query, Fraction(0))


def hoeffding_radius(trials: int, delta: float) -> float:
    """Two-sided Hoeffding half-width ``sqrt(ln(2/delta) / (2N))``."""
    return math.sqrt(math.log(2 / delta) / (2 * trials))


@dataclass(frozen=True)
class VisitEstimate:
    p_hat: Fraction
    trials: int
    delta: float = 0.01
    exact_p: Optional[Fraction] = None

    def hoeffding_eps(self, delta: Optional[float] = None) -> float:
        return hoeffding_radius(self.trials, self.delta if delta is None else delta)

    @property
    def radius(self) -> float:
        return self.hoeffding_eps()


def trial_stream(seed: int, trial: int) -> random.Random:
    """Independent stream per (seed, trial); order of trials does not matter."""
    return random.Random(f"{seed}:{trial}")


def sample_visit(lp: LinearProgram, query: Basis, rng: random.Random, start: Basis, max_steps: int) -> bool:
    B = start
    for _ in range(max_steps):
        if B == query:
            return True
        kids = transitions(lp, B)
        if not kids:
            return False
        B = kids[rng.randrange(len(kids))] if len(kids) > 1 else kids[0]
    return B == query


def estimate_visit(lp: LinearProgram, query: Basis, trials: int, seed: int = 0, delta: float = 0.01,
                   exact: bool = False, max_steps: int = 1 << 20) -> VisitEstimate:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    start = RandomIndex(seed).initial_basis(lp)
    hits = 0
    for t in range(trials):
        if sample_visit(lp, query, trial_stream(seed, t), start, max_steps):
            hits += 1
    exact_p = exact_visit_probability(lp, query) if exact else None
    return VisitEstimate(Fraction(hits, trials), trials, delta, exact_p)


def decide_fp(estimate: VisitEstimate, f_value, p_value) -> str:
    """``Below``, ``Above`` or ``Undecided`` for the (f, p) promise gap.

    The gap ``(f, f + 1/p)`` is split at its midpoint; a side is reported
    only when the whole confidence interval lies on it.
    """
    f = Fraction(f_value)
    p = Fraction(p_value)
    if p <= 0 or not 0 <= f <= 1 - 1 / p:
        raise ValueError("need p > 0 and f in [0, 1 - 1/p]")
    mid = f + 1 / (2 * p)
    r = estimate.radius
    if estimate.p_hat + r <= mid:
        return "Below"
    if estimate.p_hat - r >= mid:
        return "Above"
    return "Undecided"
