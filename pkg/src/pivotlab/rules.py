"""Pivoting rules: an initial basis, a next-basis map, and a potential.

The primal rules (Dantzig, Bland, steepest edge, greatest improvement,
random index) walk feasible bases of a big-M program and use the objective
as potential.  Other rules (shadow vertex, rule R) plug into the same
:func:`trace` loop by subclassing :class:`Rule`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Optional

from pivotlab.errors import MonotonicityViolation, NeedsBigM, PivotLabError, PreconditionError, UnboundedDirection
from pivotlab.exact import BigM, compare_scaled, dot
from pivotlab.lp import (
    Basis,
    Classification,
    LinearProgram,
    classify_basis,
    leaving_column,
    pivot,
    ratio_test,
)


class Rule:
    """Base class.  Subclasses override :meth:`choose` or :meth:`next_basis`."""

    name = "rule"
    randomized = False

    def initial_basis(self, lp: LinearProgram) -> Basis:
        if lp.start is None:
            raise NeedsBigM(f"{self.name} needs a program with a known feasible start (use big_m_transform)")
        return lp.start

    def potential(self, lp: LinearProgram, B: Basis):
        return lp.tableau(B).objective()

    def classify(self, lp: LinearProgram, B: Basis) -> Classification:
        return classify_basis(lp, B)

    def new_stream(self) -> Optional[random.Random]:
        return None

    def choose(self, lp: LinearProgram, B: Basis, candidates: list[int], rng) -> int:
        raise NotImplementedError

    def entering(self, lp: LinearProgram, B: Basis, rng=None) -> int:
        tab = lp.tableau(B)
        if not tab.feasible:
            raise PreconditionError(f"primal rule {self.name} called at infeasible basis {B}")
        J = tab.improving()
        if not J:
            raise PreconditionError(f"J(B) is empty at {B}: basis is terminal")
        return self.choose(lp, B, J, rng)

    def next_basis(self, lp: LinearProgram, B: Basis, rng=None) -> Basis:
        enter = self.entering(lp, B, rng)
        B2 = pivot(lp, B, enter)
        if not self.potential(lp, B2) > self.potential(lp, B):
            raise MonotonicityViolation(f"{self.name}: potential did not increase from {B} to {B2}")
        return B2

    def step_info(self, lp: LinearProgram, B: Basis, B2: Basis) -> tuple[Optional[int], Optional[int]]:
        (enter,) = set(B2.cols) - set(B.cols)
        (leave,) = set(B.cols) - set(B2.cols)
        return enter, leave

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class Dantzig(Rule):
    name = "dantzig"

    def choose(self, lp, B, candidates, rng):
        red = lp.tableau(B).reduced
        best = candidates[0]
        for j in candidates[1:]:
            if red[j - 1] > red[best - 1]:
                best = j
        return best


class Bland(Rule):
    name = "bland"

    def choose(self, lp, B, candidates, rng):
        return min(candidates)


class SteepestEdge(Rule):
    """Largest ``c^B_j / ||B^-1 A_j||``, compared exactly via squared norms."""

    name = "steepest-edge"

    def choose(self, lp, B, candidates, rng):
        tab = lp.tableau(B)
        norms = {j: dot(tab.alpha(j), tab.alpha(j)) for j in candidates}
        best = candidates[0]
        for j in candidates[1:]:
            if compare_scaled(tab.reduced[j - 1], norms[best], tab.reduced[best - 1], norms[j]) > 0:
                best = j
        return best


class GreatestImprovement(Rule):
    """Largest ``c^B_j * theta_j``; an unbounded column wins outright."""

    name = "greatest-improvement"

    def choose(self, lp, B, candidates, rng):
        red = lp.tableau(B).reduced
        best, best_gain = None, None
        for j in candidates:
            try:
                _, theta = ratio_test(lp, B, j)
            except UnboundedDirection:
                return j
            gain = red[j - 1] * theta
            if best_gain is None or gain > best_gain:
                best, best_gain = j, gain
        return best


@dataclass(repr=True)
class RandomIndex(Rule):
    """Uniform choice over J(B) from a seeded stream."""

    seed: int = 0
    name = "random-index"
    randomized = True

    def __post_init__(self) -> None:
        self.seed = int(self.seed) & ((1 << 64) - 1)

    def new_stream(self) -> random.Random:
        return random.Random(self.seed)

    def choose(self, lp, B, candidates, rng):
        if rng is None:
            raise PreconditionError("random-index needs an RNG stream")
        return candidates[rng.randrange(len(candidates))]


RULES = {
    "dantzig": Dantzig,
    "bland": Bland,
    "steepest-edge": SteepestEdge,
    "greatest-improvement": GreatestImprovement,
    "random-index": RandomIndex,
}


def get_rule(name: str, seed: int = 0) -> Rule:
    """Look up a primal rule by CLI name (shadow vertex lives in its own module)."""
    key = name.lower().replace("_", "-")
    if key == "random-index":
        return RandomIndex(seed)
    if key == "shadow-vertex":
        from pivotlab.shadow import ShadowVertex

        return ShadowVertex()
    try:
        return RULES[key]()
    except KeyError:
        raise ValueError(f"unknown rule {name!r}") from None


def initial_basis(rule: Rule, lp: LinearProgram) -> Basis:
    return rule.initial_basis(lp)


def entering_column(rule: Rule, lp: LinearProgram, B: Basis, rng=None) -> int:
    return rule.entering(lp, B, rng)


def next_basis(rule: Rule, lp: LinearProgram, B: Basis, rng=None) -> Basis:
    if rule.classify(lp, B).terminal:
        raise PreconditionError(f"{B} is terminal")
    return rule.next_basis(lp, B, rng)


@dataclass(frozen=True)
class Verdict:
    kind: str  # "Terminal", "StepCapExceeded" or "RuleError"
    classification: Optional[Classification] = None
    code: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == "Terminal":
            return f"Terminal({self.classification})"
        if self.kind == "RuleError":
            return f"RuleError({self.code})"
        return self.kind


@dataclass
class PathTrace:
    bases: list[Basis] = field(default_factory=list)
    potentials: list[Any] = field(default_factory=list)
    entering: list[Optional[int]] = field(default_factory=list)
    leaving: list[Optional[int]] = field(default_factory=list)
    verdict: Optional[Verdict] = None
    error: Optional[PivotLabError] = None

    def __len__(self) -> int:
        return len(self.bases)

    @property
    def last(self) -> Basis:
        return self.bases[-1]

    def check(self) -> None:
        """Assert the pivoting-rule contract on every recorded step."""
        for k in range(1, len(self.bases)):
            if not self.bases[k - 1].adjacent(self.bases[k]):
                raise AssertionError(f"step {k}: {self.bases[k - 1]} -> {self.bases[k]} is not adjacent")
            if not self.potentials[k] > self.potentials[k - 1]:
                raise AssertionError(f"step {k}: potential did not strictly increase")


# Callables invoked with every finished trace (test harnesses use this to audit paths).
TRACE_OBSERVERS: list = []


def _finish(tr: PathTrace) -> PathTrace:
    for observe in TRACE_OBSERVERS:
        observe(tr)
    return tr


def trace(rule: Rule, lp: LinearProgram, cap: int, start: Optional[Basis] = None, rng=None) -> PathTrace:
    """Follow the rule until a terminal basis, an error, or ``cap`` bases.

    ``cap`` bounds the number of bases recorded, so ``cap=1`` only inspects
    the start.  Rule errors end the trace with a ``RuleError`` verdict.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if rng is None:
        rng = rule.new_stream()
    B = start if start is not None else rule.initial_basis(lp)
    tr = PathTrace()
    tr.bases.append(B)
    tr.potentials.append(rule.potential(lp, B))
    tr.entering.append(None)
    tr.leaving.append(None)
    while True:
        try:
            cls = rule.classify(lp, B)
        except PivotLabError as exc:
            tr.verdict, tr.error = Verdict("RuleError", code=exc.code), exc
            return _finish(tr)
        if cls.terminal:
            tr.verdict = Verdict("Terminal", classification=cls)
            return _finish(tr)
        if len(tr.bases) >= cap:
            tr.verdict = Verdict("StepCapExceeded")
            return _finish(tr)
        try:
            B2 = rule.next_basis(lp, B, rng)
            pot = rule.potential(lp, B2)
        except PivotLabError as exc:
            tr.verdict, tr.error = Verdict("RuleError", code=exc.code), exc
            return _finish(tr)
        if not B.adjacent(B2):
            raise AssertionError(f"{rule.name} produced non-adjacent bases {B} -> {B2}")
        if not pot > tr.potentials[-1]:
            exc = MonotonicityViolation(f"{rule.name}: potential did not increase from {B} to {B2}")
            tr.verdict, tr.error = Verdict("RuleError", code=exc.code), exc
            return _finish(tr)
        enter, leave = rule.step_info(lp, B, B2)
        tr.bases.append(B2)
        tr.potentials.append(pot)
        tr.entering.append(enter)
        tr.leaving.append(leave)
        B = B2


def original_verdict(bm: LinearProgram, classification: Classification, value, cap: int = 100_000) -> str:
    """Read a terminal verdict on a big-M program back onto the original program.

    ``Optimal`` with a zero M part is optimal for the original and a negative
    M part means it is infeasible.  An unbounded big-M verdict is ambiguous
    when artificials are still positive; a phase-one run on the M part alone
    settles it.  Returns ``"Unknown"`` only if that run does not terminate.
    """
    kind = classification.kind
    if kind == "Optimal":
        return "Optimal" if value.coeff == 0 else "Infeasible"
    if kind != "Unbounded" or value.coeff == 0:
        return kind
    phase_one = LinearProgram(bm.A, bm.b, tuple(BigM(c.coeff) for c in bm.c), start=bm.start)
    tr = trace(Dantzig(), phase_one, cap)
    if tr.verdict.kind != "Terminal":
        return "Unknown"
    return "Unbounded" if tr.potentials[-1] == BigM(0) else "Infeasible"


def path_member(rule: Rule, lp: LinearProgram, query: Basis, cap: int, start: Optional[Basis] = None) -> str:
    """``"Yes"``, ``"No"`` or ``"Aborted"`` by simulating the path."""
    tr = trace(rule, lp, cap, start=start)
    if query in tr.bases:
        return "Yes"
    if tr.verdict.kind == "Terminal":
        return "No"
    if tr.verdict.kind == "RuleError":
        raise tr.error
    return "Aborted"


__all__ = [
    "Bland",
    "Dantzig",
    "GreatestImprovement",
    "PathTrace",
    "RandomIndex",
    "Rule",
    "SteepestEdge",
    "Verdict",
    "entering_column",
    "get_rule",
    "initial_basis",
    "leaving_column",
    "next_basis",
    "original_verdict",
    "path_member",
    "trace",
]
