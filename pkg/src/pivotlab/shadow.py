"""Shadow vertex (parametric self-dual) rule and its path-membership test.

The homotopy moves right-hand side and costs from ``(b0, c0)`` at
``lambda = 0`` to ``(b, c)`` at ``lambda = 1``.  A basis lies on the path
exactly when some ``lambda`` in ``[0, 1]`` makes it both primal and dual
feasible; that set is an interval computed from ``m + n`` one-variable
linear inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from pivotlab.errors import DegenerateTie, PivotLabError, PreconditionError
from pivotlab.exact import Vector, dot
from pivotlab.lp import NON_TERMINAL, Basis, Classification, LinearProgram, classify_basis, greedy_basis
from pivotlab.rules import Rule

ZERO, ONE = Fraction(0), Fraction(1)


class HomotopyEnd(PivotLabError):
    """No exchange exists at the breakpoint: the basis certifies infeasibility or unboundedness."""

    code = "HOMOTOPY_END"

    def __init__(self, message: str, classification: Classification) -> None:
        super().__init__(message)
        self.classification = classification


@dataclass(frozen=True)
class ShadowHomotopy:
    B0: Basis
    b0: Vector
    c0: Vector


@dataclass(frozen=True)
class LambdaInterval:
    lo: Fraction
    hi: Fraction
    empty: bool = False

    @classmethod
    def nothing(cls) -> LambdaInterval:
        return cls(ONE, ZERO, True)

    def __contains__(self, lam) -> bool:
        return not self.empty and self.lo <= lam <= self.hi

    def __str__(self) -> str:
        return "empty" if self.empty else f"[{self.lo}, {self.hi}]"


def _plain_costs(lp: LinearProgram) -> tuple[Fraction, ...]:
    if not lp.is_plain:
        raise PreconditionError("shadow vertex needs plain (M-free) costs")
    return tuple(cj.finite for cj in lp.c)


def make_homotopy(lp: LinearProgram, B0: Basis) -> ShadowHomotopy:
    """``b0 = B0 * 1`` and ``c0 = -1`` off the basis, ``0`` on it."""
    lp.tableau(B0)  # raises SingularBasis
    idx = [j - 1 for j in B0.cols]
    b0 = tuple(sum((lp.A.rows[i][j] for j in idx), ZERO) for i in range(lp.m))
    basic = set(B0.cols)
    c0 = tuple(ZERO if j + 1 in basic else -ONE for j in range(lp.n))
    return ShadowHomotopy(B0, b0, c0)


class _Lines:
    """The homotopy constraints at one basis, each of the form ``a + s*lambda >= 0``."""

    def __init__(self, lp: LinearProgram, H: ShadowHomotopy, B: Basis) -> None:
        c = _plain_costs(lp)
        tab = lp.tableau(B)
        self.tab = tab
        p1 = tab.xb
        p0 = tab.binv.matvec(H.b0)
        self.primal = [(a, b - a) for a, b in zip(p0, p1)]
        c0B = [H.c0[j - 1] for j in B.cols]
        y0 = [dot(c0B, col) for col in tab.binv.transpose().rows]
        basic = set(B.cols)
        self.dual = {}
        for j in range(1, lp.n + 1):
            if j in basic:
                continue
            r1 = tab.reduced[j - 1].finite
            r0 = H.c0[j - 1] - dot(y0, lp.A.column(j - 1))
            # reduced cost <= 0  <=>  -(r0 + (r1 - r0) lambda) >= 0
            self.dual[j] = (-r0, -(r1 - r0))
        self.c = c

    def interval(self) -> LambdaInterval:
        lo, hi = ZERO, ONE
        for a, s in list(self.primal) + list(self.dual.values()):
            if s == 0:
                if a < 0:
                    return LambdaInterval.nothing()
            elif s > 0:
                lo = max(lo, -a / s)
            else:
                hi = min(hi, a / -s)
        if lo > hi:
            return LambdaInterval.nothing()
        return LambdaInterval(lo, hi)


def lambda_interval(lp: LinearProgram, H: ShadowHomotopy, B: Basis) -> LambdaInterval:
    return _Lines(lp, H, B).interval()


def shadow_member(lp: LinearProgram, H: ShadowHomotopy, B: Basis) -> bool:
    return not lambda_interval(lp, H, B).empty


def shadow_next(lp: LinearProgram, H: ShadowHomotopy, B: Basis) -> tuple[Basis, Fraction]:
    """Exchange at the upper breakpoint of ``B``'s interval.

    Whichever constraint is tight at ``hi`` and has a slope pointing out of
    the feasible side decides the pivot: a primal row leaves (dual ratio
    test picks the entering column) or a reduced cost enters (primal ratio
    test at the breakpoint picks the leaving row).
    """
    lines = _Lines(lp, H, B)
    iv = lines.interval()
    if iv.empty:
        raise PreconditionError(f"{B} is not on the shadow path")
    if iv.hi == ONE:
        raise PreconditionError(f"{B} is already optimal at lambda = 1")
    lam = iv.hi
    rows = [i for i, (a, s) in enumerate(lines.primal) if s < 0 and a + s * lam == 0]
    cols = [j for j, (a, s) in lines.dual.items() if s < 0 and a + s * lam == 0]
    if len(rows) + len(cols) != 1:
        raise DegenerateTie(f"{len(rows) + len(cols)} constraints bind at lambda = {lam} for {B}")
    tab = lines.tab

    if rows:
        i = rows[0]
        # dual ratio test on row i: entering j has alpha_ij < 0, minimise r_j / alpha_ij
        best, best_j = None, []
        for j, (a, s) in lines.dual.items():
            alpha_ij = tab.alpha(j)[i]
            if alpha_ij < 0:
                r = -(a + s * lam)  # reduced cost at lambda*, <= 0
                ratio = r / alpha_ij
                if best is None or ratio < best:
                    best, best_j = ratio, [j]
                elif ratio == best:
                    best_j.append(j)
        if best is None:
            raise HomotopyEnd(f"row {i + 1} has no negative entry", Classification("Infeasible", i + 1))
        if best == 0 or len(best_j) > 1:
            raise DegenerateTie(f"dual ratio test tie at lambda = {lam} for {B}")
        return B.swap(B.cols[i], best_j[0]), lam

    j = cols[0]
    alpha = tab.alpha(j)
    best, best_i = None, []
    for i, (a, s) in enumerate(lines.primal):
        if alpha[i] > 0:
            ratio = (a + s * lam) / alpha[i]
            if best is None or ratio < best:
                best, best_i = ratio, [i]
            elif ratio == best:
                best_i.append(i)
    if best is None:
        raise HomotopyEnd(f"column {j} has no positive entry", Classification("Unbounded", j))
    if best == 0 or len(best_i) > 1:
        raise DegenerateTie(f"primal ratio test tie at lambda = {lam} for {B}")
    return B.swap(B.cols[best_i[0]], j), lam


@dataclass
class ShadowPath:
    bases: list[Basis]
    intervals: list[LambdaInterval]
    end: Optional[Classification]  # Optimal, or the certificate from HomotopyEnd
    complete: bool = True


def shadow_path(lp: LinearProgram, H: ShadowHomotopy, cap: int = 100_000) -> ShadowPath:
    """Iterate :func:`shadow_next` from ``B0`` until ``lambda = 1`` or the homotopy ends."""
    B = H.B0
    path = ShadowPath([], [], None)
    while True:
        iv = lambda_interval(lp, H, B)
        path.bases.append(B)
        path.intervals.append(iv)
        if iv.hi == ONE:
            path.end = Classification("Optimal")
            return path
        if len(path.bases) >= cap:
            path.complete = False
            return path
        try:
            B, _ = shadow_next(lp, H, B)
        except HomotopyEnd as end:
            path.end = end.classification
            return path


class ShadowVertex(Rule):
    """Potential is the lower end of the current basis's lambda interval."""

    name = "shadow-vertex"

    def __init__(self, B0: Optional[Basis] = None) -> None:
        self.B0 = B0

    def initial_basis(self, lp: LinearProgram) -> Basis:
        if self.B0 is not None:
            return self.B0
        return lp.start if lp.start is not None else greedy_basis(lp.A)

    def homotopy(self, lp: LinearProgram) -> ShadowHomotopy:
        B0 = self.initial_basis(lp)
        key = ("shadow", B0.cols)
        H = lp._cache.get(key)
        if H is None:
            H = make_homotopy(lp, B0)
            lp._cache[key] = H
        return H

    def potential(self, lp: LinearProgram, B: Basis) -> Fraction:
        iv = lambda_interval(lp, self.homotopy(lp), B)
        if iv.empty:
            raise PreconditionError(f"{B} is off the shadow path")
        return iv.lo

    def classify(self, lp: LinearProgram, B: Basis) -> Classification:
        # Terminal only where the homotopy stops, not wherever B happens to certify something.
        iv = lambda_interval(lp, self.homotopy(lp), B)
        if iv.empty or iv.hi == ONE:
            return classify_basis(lp, B)
        try:
            shadow_next(lp, self.homotopy(lp), B)
        except HomotopyEnd as end:
            return end.classification
        return NON_TERMINAL

    def next_basis(self, lp: LinearProgram, B: Basis, rng=None) -> Basis:
        B2, _ = shadow_next(lp, self.homotopy(lp), B)
        return B2

    def __repr__(self) -> str:
        return f"ShadowVertex({self.B0})"
