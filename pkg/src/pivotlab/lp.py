"""Equality-form linear programs ``max c^T x, Ax = b, x >= 0`` and basis algebra.

Column and row indices in the public API are 1-based, matching the usual
LP notation and the JSON formats.  Costs are always :class:`BigM` so the
same code runs on big-M instances.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from pivotlab.errors import (
    DegenerateTie,
    NoStartBasis,
    PreconditionError,
    RankDeficient,
    SingularBasis,
    SingularMatrix,
    UnboundedDirection,
)
from pivotlab.exact import BigM, Matrix, Vector, dot, inverse, pivot_columns, rat, solve_square

_CACHE_LIMIT = 8192


@dataclass(frozen=True, order=True)
class Basis:
    """Sorted tuple of 1-based column indices."""

    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        cols = tuple(int(c) for c in self.cols)
        if any(c < 1 for c in cols):
            raise ValueError("basis columns are 1-based")
        if list(cols) != sorted(set(cols)):
            cols = tuple(sorted(set(cols)))
            if len(cols) != len(self.cols):
                raise ValueError("repeated column in basis")
        object.__setattr__(self, "cols", cols)

    @classmethod
    def of(cls, *cols: int) -> Basis:
        return cls(tuple(cols))

    def __len__(self) -> int:
        return len(self.cols)

    def __iter__(self):
        return iter(self.cols)

    def __contains__(self, j: int) -> bool:
        return j in self.cols

    def swap(self, leave: int, enter: int) -> Basis:
        if leave not in self.cols or enter in self.cols:
            raise ValueError(f"cannot swap {leave} out for {enter} in {self.cols}")
        return Basis(tuple(c for c in self.cols if c != leave) + (enter,))

    def adjacent(self, other: Basis) -> bool:
        return len(self) == len(other) and len(set(self.cols) - set(other.cols)) == 1

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.cols)) + "}"


@dataclass(frozen=True, eq=False)
class LinearProgram:
    A: Matrix
    b: Vector
    c: tuple[BigM, ...]
    names: Optional[tuple[str, ...]] = None
    start: Optional[Basis] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        A = self.A if isinstance(self.A, Matrix) else Matrix(self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", tuple(rat(v) for v in self.b))
        object.__setattr__(self, "c", tuple(BigM.lift(v) if isinstance(v, BigM) else BigM(v) for v in self.c))
        m, n = A.shape
        if m < 1 or n < m:
            raise ValueError(f"need m >= 1 and n >= m, got m={m}, n={n}")
        if len(self.b) != m or len(self.c) != n:
            raise ValueError("b or c has the wrong length")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != n:
                raise ValueError("one name per column")
            object.__setattr__(self, "names", names)
        if len(pivot_columns(A)) != m:
            raise RankDeficient(f"rank(A) < m = {m}")
        if self.start is not None and len(self.start) != m:
            raise ValueError("start basis has the wrong size")

    @property
    def m(self) -> int:
        return self.A.nrows

    @property
    def n(self) -> int:
        return self.A.ncols

    @property
    def is_plain(self) -> bool:
        return all(cj.is_plain for cj in self.c)

    def tableau(self, B: Basis) -> Tableau:
        tab = self._cache.get(B.cols)
        if tab is None:
            if len(self._cache) >= _CACHE_LIMIT:
                self._cache.clear()
            tab = Tableau(self, B)
            self._cache[B.cols] = tab
        return tab

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearProgram):
            return NotImplemented
        return (self.A, self.b, self.c, self.names, self.start) == (
            other.A, other.b, other.c, other.names, other.start)

    def __hash__(self) -> int:
        return hash((self.A, self.b, self.c))


class Tableau:
    """Everything derived from one basis: B^-1, B^-1 b, reduced costs, B^-1 A_j."""

    def __init__(self, lp: LinearProgram, B: Basis) -> None:
        if len(B) != lp.m or B.cols[-1] > lp.n:
            raise SingularBasis(f"{B} is not a basis of an m={lp.m}, n={lp.n} program")
        self.lp = lp
        self.basis = B
        idx = [j - 1 for j in B.cols]
        try:
            self.binv = inverse(lp.A.columns(idx))
        except SingularMatrix:
            raise SingularBasis(f"basis {B} is singular") from None
        self.xb: Vector = self.binv.matvec(lp.b)
        cb = [lp.c[j] for j in idx]
        yf = [dot([c.finite for c in cb], col) for col in self.binv.transpose().rows]
        ym = [dot([c.coeff for c in cb], col) for col in self.binv.transpose().rows]
        basic = set(B.cols)
        red = []
        for j in range(lp.n):
            if j + 1 in basic:
                red.append(BigM(0, 0))
                continue
            col = lp.A.column(j)
            cj = lp.c[j]
            red.append(BigM(cj.finite - dot(yf, col), cj.coeff - dot(ym, col)))
        self.reduced: tuple[BigM, ...] = tuple(red)
        self._alpha: dict[int, Vector] = {}

    def alpha(self, j: int) -> Vector:
        """``B^-1 A_j`` for 1-based column ``j``."""
        col = self._alpha.get(j)
        if col is None:
            col = self.binv.matvec(self.lp.A.column(j - 1))
            self._alpha[j] = col
        return col

    @property
    def feasible(self) -> bool:
        return all(v >= 0 for v in self.xb)

    def objective(self) -> BigM:
        total = BigM(0, 0)
        for j, v in zip(self.basis.cols, self.xb):
            total = total + self.lp.c[j - 1] * v
        return total

    def improving(self) -> list[int]:
        """J(B): nonbasic columns with strictly positive reduced cost."""
        return [j + 1 for j, r in enumerate(self.reduced) if r > 0]

    def full_solution(self) -> Vector:
        x = [Fraction(0)] * self.lp.n
        for j, v in zip(self.basis.cols, self.xb):
            x[j - 1] = v
        return tuple(x)


@dataclass(frozen=True)
class Classification:
    """One of NonTerminal, Optimal, Unbounded (column witness), Infeasible (row witness)."""

    kind: str
    witness: Optional[int] = None

    @property
    def terminal(self) -> bool:
        return self.kind != "NonTerminal"

    def __str__(self) -> str:
        if self.witness is None:
            return self.kind
        label = "j" if self.kind == "Unbounded" else "i"
        return f"{self.kind}({label}={self.witness})"


NON_TERMINAL = Classification("NonTerminal")
OPTIMAL = Classification("Optimal")


def basic_solution(lp: LinearProgram, B: Basis) -> Vector:
    return lp.tableau(B).xb


def reduced_costs(lp: LinearProgram, B: Basis) -> tuple[BigM, ...]:
    return lp.tableau(B).reduced


def objective_value(lp: LinearProgram, B: Basis) -> BigM:
    return lp.tableau(B).objective()


def is_feasible(lp: LinearProgram, B: Basis) -> bool:
    return lp.tableau(B).feasible


def classify_basis(lp: LinearProgram, B: Basis) -> Classification:
    """First terminal condition that holds: optimal, unbounded, infeasible."""
    tab = lp.tableau(B)
    if tab.feasible and all(r <= 0 for r in tab.reduced):
        return OPTIMAL
    for j in tab.improving():
        if all(a <= 0 for a in tab.alpha(j)):
            return Classification("Unbounded", j)
    for i, v in enumerate(tab.xb):
        if v < 0:
            row = tab.binv.rows[i]
            if all(dot(row, lp.A.column(j)) >= 0 for j in range(lp.n)):
                return Classification("Infeasible", i + 1)
    return NON_TERMINAL


def ratio_test(lp: LinearProgram, B: Basis, enter: int) -> tuple[int, Fraction]:
    """Primal ratio test; returns (leaving row, 1-based, and the step length).

    Raises :class:`UnboundedDirection` when no entry of ``B^-1 A_enter`` is
    positive, and :class:`DegenerateTie` on a zero step or a tied minimum.
    """
    tab = lp.tableau(B)
    alpha = tab.alpha(enter)
    best: Optional[Fraction] = None
    best_rows: list[int] = []
    for i, (x, a) in enumerate(zip(tab.xb, alpha)):
        if a > 0:
            r = x / a
            if best is None or r < best:
                best, best_rows = r, [i]
            elif r == best:
                best_rows.append(i)
    if best is None:
        raise UnboundedDirection(f"column {enter} has no positive entry in B^-1 A_j", column=enter)
    if best == 0:
        raise DegenerateTie(f"zero step entering column {enter} at {B}", column=enter)
    if len(best_rows) > 1:
        raise DegenerateTie(f"ratio test tie entering column {enter} at {B}", column=enter)
    return best_rows[0] + 1, best


def pivot(lp: LinearProgram, B: Basis, enter: int) -> Basis:
    if enter in B:
        raise PreconditionError(f"column {enter} is already basic in {B}")
    tab = lp.tableau(B)
    if not tab.feasible:
        raise PreconditionError(f"basis {B} is not primal feasible")
    if not tab.reduced[enter - 1] > 0:
        raise PreconditionError(f"column {enter} has non-positive reduced cost")
    row, _ = ratio_test(lp, B, enter)
    return B.swap(B.cols[row - 1], enter)


def leaving_column(lp: LinearProgram, B: Basis, enter: int) -> int:
    row, _ = ratio_test(lp, B, enter)
    return B.cols[row - 1]


def greedy_basis(A: Matrix) -> Basis:
    """Reduced row echelon pivot columns: the first m independent columns."""
    piv = pivot_columns(A)
    if len(piv) != A.nrows:
        raise RankDeficient("matrix does not have full row rank")
    return Basis(tuple(j + 1 for j in piv))


def big_m_transform(lp: LinearProgram) -> LinearProgram:
    """Build ``(A | -A), b, (c | -M, ..., -M)`` with a primal feasible start.

    Start basis: the echelon pivot columns of ``A``; every row whose basic
    value comes out negative swaps its column for the negated copy, which
    flips the sign of that component.
    """
    n = lp.n
    A2 = lp.A.hstack(-lp.A)
    c2 = lp.c + tuple(BigM(0, -1) for _ in range(n))
    names = None
    if lp.names is not None:
        names = lp.names + tuple(f"-{s}" for s in lp.names)
    base = greedy_basis(lp.A)
    x = solve_square(lp.A.columns([j - 1 for j in base.cols]), lp.b)
    cols = [j if v >= 0 else j + n for j, v in zip(base.cols, x)]
    start = Basis(tuple(cols))
    out = LinearProgram(A2, lp.b, c2, names=names, start=start)
    if not out.tableau(start).feasible:
        raise NoStartBasis("sign-flipped echelon basis is not feasible")
    return out


def make_lp(A: Sequence[Sequence], b: Iterable, c: Iterable, names=None, start=None) -> LinearProgram:
    """Convenience constructor from nested lists of ints/Fractions/strings."""
    return LinearProgram(Matrix(A), tuple(b), tuple(c), names=names, start=start)
