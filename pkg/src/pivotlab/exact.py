"""Exact scalars and dense rational linear algebra.

Everything here works over :class:`fractions.Fraction`; there is no floating
point path.  ``BigM`` models a cost ``finite + coeff * M`` with ``M`` a
symbolically large positive number.
"""

from __future__ import annotations

import operator
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _RationalABC

from pivotlab.errors import DivisionByZero, SingularMatrix

Rational = Fraction
Vector = tuple[Fraction, ...]

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: silently importing a binary approximation would
    defeat the point of exact arithmetic.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError as exc:
            raise DivisionByZero(f"zero denominator in {value!r}") from exc
    raise TypeError(f"cannot make an exact rational from {type(value).__name__}")


def fmt(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(q))


def rational_arith(a, b, op: str) -> Fraction:
    a, b = rat(a), rat(b)
    if op == "/" and b == 0:
        raise DivisionByZero(f"{fmt(a)} / 0")
    try:
        return _OPS[op](a, b)
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None


@total_ordering
class BigM:
    """Scalar ``finite + coeff*M`` ordered lexicographically on (coeff, finite)."""

    __slots__ = ("finite", "coeff")

    def __init__(self, finite=0, coeff=0) -> None:
        self.finite = rat(finite)
        self.coeff = rat(coeff)

    @classmethod
    def lift(cls, x) -> BigM:
        return x if isinstance(x, BigM) else cls(x, 0)

    @property
    def is_plain(self) -> bool:
        return self.coeff == 0

    def sign(self) -> int:
        if self.coeff:
            return 1 if self.coeff > 0 else -1
        if self.finite:
            return 1 if self.finite > 0 else -1
        return 0

    def __add__(self, other):
        try:
            o = BigM.lift(other)
        except TypeError:
            return NotImplemented
        return BigM(self.finite + o.finite, self.coeff + o.coeff)

    __radd__ = __add__

    def __neg__(self) -> BigM:
        return BigM(-self.finite, -self.coeff)

    def __sub__(self, other):
        try:
            o = BigM.lift(other)
        except TypeError:
            return NotImplemented
        return BigM(self.finite - o.finite, self.coeff - o.coeff)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, BigM):
            if self.coeff and other.coeff:
                raise ArithmeticError("BigM * BigM would produce an M^2 term")
            if other.coeff:
                self, other = other, self
            other = other.finite
        try:
            k = rat(other)
        except TypeError:
            return NotImplemented
        return BigM(self.finite * k, self.coeff * k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BigM):
            if other.coeff:
                raise ArithmeticError("division by a scalar with an M part")
            other = other.finite
        k = rat(other)
        if k == 0:
            raise DivisionByZero("BigM / 0")
        return BigM(self.finite / k, self.coeff / k)

    def _key(self) -> tuple[Fraction, Fraction]:
        return (self.coeff, self.finite)

    def __eq__(self, other) -> bool:
        try:
            o = BigM.lift(other)
        except TypeError:
            return NotImplemented
        return self._key() == o._key()

    def __lt__(self, other) -> bool:
        try:
            o = BigM.lift(other)
        except TypeError:
            return NotImplemented
        return self._key() < o._key()

    def __hash__(self) -> int:
        return hash(self.finite) if self.coeff == 0 else hash(self._key())

    def evaluate(self, m_value) -> Fraction:
        return self.finite + self.coeff * rat(m_value)

    def __repr__(self) -> str:
        if not self.coeff:
            return f"BigM({fmt(self.finite)})"
        return f"BigM({fmt(self.finite)} + {fmt(self.coeff)}*M)"

    def __str__(self) -> str:
        if not self.coeff:
            return fmt(self.finite)
        return f"{fmt(self.finite)} + {fmt(self.coeff)}M"


def bigm_compare(x: BigM, y: BigM) -> str:
    """Return ``"LT"``, ``"EQ"`` or ``"GT"``."""
    x, y = BigM.lift(x), BigM.lift(y)
    if x == y:
        return "EQ"
    return "LT" if x < y else "GT"


def compare_scaled(a: BigM, q: Fraction, b: BigM, p: Fraction) -> int:
    """Sign of ``a*sqrt(q) - b*sqrt(p)`` for ``q, p > 0``, computed exactly.

    Used by steepest edge, where the ratio ``a / sqrt(p)`` involves an
    irrational norm; cross-multiplying keeps everything rational.
    """
    a, b = BigM.lift(a), BigM.lift(b)
    for x, y in ((a.coeff, b.coeff), (a.finite, b.finite)):
        s = _sign_sqrt_diff(x, q, y, p)
        if s:
            return s
    return 0


def _sign_sqrt_diff(x: Fraction, q: Fraction, y: Fraction, p: Fraction) -> int:
    # sign of x*sqrt(q) - y*sqrt(p)
    sx = (x > 0) - (x < 0)
    sy = (y > 0) - (y < 0)
    if sx != sy:
        return 1 if sx > sy else -1
    if sx == 0:
        return 0
    lhs, rhs = x * x * q, y * y * p
    if lhs == rhs:
        return 0
    bigger = 1 if lhs > rhs else -1
    return bigger if sx > 0 else -bigger


class Matrix:
    """Dense, immutable, row-major rational matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None) -> None:
        self.rows: tuple[Vector, ...] = tuple(tuple(rat(v) for v in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("cannot infer the width of an empty matrix")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> Matrix:
        nrows = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self, idx: Iterable[int]) -> Matrix:
        idx = list(idx)
        return Matrix([[r[j] for j in idx] for r in self.rows], ncols=len(idx))

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.rows), ncols=self.nrows) if self.nrows else Matrix([], 0)

    def hstack(self, other: Matrix) -> Matrix:
        return Matrix([a + b for a, b in zip(self.rows, other.rows)], ncols=self.ncols + other.ncols)

    def __neg__(self) -> Matrix:
        return Matrix([[-v for v in r] for r in self.rows], ncols=self.ncols)

    def matvec(self, x: Sequence) -> Vector:
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            cols = other.transpose().rows
            return Matrix([[dot(r, c) for c in cols] for r in self.rows], ncols=other.ncols)
        return self.matvec(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt(v) for v in r) for r in self.rows)
        return f"Matrix([{body}])"


def dot(u: Sequence, v: Sequence):
    acc = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            acc += a * b
    return acc


def _eliminate(aug: list[list[Fraction]], m: int) -> None:
    """In-place Gauss-Jordan on the left m columns of ``aug``.

    Pivot is the first nonzero entry in the column (no magnitude pivoting:
    the arithmetic is exact).
    """
    for col in range(m):
        piv = next((r for r in range(col, m) if aug[r][col]), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular (no pivot in column {col})")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        inv = 1 / prow[col]
        if inv != 1:
            prow[:] = [v * inv for v in prow]
        for r in range(m):
            if r != col:
                f = aug[r][col]
                if f:
                    row = aug[r]
                    row[:] = [a - f * b for a, b in zip(row, prow)]


def solve_square(M: Matrix, rhs: Sequence) -> Vector:
    """Solve ``M x = rhs`` exactly; raises :class:`SingularMatrix`."""
    if M.nrows != M.ncols:
        raise ValueError("solve_square needs a square matrix")
    m = M.nrows
    if len(rhs) != m:
        raise ValueError("right-hand side has the wrong length")
    aug = [list(r) + [rat(v)] for r, v in zip(M.rows, rhs)]
    _eliminate(aug, m)
    return tuple(row[m] for row in aug)


def inverse(M: Matrix) -> Matrix:
    if M.nrows != M.ncols:
        raise ValueError("inverse needs a square matrix")
    m = M.nrows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(m)] for i, r in enumerate(M.rows)]
    _eliminate(aug, m)
    return Matrix([row[m:] for row in aug], ncols=m)


def pivot_columns(M: Matrix) -> list[int]:
    """Column indices of the reduced row echelon pivots, left to right."""
    rows = [list(r) for r in M.rows]
    pivots: list[int] = []
    r = 0
    for col in range(M.ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][col] / prow[col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(col)
        r += 1
    return pivots


def rank(M: Matrix) -> int:
    return len(pivot_columns(M))
