"""Binary reflected Gray code and the Klee-Minty cube.

Bit strings are read with ``b_1`` as the most significant position, so the
recursion ``G_{d+1} = (0 G_d, 1 reversed(G_d))`` prepends the new bit on the
left.  The last string of ``G_d`` is ``10...0``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from pivotlab.errors import EndOfCode, RangeError
from pivotlab.exact import BigM, Matrix, rat
from pivotlab.lp import Basis, LinearProgram


@dataclass(frozen=True)
class BitString:
    bits: Sequence[int]

    def __post_init__(self) -> None:
        if len(self.bits) < 1:
            raise ValueError("bit strings have length >= 1")

    @classmethod
    def parse(cls, s: str) -> BitString:
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bit string: {s!r}")
        return cls(tuple(int(ch) for ch in s))

    @classmethod
    def zeros(cls, d: int) -> BitString:
        return cls((0,) * d)

    @classmethod
    def last(cls, d: int) -> BitString:
        """``1 0^{d-1}``, the final string of the Gray code."""
        return cls((1,) + (0,) * (d - 1))

    @property
    def d(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        """1-based bit access."""
        if not 1 <= i <= len(self.bits):
            raise IndexError(i)
        return self.bits[i - 1]

    def flip(self, i: int) -> BitString:
        bits = list(self.bits)
        bits[i - 1] ^= 1
        return BitString(tuple(bits))

    def __add__(self, other: BitString) -> BitString:
        return BitString(tuple(self.bits) + tuple(other.bits))

    def split(self, k: int) -> tuple[BitString, BitString]:
        return BitString(tuple(self.bits[:k])), BitString(tuple(self.bits[k:]))

    def hamming(self, other: BitString) -> int:
        return sum(a != b for a, b in zip(self.bits, other.bits))

    def __eq__(self, other) -> bool:
        return isinstance(other, BitString) and tuple(self.bits) == tuple(other.bits)

    def __hash__(self) -> int:
        return hash(tuple(self.bits))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __repr__(self) -> str:
        return f"BitString('{self}')"


def gray_rank(x: BitString) -> int:
    """Position of ``x`` in ``G_d`` (prefix XOR of the bits)."""
    k, acc = 0, 0
    for b in x.bits:
        acc ^= b
        k = (k << 1) | acc
    return k


def gray_unrank(d: int, k: int) -> BitString:
    """``G_d[k]``."""
    if d < 1:
        raise RangeError("d must be >= 1")
    if not 0 <= k < (1 << d):
        raise RangeError(f"rank {k} outside [0, 2^{d})")
    g = k ^ (k >> 1)
    return BitString(tuple((g >> (d - 1 - i)) & 1 for i in range(d)))


def gray_codes(d: int) -> Iterator[BitString]:
    for k in range(1 << d):
        yield gray_unrank(d, k)


def _step_position(x: BitString, forward: bool) -> int:
    # Even rank steps forward by flipping the last bit; odd rank by flipping
    # the bit just left of the rightmost 1.  Backward steps swap the cases.
    bits = x.bits
    d = len(bits)
    parity = 0
    rightmost_one = 0
    for i in range(d):
        if bits[i]:
            parity ^= 1
            rightmost_one = i + 1
    flip_last = (parity == 0) if forward else (parity == 1)
    if flip_last:
        return d
    if rightmost_one <= 1:
        raise EndOfCode(f"{'successor' if forward else 'predecessor'} of {x} is undefined")
    return rightmost_one - 1


def gray_succ(x: BitString) -> BitString:
    """``S_d(x) = G_d[G_d^-1(x) + 1]``; raises :class:`EndOfCode` at ``10^{d-1}``."""
    return x.flip(_step_position(x, True))


def gray_pred(x: BitString) -> BitString:
    """Inverse of :func:`gray_succ`; raises :class:`EndOfCode` at ``0^d``."""
    return x.flip(_step_position(x, False))


def succ_flip_index(x: BitString) -> int:
    """1-based position that :func:`gray_succ` flips."""
    return _step_position(x, True)


def increasing(v: BitString, i: int) -> bool:
    """Whether flipping bit ``i`` raises the Klee-Minty objective at vertex ``v``.

    True iff ``b_1 + ... + b_i`` is even.
    """
    if not 1 <= i <= len(v):
        raise RangeError(f"coordinate {i} outside 1..{len(v)}")
    return sum(v.bits[:i]) % 2 == 0


DEFAULT_EPS = Fraction(1, 3)


def vertex_coordinates(v: BitString, eps=DEFAULT_EPS) -> tuple[Fraction, ...]:
    """Coordinates of the cube vertex for ``v``, built from ``x_d`` down to ``x_1``."""
    eps = rat(eps)
    d = len(v)
    x = [Fraction(0)] * (d + 1)
    for i in range(d, 0, -1):
        b = v.bits[i - 1]
        x[i - 1] = b + (1 - 2 * b) * eps * x[i]
    return tuple(x[:d])


@dataclass(frozen=True, eq=False)
class KleeMintyInstance:
    """``max x_1`` over the deformed cube, in equality form.

    Columns: ``x_1..x_d``, then for each ``i`` the lower-bound surplus
    ``l_i`` and the upper-bound slack ``u_i``.  Rows ``2i-1`` and ``2i``
    encode ``eps*x_{i+1} <= x_i`` and ``x_i <= 1 - eps*x_{i+1}``
    (``x_{d+1} = 0``).
    """

    d: int
    eps: Fraction
    lp: LinearProgram

    def lower_col(self, i: int) -> int:
        return self.d + 2 * i - 1

    def upper_col(self, i: int) -> int:
        return self.d + 2 * i

    def basis(self, v: BitString) -> Basis:
        """Structural columns plus the slack of each non-tight inequality."""
        if len(v) != self.d:
            raise RangeError(f"need a {self.d}-bit string")
        slack = [self.lower_col(i) if v[i] else self.upper_col(i) for i in range(1, self.d + 1)]
        return Basis(tuple(range(1, self.d + 1)) + tuple(slack))

    def bits(self, B: Basis) -> BitString:
        cols = set(B.cols)
        if not set(range(1, self.d + 1)) <= cols or len(cols) != 2 * self.d:
            raise ValueError(f"{B} is not a vertex basis of this cube")
        out = []
        for i in range(1, self.d + 1):
            lo, up = self.lower_col(i) in cols, self.upper_col(i) in cols
            if lo == up:
                raise ValueError(f"{B} is not a vertex basis of this cube")
            out.append(1 if lo else 0)
        return BitString(tuple(out))

    def vertex(self, v: BitString) -> tuple[Fraction, ...]:
        return vertex_coordinates(v, self.eps)

    def objective(self, v: BitString) -> Fraction:
        return self.vertex(v)[0]

    def basis_map(self) -> dict[str, list[int]]:
        return {str(v): list(self.basis(v).cols) for v in gray_codes(self.d)}


def km_instance(d: int, eps=DEFAULT_EPS) -> KleeMintyInstance:
    if d < 1:
        raise RangeError("d must be >= 1")
    eps = rat(eps)
    if not 0 < eps < Fraction(1, 2):
        raise RangeError(f"eps must lie in (0, 1/2), got {eps}")
    n = 3 * d
    rows, rhs = [], []
    for i in range(1, d + 1):
        lower = [0] * n
        upper = [0] * n
        lower[i - 1] = upper[i - 1] = 1
        if i < d:
            lower[i] = -eps
            upper[i] = eps
        lower[d + 2 * i - 2] = -1
        upper[d + 2 * i - 1] = 1
        rows += [lower, upper]
        rhs += [0, 1]
    c = [BigM(1)] + [BigM(0)] * (n - 1)
    names = tuple(f"x{i}" for i in range(1, d + 1)) + tuple(
        s for i in range(1, d + 1) for s in (f"l{i}", f"u{i}"))
    inst_lp = LinearProgram(Matrix(rows), tuple(rhs), tuple(c), names=names)
    inst = KleeMintyInstance(d, eps, inst_lp)
    # a primal rule started on the cube begins at the bottom vertex
    object.__setattr__(inst, "lp", LinearProgram(inst_lp.A, inst_lp.b, inst_lp.c, names=names,
                                                 start=inst.basis(BitString.zeros(d))))
    return inst
