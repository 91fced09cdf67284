"""Boolean circuits, C-PATH, and the rule R reduction onto the Klee-Minty cube.

A state of rule R is a ``2n``-bit vertex ``(B1, B2)`` of the ``2n``-cube:
``B1`` is a Gray-code counter and ``B2`` the current string on the path of
the circuit.  Two variants are provided:

``paper``
    Steps 1-7 applied literally.  The successor is undefined at ``x_G`` and
    the counting step inside the top block moves the objective down; both
    are logged instead of hidden.
``repaired``
    First-matching dispatch: sweep (B1 = x_G, count B2 *down*), success
    counting (B2 = x_C), drain through counter blocks ``top-2`` and
    ``top-1``, otherwise simulate.  Every clause raises the Gray rank of
    the whole state, hence the objective.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from pivotlab.errors import (
    EndOfCode,
    MonotonicityViolation,
    PivotLabError,
    PreconditionError,
    PromiseViolation,
    RangeError,
    TrivialQuery,
    WidthMismatch,
)
from pivotlab.kleeminty import (
    BitString,
    KleeMintyInstance,
    gray_codes,
    gray_pred,
    gray_rank,
    gray_succ,
    gray_unrank,
    increasing,
    km_instance,
)
from pivotlab.lp import Basis, LinearProgram
from pivotlab.rules import Dantzig, Rule

OPS = {"input": 1, "not": 1, "and": 2, "or": 2}


@dataclass(frozen=True)
class Gate:
    id: str
    op: str
    args: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "op", self.op.lower())
        object.__setattr__(self, "args", tuple(self.args))
        if self.op not in OPS:
            raise ValueError(f"gate {self.id}: unknown op {self.op!r}")
        if len(self.args) != OPS[self.op]:
            raise ValueError(f"gate {self.id}: {self.op} takes {OPS[self.op]} argument(s)")


@dataclass(frozen=True)
class Circuit:
    """Topologically ordered gate list with ``n`` inputs and ``n`` outputs.

    An ``input`` gate's single argument is its 1-based input position; every
    other argument is the id of an earlier gate.
    """

    n: int
    gates: tuple[Gate, ...]
    outputs: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        seen: set[str] = set()
        positions = []
        for g in self.gates:
            if g.id in seen:
                raise ValueError(f"duplicate gate id {g.id!r}")
            if g.op == "input":
                positions.append(int(g.args[0]))
            else:
                for a in g.args:
                    if a not in seen:
                        raise ValueError(f"gate {g.id} reads {a!r} before it is defined (cycle or bad order)")
            seen.add(g.id)
        if sorted(positions) != list(range(1, self.n + 1)):
            raise ValueError(f"need exactly one input gate per position 1..{self.n}")
        if len(self.outputs) != self.n:
            raise ValueError("output width must equal input width")
        missing = [o for o in self.outputs if o not in seen]
        if missing:
            raise ValueError(f"unknown output gates {missing}")

    def __call__(self, x: BitString) -> BitString:
        return eval_circuit(self, x)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "gates": [{"id": g.id, "op": g.op, "args": list(g.args)} for g in self.gates],
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Circuit:
        gates = []
        for g in obj["gates"]:
            args = g.get("args", [])
            if g["op"].lower() == "input":
                args = [int(args[0])]
            else:
                args = [str(a) for a in args]
            gates.append(Gate(str(g["id"]), g["op"], tuple(args)))
        return cls(int(obj["n"]), tuple(gates), tuple(str(o) for o in obj["outputs"]))


def eval_circuit(C: Circuit, x: BitString) -> BitString:
    if len(x) != C.n:
        raise WidthMismatch(f"circuit has {C.n} inputs, got {len(x)} bits")
    val: dict[str, int] = {}
    for g in C.gates:
        if g.op == "input":
            v = x.bits[g.args[0] - 1]
        elif g.op == "not":
            v = 1 - val[g.args[0]]
        elif g.op == "and":
            v = val[g.args[0]] & val[g.args[1]]
        else:
            v = val[g.args[0]] | val[g.args[1]]
        val[g.id] = v
    return BitString(tuple(val[o] for o in C.outputs))


def c_step(C: Circuit, x: BitString) -> tuple[BitString, int]:
    """``(C(x), i)`` where ``i`` is the single differing position (1-based)."""
    y = eval_circuit(C, x)
    diff = [i + 1 for i, (a, b) in enumerate(zip(x.bits, y.bits)) if a != b]
    if len(diff) != 1:
        raise PromiseViolation(f"C({x}) = {y} is at Hamming distance {len(diff)}, not 1")
    return y, diff[0]


def c_path(C: Circuit, cap: Optional[int] = None) -> list[BitString]:
    """Distinct prefix of the path from ``0^n`` (stops at the first repeat or ``cap``)."""
    cap = (1 << C.n) if cap is None else cap
    x = BitString.zeros(C.n)
    out, seen = [], set()
    while len(out) < cap and x not in seen:
        out.append(x)
        seen.add(x)
        x, _ = c_step(C, x)
    return out


def c_path_member(C: Circuit, x_c: BitString, cap: Optional[int] = None) -> str:
    if len(x_c) != C.n:
        raise WidthMismatch("x_C width differs from the circuit width")
    cap = (1 << C.n) if cap is None else cap
    x = BitString.zeros(C.n)
    seen = set()
    for _ in range(cap):
        if x == x_c:
            return "Yes"
        if x in seen:
            return "No"
        seen.add(x)
        x, _ = c_step(C, x)
    if cap >= (1 << C.n):
        return "No"
    return "Aborted"


def check_promise(C: Circuit, sample: Optional[int] = 4096, seed: int = 0) -> None:
    """Check the distance-1 promise on every input, or on a seeded sample when ``2^n`` is large."""
    total = 1 << C.n
    if sample is None or total <= sample:
        inputs: Iterable[BitString] = gray_codes(C.n)
    else:
        rng = random.Random(seed)
        inputs = (gray_unrank(C.n, rng.randrange(total)) for _ in range(sample))
    for x in inputs:
        c_step(C, x)


# -- circuit synthesis -------------------------------------------------------


def circuit_from_function(n: int, f: Callable[[BitString], BitString]) -> Circuit:
    """Sum-of-products circuit computing ``f`` on all ``2^n`` inputs.

    Minterm AND chains are shared between outputs.  A constant-0 output is
    wired as ``x1 and not x1``.
    """
    gates: list[Gate] = [Gate(f"x{i}", "input", (i,)) for i in range(1, n + 1)]
    gates += [Gate(f"n{i}", "not", (f"x{i}",)) for i in range(1, n + 1)]
    table = {x: f(x) for x in gray_codes(n)}
    for x, y in table.items():
        if len(y) != n:
            raise WidthMismatch(f"f({x}) has width {len(y)}")
    minterm: dict[BitString, str] = {}

    def literal(x: BitString, i: int) -> str:
        return f"x{i}" if x[i] else f"n{i}"

    def term(x: BitString) -> str:
        if x not in minterm:
            prev = literal(x, 1)
            for i in range(2, n + 1):
                gid = f"m{x}_{i}"
                gates.append(Gate(gid, "and", (prev, literal(x, i))))
                prev = gid
            minterm[x] = prev
        return minterm[x]

    outputs = []
    for k in range(1, n + 1):
        ones = [x for x in sorted(table, key=gray_rank) if table[x][k]]
        if not ones:
            gid = f"zero{k}"
            gates.append(Gate(gid, "and", ("x1", "n1")))
            outputs.append(gid)
            continue
        prev = term(ones[0])
        for j, x in enumerate(ones[1:], start=1):
            gid = f"o{k}_{j}"
            gates.append(Gate(gid, "or", (prev, term(x))))
            prev = gid
        outputs.append(prev)
    return Circuit(n, tuple(gates), tuple(outputs))


def walk_circuit(n: int, walk: Sequence[BitString]) -> Circuit:
    """Circuit whose path is ``walk`` followed by bouncing between its last two strings.

    ``walk`` must start at ``0^n`` and move one bit per step.  Strings off
    the walk flip their last bit.
    """
    walk = list(walk)
    if walk[0] != BitString.zeros(n) or len(walk) < 2:
        raise ValueError("walk must start at 0^n and have at least two strings")
    if len(set(walk)) != len(walk):
        raise ValueError("walk repeats a string")
    nxt = {walk[k]: walk[k + 1] for k in range(len(walk) - 1)}
    nxt[walk[-1]] = walk[-2]
    for a, b in nxt.items():
        if a.hamming(b) != 1:
            raise PromiseViolation(f"walk step {a} -> {b} is not a single flip")
    return circuit_from_function(n, lambda x: nxt.get(x, x.flip(n)))


def gray_successor_circuit(n: int) -> Circuit:
    """Follows the Gray code to rank ``2^n - 2``, then bounces with rank ``2^n - 3``."""
    return walk_circuit(n, [gray_unrank(n, k) for k in range((1 << n) - 1)])


def two_cycle_circuit(n: int) -> Circuit:
    """``C(x)`` flips the last bit: the path alternates ``0^n`` and ``0^{n-1}1``."""
    gates = [Gate(f"x{i}", "input", (i,)) for i in range(1, n + 1)]
    gates.append(Gate("nx", "not", (f"x{n}",)))
    return Circuit(n, tuple(gates), tuple(f"x{i}" for i in range(1, n)) + ("nx",))


def mixed_walk(n: int) -> list[BitString]:
    """Gray code on bit-reversed strings, cut to ``2^{n-1} + 1`` strings.

    Seen from the cube's ordering this walk alternates increasing and
    non-increasing flips.
    """
    length = (1 << (n - 1)) + 1
    return [BitString(tuple(reversed(gray_unrank(n, k).bits))) for k in range(length)]


def mixed_walker_circuit(n: int) -> Circuit:
    return walk_circuit(n, mixed_walk(n))


def flip_lowest_zero_circuit(n: int) -> Circuit:
    """Flips the rightmost 0 bit; on ``1^n`` flips the last bit."""
    def f(x: BitString) -> BitString:
        zeros = [i for i in range(1, n + 1) if x[i] == 0]
        return x.flip(zeros[-1] if zeros else n)

    return circuit_from_function(n, f)


CIRCUIT_FAMILIES: dict[str, Callable[[int], Circuit]] = {
    "gray-successor": gray_successor_circuit,
    "two-cycle": two_cycle_circuit,
    "mixed-walker": mixed_walker_circuit,
}


# -- the reduction -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ReductionInstance:
    n: int
    circuit: Circuit
    x_c: BitString
    km: KleeMintyInstance
    B0: Basis
    B_hat: Basis

    @property
    def x_g(self) -> BitString:
        return BitString.last(self.n)

    @property
    def start(self) -> BitString:
        return BitString.zeros(2 * self.n)

    @property
    def terminal(self) -> BitString:
        return BitString.last(2 * self.n)

    @property
    def target(self) -> BitString:
        return self.x_g + self.x_c


def build_reduction(C: Circuit, x_c: BitString, check_sample: Optional[int] = 4096) -> ReductionInstance:
    n = C.n
    if n < 3:
        raise RangeError("the reduction needs circuit width n >= 3")
    if len(x_c) != n:
        raise WidthMismatch("x_C width differs from the circuit width")
    if x_c == BitString.zeros(n):
        raise TrivialQuery("x_C = 0^n is the first string on every path")
    check_promise(C, check_sample)
    km = km_instance(2 * n, Fraction(1, 3))
    B0 = km.basis(BitString.zeros(2 * n))
    B_hat = km.basis(BitString.last(n) + x_c)
    return ReductionInstance(n, C, x_c, km, B0, B_hat)


@dataclass(frozen=True)
class RStep:
    state: BitString
    clause: str
    flip: Optional[int] = None  # C-flip position, simulation clauses only
    followup_increasing: Optional[bool] = None  # after a counter step: is that flip now increasing?
    diagnostics: tuple[str, ...] = ()


def _simulate(ctx: ReductionInstance, B: BitString, B1: BitString, B2: BitString, succ_clause: str) -> RStep:
    n = ctx.n
    y, i = c_step(ctx.circuit, B2)
    if increasing(B, n + i):
        return RStep(B1 + y, "step6" if succ_clause == "step7" else "simulate", flip=i)
    nxt = gray_succ(B1) + B2
    return RStep(nxt, succ_clause, flip=i, followup_increasing=increasing(nxt, n + i))


def _down(B2: BitString, x_c: BitString) -> tuple[BitString, tuple[str, ...]]:
    r = gray_rank(B2)
    avoid = gray_rank(x_c)
    cands = sorted((gray_rank(B2.flip(j)), j) for j in range(1, len(B2) + 1))
    lower = [(rk, j) for rk, j in cands if rk < r]
    ok = [(rk, j) for rk, j in lower if rk != avoid]
    if ok:
        return B2.flip(ok[0][1]), ()
    return B2.flip(lower[0][1]), ("REDUCTION_EDGE",)


def rule_r_step(variant: str, ctx: ReductionInstance, B: BitString) -> RStep:
    n = ctx.n
    if len(B) != 2 * n:
        raise WidthMismatch(f"state must have {2 * n} bits")
    if B == ctx.terminal:
        raise PreconditionError(f"{B} is the terminal basis")
    B1, B2 = B.split(n)
    if variant == "paper":
        if B2 == ctx.x_c:
            return RStep(gray_succ(B1) + B2, "step2")
        if B1 == ctx.x_g:
            return RStep(B1 + gray_succ(B2), "step3")
        return _simulate(ctx, B, B1, B2, "step7")
    if variant != "repaired":
        raise ValueError(f"unknown variant {variant!r}")
    top = (1 << n) - 1
    g1 = gray_rank(B1)
    if B1 == ctx.x_g:
        return RStep(B1 + gray_pred(B2), "sweep")
    if B2 == ctx.x_c:
        return RStep(gray_succ(B1) + B2, "success")
    zero = BitString.zeros(n)
    if g1 == top - 2:
        if B2 == zero:
            return RStep(gray_succ(B1) + B2, "drain-exit")
        nxt, diags = _down(B2, ctx.x_c)
        return RStep(B1 + nxt, "drain", diagnostics=diags)
    if g1 == top - 1:
        diags = () if B2 == zero else ("INVARIANT_VIOLATION",)
        return RStep(gray_succ(B1) + B2, "finish", diagnostics=diags)
    return _simulate(ctx, B, B1, B2, "count")


def rule_r_next(variant: str, ctx: ReductionInstance, B: BitString) -> BitString:
    return rule_r_step(variant, ctx, B).state


@dataclass
class RRun:
    variant: str
    verdict: str  # Yes, No, Aborted, Diagnostic
    visited: bool
    states: list[BitString]
    objectives: list[Fraction]
    steps: list[RStep] = field(default_factory=list)
    diagnostics: list[tuple[int, str, str]] = field(default_factory=list)  # (step, code, detail)
    ended: str = ""  # "terminal", "cap" or an error code

    def __len__(self) -> int:
        return len(self.states)


def r_path_member(variant: str, ctx: ReductionInstance, cap: Optional[int] = None) -> RRun:
    """Run rule R from ``0^{2n}`` and report whether ``x_G x_C`` is visited.

    The run continues to the terminal basis (or a breakdown) so that the
    whole path is available for inspection.  ``Diagnostic`` is reported for
    any drain edge case, invariant violation, objective decrease or undefined
    successor.
    """
    cap = (1 << (2 * ctx.n + 2)) if cap is None else cap
    km, target = ctx.km, ctx.target
    B = ctx.start
    run = RRun(variant, "", B == target, [B], [km.objective(B)])
    while True:
        if B == ctx.terminal:
            run.ended = "terminal"
            break
        if len(run.states) >= cap:
            run.ended = "cap"
            break
        k = len(run.states)
        try:
            step = rule_r_step(variant, ctx, B)
        except EndOfCode as exc:
            run.diagnostics.append((k, exc.code, str(exc)))
            run.ended = exc.code
            break
        obj = km.objective(step.state)
        for code in step.diagnostics:
            run.diagnostics.append((k, code, f"{step.clause} at {B}"))
        if not obj > run.objectives[-1]:
            detail = f"{step.clause}: {B} -> {step.state} lowers the objective"
            if variant == "repaired":
                raise MonotonicityViolation(detail)
            run.diagnostics.append((k, MonotonicityViolation.code, detail))
        B = step.state
        run.steps.append(step)
        run.states.append(B)
        run.objectives.append(obj)
        run.visited = run.visited or B == target
    if run.diagnostics:
        run.verdict = "Diagnostic"
    elif run.ended == "cap":
        run.verdict = "Aborted"
    else:
        run.verdict = "Yes" if run.visited else "No"
    return run


class RuleR(Rule):
    """Rule R as a basis-level pivoting rule on the reduction's cube.

    On any other program it falls back to Dantzig's rule.
    """

    def __init__(self, ctx: ReductionInstance, variant: str = "repaired") -> None:
        self.ctx = ctx
        self.variant = variant
        self.name = f"rule-r-{variant}"
        self._fallback = Dantzig()

    def _ours(self, lp: LinearProgram) -> bool:
        return lp is self.ctx.km.lp

    def initial_basis(self, lp):
        return self.ctx.B0 if self._ours(lp) else self._fallback.initial_basis(lp)

    def potential(self, lp, B):
        if self._ours(lp):
            return self.ctx.km.objective(self.ctx.km.bits(B))
        return self._fallback.potential(lp, B)

    def classify(self, lp, B):
        return self._fallback.classify(lp, B)

    def next_basis(self, lp, B, rng=None):
        if not self._ours(lp):
            return self._fallback.next_basis(lp, B, rng)
        km = self.ctx.km
        v = km.bits(B)
        w = rule_r_next(self.variant, self.ctx, v)
        if not km.objective(w) > km.objective(v):
            raise MonotonicityViolation(f"{self.name}: {v} -> {w} lowers the objective")
        return km.basis(w)

    def __repr__(self) -> str:
        return f"RuleR({self.variant!r})"


__all__ = [
    "CIRCUIT_FAMILIES",
    "Circuit",
    "Gate",
    "PivotLabError",
    "ReductionInstance",
    "RRun",
    "RStep",
    "RuleR",
    "build_reduction",
    "c_path",
    "c_path_member",
    "c_step",
    "check_promise",
    "circuit_from_function",
    "eval_circuit",
    "flip_lowest_zero_circuit",
    "gray_successor_circuit",
    "mixed_walker_circuit",
    "r_path_member",
    "rule_r_next",
    "rule_r_step",
    "two_cycle_circuit",
    "walk_circuit",
]
