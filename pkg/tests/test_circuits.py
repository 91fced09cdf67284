import pytest

from pivotlab.circuits import (
    CIRCUIT_FAMILIES,
    Circuit,
    Gate,
    ReductionInstance,
    RuleR,
    build_reduction,
    c_path,
    c_path_member,
    c_step,
    check_promise,
    eval_circuit,
    flip_lowest_zero_circuit,
    gray_successor_circuit,
    mixed_walk,
    r_path_member,
    rule_r_next,
    rule_r_step,
    two_cycle_circuit,
)
from pivotlab.errors import (
    PreconditionError,
    PromiseViolation,
    RangeError,
    TrivialQuery,
    WidthMismatch,
)
from pivotlab.kleeminty import BitString, gray_codes, gray_rank, km_instance
from pivotlab.rules import trace


def bs(s):
    return BitString.parse(s)


def identity(n):
    gates = [Gate(f"x{i}", "input", (i,)) for i in range(1, n + 1)]
    return Circuit(n, tuple(gates), tuple(f"x{i}" for i in range(1, n + 1)))


def complement(n):
    gates = [Gate(f"x{i}", "input", (i,)) for i in range(1, n + 1)]
    gates += [Gate(f"n{i}", "not", (f"x{i}",)) for i in range(1, n + 1)]
    return Circuit(n, tuple(gates), tuple(f"n{i}" for i in range(1, n + 1)))


def small_ctx(circuit, x_c):
    # n = 2 is below the public builder's range; assemble the instance by hand
    n = circuit.n
    km = km_instance(2 * n)
    return ReductionInstance(n, circuit, x_c, km, km.basis(BitString.zeros(2 * n)),
                             km.basis(BitString.last(n) + x_c))


def test_eval_examples():
    assert eval_circuit(flip_lowest_zero_circuit(2), bs("00")) == bs("01")
    not_gate = Circuit(1, (Gate("a", "input", (1,)), Gate("b", "not", ("a",))), ("b",))
    assert eval_circuit(not_gate, bs("0")) == bs("1")
    and_gate = Circuit(2, (Gate("a", "input", (1,)), Gate("b", "input", (2,)),
                           Gate("c", "and", ("a", "b")), Gate("d", "or", ("a", "b"))), ("c", "d"))
    assert eval_circuit(and_gate, bs("10")) == bs("01")
    with pytest.raises(WidthMismatch):
        eval_circuit(and_gate, bs("101"))


def test_c_step_and_promise():
    assert c_step(flip_lowest_zero_circuit(3), bs("011")) == (bs("111"), 1)
    with pytest.raises(PromiseViolation):
        c_step(identity(3), bs("010"))
    with pytest.raises(PromiseViolation):
        c_step(complement(2), bs("00"))
    with pytest.raises(PromiseViolation):
        build_reduction(identity(3), bs("001"))
    for make in CIRCUIT_FAMILIES.values():
        for n in (3, 4, 5):
            check_promise(make(n), sample=None)


def test_c_path_member_examples():
    for n in (3, 4):
        C = gray_successor_circuit(n)
        assert c_path_member(C, BitString.zeros(n)) == "Yes"
        for x in gray_codes(n):
            expected = "Yes" if gray_rank(x) < (1 << n) - 1 else "No"
            assert c_path_member(C, x) == expected
    C = two_cycle_circuit(4)
    assert c_path(C) == [bs("0000"), bs("0001")]
    assert c_path_member(C, bs("1100")) == "No"
    assert c_path_member(gray_successor_circuit(4), bs("1000"), cap=3) == "Aborted"


def test_mixed_walk_is_single_flip():
    for n in (3, 4, 5):
        w = mixed_walk(n)
        assert len(w) == (1 << (n - 1)) + 1
        assert all(a.hamming(b) == 1 for a, b in zip(w, w[1:]))
        assert c_path(mixed_walker_circuit_of(n)) == w


def mixed_walker_circuit_of(n):
    return CIRCUIT_FAMILIES["mixed-walker"](n)


def test_rule_r_small_examples():
    ctx = small_ctx(flip_lowest_zero_circuit(2), bs("11"))
    for variant in ("paper", "repaired"):
        step = rule_r_step(variant, ctx, bs("0010"))
        assert step.state == bs("0110") and step.flip == 2
        assert step.clause in ("step7", "count")
        assert rule_r_next(variant, ctx, bs("0000")) == bs("0001")
        with pytest.raises(PreconditionError):
            rule_r_next(variant, ctx, bs("1000"))
        with pytest.raises(WidthMismatch):
            rule_r_next(variant, ctx, bs("000"))


def test_build_reduction_examples():
    C = gray_successor_circuit(3)
    ctx = build_reduction(C, bs("101"))
    assert ctx.km.bits(ctx.B_hat) == bs("100101")
    assert ctx.km.lp.m == 12 and ctx.km.d == 6
    assert ctx.km.bits(ctx.B0) == BitString.zeros(6)
    with pytest.raises(TrivialQuery):
        build_reduction(C, bs("000"))
    with pytest.raises(RangeError):
        build_reduction(flip_lowest_zero_circuit(2), bs("11"))
    with pytest.raises(WidthMismatch):
        build_reduction(C, bs("1011"))


def test_r_path_member_examples():
    ctx = build_reduction(gray_successor_circuit(3), bs("110"))
    run = r_path_member("repaired", ctx)
    assert run.verdict == "Yes" == c_path_member(ctx.circuit, ctx.x_c)
    ctx = build_reduction(two_cycle_circuit(3), bs("110"))
    run = r_path_member("repaired", ctx)
    assert run.verdict == "No" == c_path_member(ctx.circuit, ctx.x_c)
    assert r_path_member("repaired", ctx, cap=4).verdict == "Aborted"


@pytest.mark.parametrize("family", sorted(CIRCUIT_FAMILIES))
@pytest.mark.parametrize("n", [3, 4])
def test_repaired_runs_are_valid_paths(family, n):
    C = CIRCUIT_FAMILIES[family](n)
    for x_c in gray_codes(n):
        if x_c == BitString.zeros(n):
            continue
        run = r_path_member("repaired", build_reduction(C, x_c))
        assert run.ended == "terminal" and not run.diagnostics
        assert len(run) <= 1 << (2 * n)
        ranks = [gray_rank(s) for s in run.states]
        assert all(a < b for a, b in zip(ranks, ranks[1:]))
        assert all(a.hamming(b) == 1 for a, b in zip(run.states, run.states[1:]))
        assert run.verdict == c_path_member(C, x_c)


@pytest.mark.parametrize("family", sorted(CIRCUIT_FAMILIES))
def test_paper_variant_defects_are_logged(family):
    n = 3
    C = CIRCUIT_FAMILIES[family](n)
    codes = set()
    for x_c in gray_codes(n):
        if x_c == BitString.zeros(n):
            continue
        run = r_path_member("paper", build_reduction(C, x_c))
        assert run.verdict == "Diagnostic"
        codes |= {code for _, code, _ in run.diagnostics}
        for before, step in zip(run.states, run.steps):
            assert step.state.hamming(before) == 1
            if step.clause == "step7":
                assert step.followup_increasing is True
        drops = [d for _, code, d in run.diagnostics if code == "MONOTONICITY_VIOLATION"]
        assert all(d.startswith("step3") for d in drops)
    assert codes == {"END_OF_CODE", "MONOTONICITY_VIOLATION"}


def test_count_steps_make_flip_increasing():
    C = CIRCUIT_FAMILIES["mixed-walker"](4)
    for x_c in (bs("0110"), bs("1111")):
        run = r_path_member("repaired", build_reduction(C, x_c))
        counted = [s for s in run.steps if s.clause == "count"]
        assert counted and all(s.followup_increasing for s in counted)


def test_rule_r_as_pivoting_rule():
    ctx = build_reduction(CIRCUIT_FAMILIES["mixed-walker"](3), bs("011"))
    tr = trace(RuleR(ctx), ctx.km.lp, cap=1 << 9)
    tr.check()
    assert tr.verdict.classification.kind == "Optimal"
    assert [ctx.km.bits(B) for B in tr.bases] == r_path_member("repaired", ctx).states


def test_circuit_json_round_trip():
    for make in CIRCUIT_FAMILIES.values():
        C = make(3)
        assert Circuit.from_json(C.to_json()) == C


@pytest.mark.parametrize("gates,outputs,n", [
    ([("a", "input", (1,)), ("b", "xor", ("a", "a"))], ["b"], 1),
    ([("a", "input", (1,)), ("b", "not", ("a", "a"))], ["b"], 1),
    ([("a", "input", (1,)), ("b", "not", ("c",)), ("c", "not", ("b",))], ["b"], 1),
    ([("a", "input", (1,)), ("a", "not", ("a",))], ["a"], 1),
    ([("a", "input", (1,)), ("b", "input", (2,))], ["a"], 2),
    ([("a", "input", (1,))], ["a", "a"], 2),
    ([("a", "input", (1,))], ["z"], 1),
])
def test_circuit_validation(gates, outputs, n):
    with pytest.raises(ValueError):
        Circuit(n, tuple(Gate(*g) for g in gates), tuple(outputs))
