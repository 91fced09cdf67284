import json
import pytest

from pivotlab.cli import run_command
from pivotlab.corpus import tiny_lps
from pivotlab.exact import BigM
from pivotlab.io import bigm_from_json, lp_from_json, lp_to_json
from pivotlab.oracle import brute_force_optimum
from pivotlab.kleeminty import BitString, km_instance

PRIMAL = ["dantzig", "bland", "steepest-edge", "greatest-improvement", "random-index"]


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_km_gen(capsys, tmp_path):
    obj = run_json(capsys, "km-gen", "--d", "4", "--eps", "1/3")
    assert lp_from_json(obj["lp"]) == km_instance(4).lp
    assert obj["map"]["1000"] == list(km_instance(4).basis(BitString.parse("1000")).cols)
    out = tmp_path / "km.json"
    assert run(capsys, "km-gen", "--d", "3", "--out", str(out))[0] == 0
    assert (tmp_path / "km.map.json").exists()
    assert lp_from_json(json.loads(out.read_text())) == km_instance(3).lp


def test_gray(capsys):
    assert run_json(capsys, "gray", "--d", "3", "--bits", "010") == {
        "bits": "010", "rank": 3, "succ": "110", "pred": "011"}
    obj = run_json(capsys, "gray", "--d", "3", "--rank", "7")
    assert obj["bits"] == "100" and obj["succ"] == "END_OF_CODE"
    assert run(capsys, "gray", "--d", "3")[0] == 2
    assert run(capsys, "gray", "--d", "3", "--rank", "8")[0] == 1


@pytest.mark.parametrize("name", sorted(tiny_lps()))
def test_solve_agrees_with_oracle(capsys, name):
    truth = brute_force_optimum(tiny_lps()[name])
    for rule in PRIMAL:
        obj = run_json(capsys, "solve", "--lp", f"builtin:{name}", "--rule", rule, "--bigm")
        assert obj["lp_verdict"] == truth.kind
        if truth.kind == "Optimal":
            assert bigm_from_json(obj["objective"]) == truth.value
    code, out, _ = run(capsys, "solve", "--lp", f"builtin:{name}", "--rule", "shadow-vertex")
    obj = json.loads(out)
    if name == "two-branch":
        # symmetric costs: both reduced costs reach zero at the same lambda
        assert code == 1 and obj["verdict"] == "RuleError(DEGENERATE_TIE)"
    else:
        assert code == 0 and obj["verdict"].startswith(f"Terminal({truth.kind}")
        if truth.kind == "Optimal":
            assert bigm_from_json(obj["objective"]) == truth.value


@pytest.mark.parametrize("d", [2, 3, 4])
def test_solve_klee_minty(capsys, d):
    truth = brute_force_optimum(km_instance(d).lp)
    for rule in ["dantzig", "bland", "steepest-edge", "greatest-improvement", "shadow-vertex"]:
        obj = run_json(capsys, "solve", "--lp", f"builtin:km{d}", "--rule", rule)
        assert obj["verdict"] == "Terminal(Optimal)"
        assert bigm_from_json(obj["objective"]) == truth.value == BigM(1)


def test_trace_jsonl(capsys, tmp_path):
    code, out, _ = run(capsys, "trace", "--lp", "builtin:small-box", "--rule", "bland", "--bigm")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and recs[-1]["verdict"] == "Terminal"
    assert all({"basis", "potential", "entering", "leaving"} <= set(r) for r in recs[:-1])
    dest = tmp_path / "t.jsonl"
    run(capsys, "trace", "--lp", "builtin:small-box", "--rule", "bland", "--bigm", "--out", str(dest))
    assert dest.read_text() == out


def test_member(capsys, tmp_path):
    lp_file = tmp_path / "up.json"
    lp_file.write_text(json.dumps(lp_to_json(tiny_lps()["unique-path"])))
    assert run(capsys, "member", "--rule", "dantzig", "--lp", str(lp_file), "--basis", "2,3",
               "--cap", "100000")[1].strip() == "Yes"
    assert run(capsys, "member", "--lp", str(lp_file), "--basis", "1,2")[1].strip() == "No"
    assert run(capsys, "member", "--lp", "builtin:km3", "--basis", "1,2,3,4,6,8",
               "--cap", "1")[1].strip() == "Aborted"


def test_shadow_member(capsys):
    obj = run_json(capsys, "shadow-member", "--lp", "builtin:simplex-segment", "--basis", "1", "--b0", "2")
    assert obj == {"member": True, "B0": [2], "lo": "1/2", "hi": "1"}


def test_circuit_commands(capsys, tmp_path):
    obj = run_json(capsys, "circuit-eval", "--circuit", "builtin:two-cycle:3", "--x", "000")
    assert obj == {"input": "000", "output": "001", "hamming": 1}
    assert run(capsys, "cpath-member", "--circuit", "builtin:two-cycle:3", "--xc", "110")[1].strip() == "No"
    assert run(capsys, "cpath-member", "--circuit", "builtin:gray-successor:3",
               "--xc", "110")[1].strip() == "Yes"
    dest = tmp_path / "red.json"
    assert run(capsys, "reduce", "--circuit", "builtin:mixed-walker:3", "--xc", "101", "--out", str(dest))[0] == 0
    assert json.loads(dest.read_text())["B_hat_bits"] == "100101"
    log = tmp_path / "r.jsonl"
    obj = run_json(capsys, "r-simulate", "--circuit", "builtin:gray-successor:3", "--xc", "101",
                   "--variant", "repaired", "--log", str(log))
    assert obj["verdict"] == "Yes" and not obj["diagnostics"]
    assert len(log.read_text().splitlines()) == obj["steps"] + 1
    obj = run_json(capsys, "r-simulate", "--circuit", "builtin:gray-successor:3", "--xc", "101",
                   "--variant", "paper")
    assert obj["verdict"] == "Diagnostic"


def test_verify_reduction(capsys, tmp_path):
    cfile = tmp_path / "c.json"
    from pivotlab.circuits import mixed_walker_circuit

    cfile.write_text(json.dumps(mixed_walker_circuit(3).to_json()))
    obj = run_json(capsys, "verify-reduction", "--circuit", str(cfile), "--xc", "101", "--variant", "repaired")
    assert set(obj) == {"x_c", "c_path", "r_path", "agree"} and obj["agree"]
    obj = run_json(capsys, "verify-reduction", "--circuit", str(cfile), "--all")
    assert obj["agree"] and len(obj["cases"]) == 7


def test_estimate_visit(capsys):
    obj = run_json(capsys, "estimate-visit", "--lp", "builtin:two-branch", "--basis", "2,3",
                   "--trials", "2000", "--seed", "4", "--f", "0", "--p", "4", "--exact")
    assert obj["exact"] == "1/2" and obj["verdict"] == "Above"
    again = run_json(capsys, "estimate-visit", "--lp", "builtin:two-branch", "--basis", "2,3",
                     "--trials", "2000", "--seed", "4")
    assert again["p_hat"] == obj["p_hat"]


def test_oracle_and_table_format(capsys):
    assert run_json(capsys, "oracle", "--lp", "builtin:ray") == {"kind": "Unbounded"}
    code, out, _ = run(capsys, "oracle", "--lp", "builtin:simplex-segment", "--format", "table")
    assert code == 0 and out.splitlines()[0].split() == ["kind", "Optimal"]


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["solve"],
    ["solve", "--lp", "builtin:nope"],
    ["solve", "--lp", "/no/such/file.json"],
    ["member", "--lp", "builtin:ray", "--basis", "a,b"],
    ["cpath-member", "--circuit", "builtin:nope:3", "--xc", "101"],
    ["cpath-member", "--circuit", "builtin:two-cycle:3", "--xc", "10x"],
    ["r-simulate", "--circuit", "builtin:two-cycle:3"],
    ["verify-reduction", "--circuit", "builtin:two-cycle:3"],
    ["km-gen", "--d", "three"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


@pytest.mark.parametrize("argv", [
    ["km-gen", "--d", "3", "--eps", "1/2"],
    ["reduce", "--circuit", "builtin:two-cycle:3", "--xc", "000"],
    ["circuit-eval", "--circuit", "builtin:two-cycle:3", "--x", "0000"],
    ["solve", "--lp", "builtin:ray"],
    ["member", "--lp", "builtin:simplex-segment", "--basis", "1"],
    ["shadow-member", "--lp", "builtin:simplex-segment", "--basis", "1,2"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err
