"""Command-line interface: ``pivotlab <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (singular basis,
promise violation, ...) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pivotlab import circuits as circ
from pivotlab.corpus import circuits as bundled_circuits
from pivotlab.corpus import tiny_lps
from pivotlab.errors import PivotLabError
from pivotlab.exact import fmt, rat
from pivotlab.io import (
    basis_from_json,
    basis_to_json,
    dump_json,
    load_json,
    lp_from_json,
    lp_to_json,
    reduction_to_json,
    scalar_to_json,
    trace_records,
)
from pivotlab.kleeminty import BitString, gray_pred, gray_rank, gray_succ, gray_unrank, km_instance
from pivotlab.lp import big_m_transform
from pivotlab.oracle import brute_force_optimum
from pivotlab.randomized import decide_fp, estimate_visit
from pivotlab.rules import get_rule, original_verdict, path_member, trace
from pivotlab.shadow import lambda_interval, make_homotopy

RULE_NAMES = ["dantzig", "bland", "steepest-edge", "greatest-improvement", "random-index", "shadow-vertex"]


class UsageError(Exception):
    pass


def _load_lp(spec: str, bigm: bool = False):
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        table = tiny_lps()
        if name.startswith("km"):
            lp = km_instance(int(name[2:])).lp
        elif name in table:
            lp = table[name]
        else:
            raise UsageError(f"--lp: unknown builtin {name!r} (have {', '.join(sorted(table))}, kmD)")
    else:
        path = Path(spec)
        if not path.exists():
            raise UsageError(f"--lp: no such file {spec}")
        lp = lp_from_json(load_json(path))
    return big_m_transform(lp) if bigm else lp


def _load_circuit(spec: str) -> circ.Circuit:
    if spec.startswith("builtin:"):
        try:
            _, family, n = spec.split(":")
            return bundled_circuits(ns=(int(n),))[(family, int(n))]
        except (ValueError, KeyError):
            raise UsageError(f"--circuit: expected builtin:FAMILY:N with FAMILY in "
                             f"{', '.join(circ.CIRCUIT_FAMILIES)}") from None
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"--circuit: no such file {spec}")
    return circ.Circuit.from_json(load_json(path))


def _bits(s: str, flag: str) -> BitString:
    try:
        return BitString.parse(s)
    except ValueError:
        raise UsageError(f"{flag}: {s!r} is not a bit string") from None


def _basis(s: str):
    try:
        return basis_from_json(s)
    except ValueError:
        raise UsageError(f"--basis: cannot parse {s!r}") from None


def _emit(args, obj) -> None:
    if getattr(args, "format", "json") == "table" and isinstance(obj, dict):
        width = max((len(k) for k in obj), default=0)
        for k, v in obj.items():
            shown = v if isinstance(v, str) else json.dumps(v)
            print(f"{k:<{width}}  {shown}")
    else:
        print(json.dumps(obj, indent=2))


# -- subcommands -------------------------------------------------------------


def cmd_km_gen(args) -> int:
    km = km_instance(args.d, rat(args.eps))
    obj = lp_to_json(km.lp)
    sidecar = km.basis_map()
    if args.out:
        dump_json(obj, args.out)
        dump_json(sidecar, str(Path(args.out).with_suffix("")) + ".map.json")
    else:
        print(json.dumps({"lp": obj, "map": sidecar}, indent=2))
    return 0


def cmd_gray(args) -> int:
    if (args.rank is None) == (args.bits is None):
        raise UsageError("gray: give exactly one of --rank or --bits")
    x = gray_unrank(args.d, args.rank) if args.rank is not None else _bits(args.bits, "--bits")
    out = {"bits": str(x), "rank": gray_rank(x)}
    for name, fn in (("succ", gray_succ), ("pred", gray_pred)):
        try:
            out[name] = str(fn(x))
        except PivotLabError as exc:
            out[name] = exc.code
    _emit(args, out)
    return 0


def _run_trace(args):
    lp = _load_lp(args.lp, args.bigm)
    rule = get_rule(args.rule, args.seed)
    start = _basis(args.start) if getattr(args, "start", None) else None
    return lp, trace(rule, lp, args.cap, start=start)


def cmd_solve(args) -> int:
    lp, tr = _run_trace(args)
    out = {
        "rule": args.rule,
        "verdict": str(tr.verdict),
        "length": len(tr),
        "basis": basis_to_json(tr.last),
        "objective": scalar_to_json(tr.potentials[-1]) if args.rule != "shadow-vertex"
        else scalar_to_json(lp.tableau(tr.last).objective()),
    }
    if args.bigm and tr.verdict.kind == "Terminal":
        out["lp_verdict"] = original_verdict(lp, tr.verdict.classification, lp.tableau(tr.last).objective())
    _emit(args, out)
    return 0 if tr.verdict.kind != "RuleError" else 1


def cmd_trace(args) -> int:
    _, tr = _run_trace(args)
    lines = "".join(json.dumps(r) + "\n" for r in trace_records(tr))
    if args.out:
        Path(args.out).write_text(lines)
    else:
        sys.stdout.write(lines)
    return 0 if tr.verdict.kind != "RuleError" else 1


def cmd_member(args) -> int:
    lp = _load_lp(args.lp, args.bigm)
    rule = get_rule(args.rule, args.seed)
    print(path_member(rule, lp, _basis(args.basis), args.cap))
    return 0


def cmd_shadow_member(args) -> int:
    lp = _load_lp(args.lp)
    rule = get_rule("shadow-vertex")
    B0 = _basis(args.b0) if args.b0 else rule.initial_basis(lp)
    H = make_homotopy(lp, B0)
    iv = lambda_interval(lp, H, _basis(args.basis))
    out = {"member": not iv.empty, "B0": basis_to_json(B0)}
    if not iv.empty:
        out.update(lo=fmt(iv.lo), hi=fmt(iv.hi))
    _emit(args, out)
    return 0


def cmd_circuit_eval(args) -> int:
    C = _load_circuit(args.circuit)
    x = _bits(args.x, "--x")
    y = circ.eval_circuit(C, x)
    out = {"input": str(x), "output": str(y), "hamming": x.hamming(y)}
    _emit(args, out)
    return 0


def cmd_cpath_member(args) -> int:
    C = _load_circuit(args.circuit)
    print(circ.c_path_member(C, _bits(args.xc, "--xc"), args.cap))
    return 0


def cmd_reduce(args) -> int:
    ctx = circ.build_reduction(_load_circuit(args.circuit), _bits(args.xc, "--xc"))
    obj = reduction_to_json(ctx)
    if args.out:
        dump_json(obj, args.out)
    else:
        print(json.dumps(obj, indent=2))
    return 0


def _run_r(args):
    C = _load_circuit(args.circuit)
    ctx = circ.build_reduction(C, _bits(args.xc, "--xc"))
    return C, ctx, circ.r_path_member(args.variant, ctx, args.cap)


def cmd_r_simulate(args) -> int:
    _, ctx, run = _run_r(args)
    if args.log:
        with open(args.log, "w") as fh:
            for k, (s, obj) in enumerate(zip(run.states, run.objectives)):
                clause = run.steps[k - 1].clause if k else "start"
                fh.write(json.dumps({"step": k, "state": str(s), "clause": clause, "objective": fmt(obj)}) + "\n")
    out = {
        "variant": args.variant,
        "verdict": run.verdict,
        "visited_B_hat": run.visited,
        "steps": len(run) - 1,
        "ended": run.ended,
        "diagnostics": [{"step": k, "code": code, "detail": d} for k, code, d in run.diagnostics],
    }
    _emit(args, out)
    return 0


def cmd_verify_reduction(args) -> int:
    C = _load_circuit(args.circuit)
    targets = ([gray_unrank(C.n, k) for k in range(1, 1 << C.n)] if args.all
               else [_bits(args.xc, "--xc")])
    rows = []
    for xc in targets:
        ctx = circ.build_reduction(C, xc)
        run = circ.r_path_member(args.variant, ctx, args.cap)
        cp = circ.c_path_member(C, xc)
        rows.append({"x_c": str(xc), "c_path": cp, "r_path": run.verdict, "agree": cp == run.verdict})
    if args.all:
        _emit(args, {"variant": args.variant, "agree": all(r["agree"] for r in rows), "cases": rows})
    else:
        _emit(args, rows[0])
    return 0


def cmd_estimate_visit(args) -> int:
    lp = _load_lp(args.lp, args.bigm)
    est = estimate_visit(lp, _basis(args.basis), args.trials, args.seed, args.delta, exact=args.exact)
    out = {"p_hat": fmt(est.p_hat), "trials": est.trials, "delta": est.delta, "radius": est.radius}
    if args.f is not None and args.p is not None:
        out["verdict"] = decide_fp(est, rat(args.f), rat(args.p))
    if est.exact_p is not None:
        out["exact"] = fmt(est.exact_p)
    _emit(args, out)
    return 0


def cmd_oracle(args) -> int:
    lp = _load_lp(args.lp, args.bigm)
    res = brute_force_optimum(lp)
    out = {"kind": res.kind}
    if res.kind == "Optimal":
        out.update(value=scalar_to_json(res.value), basis=basis_to_json(res.basis))
    _emit(args, out)
    return 0


# -- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pivotlab", description="Exact simplex pivoting-rule laboratory.")
    p.add_argument("--format", choices=["json", "table"], default="json")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = add("km-gen", cmd_km_gen, "emit a Klee-Minty LP and its vertex map")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--eps", default="1/3")
    sp.add_argument("--out")

    sp = add("gray", cmd_gray, "Gray code rank/unrank/successor")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--rank", type=int)
    sp.add_argument("--bits")

    for name, fn, help_ in (("solve", cmd_solve, "run a rule to a terminal basis"),
                            ("trace", cmd_trace, "write a rule's path as JSON lines")):
        sp = add(name, fn, help_)
        sp.add_argument("--lp", required=True)
        sp.add_argument("--rule", choices=RULE_NAMES, default="dantzig")
        sp.add_argument("--bigm", action="store_true", help="apply the big-M transform first")
        sp.add_argument("--cap", type=int, default=100_000)
        sp.add_argument("--start")
        if name == "trace":
            sp.add_argument("--out")

    sp = add("member", cmd_member, "path problem by simulation")
    sp.add_argument("--lp", required=True)
    sp.add_argument("--rule", choices=RULE_NAMES, default="dantzig")
    sp.add_argument("--basis", required=True)
    sp.add_argument("--bigm", action="store_true")
    sp.add_argument("--cap", type=int, default=100_000)

    sp = add("shadow-member", cmd_shadow_member, "shadow vertex path membership via the lambda interval")
    sp.add_argument("--lp", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--b0")

    sp = add("circuit-eval", cmd_circuit_eval, "evaluate a circuit")
    sp.add_argument("--circuit", required=True)
    sp.add_argument("--x", required=True)

    sp = add("cpath-member", cmd_cpath_member, "is x_C on the path of C?")
    sp.add_argument("--circuit", required=True)
    sp.add_argument("--xc", required=True)
    sp.add_argument("--cap", type=int)

    sp = add("reduce", cmd_reduce, "build (LP, B0, B_hat) from (C, x_C)")
    sp.add_argument("--circuit", required=True)
    sp.add_argument("--xc", required=True)
    sp.add_argument("--out")

    for name, fn, help_ in (("r-simulate", cmd_r_simulate, "run rule R on the reduction"),
                            ("verify-reduction", cmd_verify_reduction, "compare C-PATH with rule R's path")):
        sp = add(name, fn, help_)
        sp.add_argument("--circuit", required=True)
        sp.add_argument("--xc")
        sp.add_argument("--variant", choices=["paper", "repaired"], default="repaired")
        sp.add_argument("--cap", type=int)
        if name == "r-simulate":
            sp.add_argument("--log")
        else:
            sp.add_argument("--all", action="store_true", help="every x_C other than 0^n")

    sp = add("estimate-visit", cmd_estimate_visit, "Monte Carlo visit probability of random index")
    sp.add_argument("--lp", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--delta", type=float, default=0.01)
    sp.add_argument("--f")
    sp.add_argument("--p")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--bigm", action="store_true")

    sp = add("oracle", cmd_oracle, "brute-force optimum over all bases")
    sp.add_argument("--lp", required=True)
    sp.add_argument("--bigm", action="store_true")
    return p


def run_command(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command in ("r-simulate",) and not args.xc:
            raise UsageError("r-simulate: --xc is required")
        if args.command == "verify-reduction" and not (args.xc or args.all):
            raise UsageError("verify-reduction: give --xc or --all")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PivotLabError as exc:
        print(f"error {exc.code}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
