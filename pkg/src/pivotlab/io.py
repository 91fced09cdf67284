"""JSON encodings.  Rationals are strings ``"p/q"`` (``"p"`` for integers)."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from pivotlab.circuits import Circuit, ReductionInstance
from pivotlab.exact import BigM, Matrix, fmt, rat
from pivotlab.lp import Basis, LinearProgram
from pivotlab.rules import PathTrace


def scalar_to_json(v) -> Any:
    if isinstance(v, BigM):
        return {"finite": fmt(v.finite), "M": fmt(v.coeff)}
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        return fmt(Fraction(v))
    raise TypeError(f"cannot encode {v!r}")


def bigm_from_json(v) -> BigM:
    if isinstance(v, dict):
        return BigM(rat(v.get("finite", "0")), rat(v.get("M", "0")))
    return BigM(rat(v))


def lp_to_json(lp: LinearProgram) -> dict:
    out = {
        "m": lp.m,
        "n": lp.n,
        "A": [[fmt(v) for v in row] for row in lp.A.rows],
        "b": [fmt(v) for v in lp.b],
        "c": [scalar_to_json(v) for v in lp.c],
    }
    if lp.names is not None:
        out["names"] = list(lp.names)
    if lp.start is not None:
        out["start"] = basis_to_json(lp.start)
    return out


def lp_from_json(obj: dict) -> LinearProgram:
    A = Matrix([[rat(v) for v in row] for row in obj["A"]])
    if "m" in obj and "n" in obj and (A.nrows, A.ncols) != (int(obj["m"]), int(obj["n"])):
        raise ValueError(f"declared size {obj['m']}x{obj['n']} does not match A ({A.nrows}x{A.ncols})")
    start = basis_from_json(obj["start"]) if obj.get("start") is not None else None
    return LinearProgram(
        A,
        tuple(rat(v) for v in obj["b"]),
        tuple(bigm_from_json(v) for v in obj["c"]),
        names=tuple(obj["names"]) if obj.get("names") is not None else None,
        start=start,
    )


def basis_to_json(B: Basis) -> list[int]:
    return list(B.cols)


def basis_from_json(obj) -> Basis:
    if isinstance(obj, str):
        obj = [int(s) for s in obj.replace("{", "").replace("}", "").split(",") if s.strip()]
    return Basis(tuple(int(j) for j in obj))


def trace_records(tr: PathTrace) -> list[dict]:
    """One record per step plus a final verdict record."""
    recs = []
    for k, (B, pot, e, l) in enumerate(zip(tr.bases, tr.potentials, tr.entering, tr.leaving)):
        recs.append({
            "step": k,
            "basis": basis_to_json(B),
            "potential": scalar_to_json(pot),
            "entering": e,
            "leaving": l,
        })
    final = {"verdict": tr.verdict.kind, "detail": str(tr.verdict), "length": len(tr)}
    if tr.verdict.classification is not None:
        final["classification"] = tr.verdict.classification.kind
        final["witness"] = tr.verdict.classification.witness
    if tr.verdict.code is not None:
        final["code"] = tr.verdict.code
    recs.append(final)
    return recs


def trace_to_jsonl(tr: PathTrace) -> str:
    return "".join(json.dumps(r) + "\n" for r in trace_records(tr))


def reduction_to_json(ctx: ReductionInstance) -> dict:
    return {
        "n": ctx.n,
        "x_c": str(ctx.x_c),
        "x_g": str(ctx.x_g),
        "circuit": ctx.circuit.to_json(),
        "lp": lp_to_json(ctx.km.lp),
        "B0": basis_to_json(ctx.B0),
        "B_hat": basis_to_json(ctx.B_hat),
        "B_hat_bits": str(ctx.target),
    }


def load_json(path) -> Any:
    return json.loads(Path(path).read_text())


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def load_circuit(path) -> Circuit:
    return Circuit.from_json(load_json(path))
