"""Bundled instances: tiny hand LPs, Klee-Minty cubes, shipped circuits, random generators."""

from __future__ import annotations

import random
from collections.abc import Iterator

from pivotlab.circuits import CIRCUIT_FAMILIES, Circuit
from pivotlab.errors import RankDeficient
from pivotlab.kleeminty import KleeMintyInstance, km_instance
from pivotlab.lp import Basis, LinearProgram, make_lp
from pivotlab.oracle import is_nondegenerate


def tiny_lps() -> dict[str, LinearProgram]:
    return {
        # max x1 s.t. x1 + x2 = 1
        "simplex-segment": make_lp([[1, 1]], [1], [1, 0]),
        # max x2 s.t. x1 - x2 = 0: unbounded
        "ray": make_lp([[1, -1]], [0], [0, 1]),
        # max x1 s.t. x1 + x2 = -1: infeasible
        "negative-rhs": make_lp([[1, 1]], [-1], [1, 0]),
        "two-branch": two_branch_lp(),
        "unique-path": unique_path_lp(),
        "small-box": make_lp([[1, 0, 1, 0], [0, 1, 0, 1]], [2, 3], [3, 2, 0, 0]),
    }


def two_branch_lp() -> LinearProgram:
    """``max x1 + x2``, ``s1 + x1 = 1``, ``s2 + x2 = 1`` with the slacks as start.

    J(B0) has two columns and each leads to a different intermediate basis
    before both meet at the optimum.
    """
    lp = make_lp([[1, 0, 1, 0], [0, 1, 0, 1]], [1, 1], [0, 0, 1, 1], names=("s1", "s2", "x1", "x2"))
    return LinearProgram(lp.A, lp.b, lp.c, names=lp.names, start=Basis.of(1, 2))


def unique_path_lp() -> LinearProgram:
    """``max x1`` with slack start; J(B) has one column at every step."""
    lp = make_lp([[1, 1, 0], [0, 1, 1]], [1, 2], [0, 1, 0], names=("s1", "x1", "s2"))
    return LinearProgram(lp.A, lp.b, lp.c, names=lp.names, start=Basis.of(1, 3))


def klee_minty(d: int, eps="1/3") -> KleeMintyInstance:
    return km_instance(d, eps)


def circuits(ns=(3, 4, 5)) -> dict[tuple[str, int], Circuit]:
    return {(name, n): make(n) for name, make in CIRCUIT_FAMILIES.items() for n in ns}


def random_lp(rng: random.Random, m: int, n: int, span: int = 4) -> LinearProgram:
    while True:
        A = [[rng.randint(-span, span) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-6, 6) for _ in range(m)]
        c = [rng.randint(-5, 5) for _ in range(n)]
        try:
            return make_lp(A, b, c)
        except RankDeficient:
            continue


def random_nondegenerate_lps(seed: int, count: int, max_m: int = 6, max_n: int = 12,
                             max_extra: int = 6) -> Iterator[LinearProgram]:
    """Seeded stream of full-rank programs whose basic solutions never have a zero."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        m = rng.randint(1, max_m)
        n = rng.randint(m, min(max_n, m + max_extra))
        lp = random_lp(rng, m, n)
        if is_nondegenerate(lp):
            made += 1
            yield lp
