"""Brute-force LP oracle by enumerating every basis."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from pivotlab.errors import SingularMatrix, TooLarge
from pivotlab.exact import BigM, Vector, solve_square
from pivotlab.lp import Basis, LinearProgram, classify_basis

LIMIT = 10**6


@dataclass(frozen=True)
class OracleResult:
    kind: str  # Optimal, Unbounded, Infeasible
    value: Optional[BigM] = None
    basis: Optional[Basis] = None

    def __str__(self) -> str:
        if self.kind == "Optimal":
            return f"Optimal({self.value}, {self.basis})"
        return self.kind


def _parallel_classes(lp: LinearProgram) -> list[list[tuple[int, Fraction]]]:
    # Columns that are scalar multiples of one another: (column, scale vs representative).
    classes: list[list[tuple[int, Fraction]]] = []
    reps: list[tuple[int, Vector]] = []
    for j in range(lp.n):
        col = lp.A.column(j)
        lead = next((i for i, v in enumerate(col) if v), None)
        placed = False
        if lead is not None:
            for k, (rj, rcol) in enumerate(reps):
                if rcol[lead]:
                    s = col[lead] / rcol[lead]
                    if all(a == s * b for a, b in zip(col, rcol)):
                        classes[k].append((j, s))
                        placed = True
                        break
        if not placed:
            reps.append((j, col))
            classes.append([(j, Fraction(1))])
    return classes


def basic_solutions(lp: LinearProgram, feasible_only: bool = False) -> Iterator[tuple[Basis, Vector]]:
    """Every nonsingular basis with its basic solution.

    Parallel columns are solved once per class combination and rescaled.
    """
    classes = _parallel_classes(lp)
    m = lp.m
    for combo in itertools.combinations(range(len(classes)), m):
        reps = [classes[k][0][0] for k in combo]
        try:
            x = solve_square(lp.A.columns(reps), lp.b)
        except SingularMatrix:
            continue
        options = []
        for k, v in zip(combo, x):
            opts = [(j, v / s) for j, s in classes[k] if not feasible_only or v / s >= 0]
            options.append(opts)
        for choice in itertools.product(*options):
            pairs = sorted(choice)
            yield Basis(tuple(j + 1 for j, _ in pairs)), tuple(v for _, v in pairs)


def count_bases(lp: LinearProgram) -> int:
    return math.comb(lp.n, lp.m)


def is_nondegenerate(lp: LinearProgram) -> bool:
    """No basic solution has a zero component."""
    return all(all(v != 0 for v in x) for _, x in basic_solutions(lp))


def brute_force_optimum(lp: LinearProgram, limit: int = LIMIT) -> OracleResult:
    if count_bases(lp) > limit:
        raise TooLarge(f"C({lp.n}, {lp.m}) bases exceeds the limit {limit}")
    feasible: list[tuple[BigM, Basis]] = []
    for B, x in basic_solutions(lp, feasible_only=True):
        val = BigM(0, 0)
        for j, v in zip(B.cols, x):
            val = val + lp.c[j - 1] * v
        feasible.append((val, B))
    if not feasible:
        return OracleResult("Infeasible")
    best = max(v for v, _ in feasible)
    for v, B in sorted((p for p in feasible if p[0] == best), key=lambda p: p[1]):
        if classify_basis(lp, B).kind == "Optimal":
            return OracleResult("Optimal", best, B)
    return OracleResult("Unbounded")


def unbounded_certificate(lp: LinearProgram) -> Optional[tuple[Basis, int]]:
    """A feasible basis together with a column proving unboundedness, if one exists."""
    for B, _ in basic_solutions(lp, feasible_only=True):
        cls = classify_basis(lp, B)
        if cls.kind == "Unbounded":
            return B, cls.witness
    return None
