"""Exact laboratory for simplex pivoting rules and their path problems."""

from pivotlab.circuits import (
    Circuit,
    ReductionInstance,
    RuleR,
    build_reduction,
    c_path_member,
    c_step,
    eval_circuit,
    r_path_member,
    rule_r_next,
)
from pivotlab.corpus import random_nondegenerate_lps, tiny_lps
from pivotlab.exact import BigM, Matrix, Rational, bigm_compare, rational_arith, solve_square
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
from pivotlab.lp import (
    Basis,
    Classification,
    LinearProgram,
    basic_solution,
    big_m_transform,
    classify_basis,
    make_lp,
    pivot,
    reduced_costs,
)
from pivotlab.oracle import OracleResult, brute_force_optimum
from pivotlab.randomized import VisitEstimate, decide_fp, estimate_visit, exact_visit_probability
from pivotlab.rules import (
    Bland,
    Dantzig,
    GreatestImprovement,
    PathTrace,
    RandomIndex,
    SteepestEdge,
    entering_column,
    initial_basis,
    next_basis,
    original_verdict,
    path_member,
    trace,
)
from pivotlab.shadow import (
    LambdaInterval,
    ShadowHomotopy,
    ShadowVertex,
    lambda_interval,
    make_homotopy,
    shadow_member,
    shadow_next,
    shadow_path,
)

__version__ = "0.1.0"
