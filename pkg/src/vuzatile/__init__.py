"""Aperiodic tiling complements of rhythms in Z_n through a binary linear model."""
from .csa import ExistsResult, TilingClass, TilingEnumeration, exists_aperiodic_complement, run_csa
from .model import (
    ConstraintSystem,
    LinearRow,
    Variable,
    build_master_problem,
    cuts_for_solution,
    export_lp,
    orbit_cut,
)
from .oracle import enumerate_complements_bruteforce, verify_tiling
from .polynomial import (
    CMReport,
    GroupOrderClass,
    IntPolynomial,
    char_poly,
    classify_order,
    cm_report,
    cyclotomic,
    divides,
    product_mod_cycle,
)
from .rhythm import (
    AFFINE,
    TRANSLATION,
    MaximalDivisors,
    Rhythm,
    affine_image,
    canonical_representative,
    is_aperiodic,
    is_periodic_mod,
    maximal_divisors,
    orbit_index_sets,
)
from .solver import SearchStats, SolveResult, solve, solve_with_cuts

__version__ = "0.1.0"
