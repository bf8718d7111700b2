"""Exact and numeric tools for polynomial correspondences that are maps of d-tuples."""

__version__ = "0.1.0"

from .correspondence import (  # noqa: E402
    Classification,
    Correspondence,
    Factorization,
    FractionalMap,
    Mobius,
    NotMapOfTuples,
    PerfectPower,
    Rank2,
    SymmetryReport,
    check_symm_factor_condition,
    check_timerev_factor_condition,
    classify,
    compose,
    conjugate_coeffs,
    factorize,
    mobius_postcompose,
    new_correspondence,
    swap_variables,
    symmetry_report,
)
from .gaussian import GaussianRational  # noqa: E402
from .linalg import ExactMatrix, rank_exact, row_basis_decompose  # noqa: E402
from .oracle import (  # noqa: E402
    INF,
    chordal_distance,
    d_tuple_witness,
    fiber_x,
    fiber_y,
    verify_factorization,
    verify_map_of_tuples,
)
from .parsing import parse_fractional_map, parse_polynomial  # noqa: E402
from .poly import BiPoly, UniPoly, perfect_power_extract  # noqa: E402
from .serialize import load_matrix, save_matrix  # noqa: E402

__all__ = [
    "BiPoly",
    "Classification",
    "Correspondence",
    "ExactMatrix",
    "Factorization",
    "FractionalMap",
    "GaussianRational",
    "INF",
    "Mobius",
    "NotMapOfTuples",
    "PerfectPower",
    "Rank2",
    "SymmetryReport",
    "UniPoly",
    "check_symm_factor_condition",
    "check_timerev_factor_condition",
    "chordal_distance",
    "classify",
    "compose",
    "conjugate_coeffs",
    "d_tuple_witness",
    "factorize",
    "fiber_x",
    "fiber_y",
    "load_matrix",
    "mobius_postcompose",
    "new_correspondence",
    "parse_fractional_map",
    "parse_polynomial",
    "perfect_power_extract",
    "rank_exact",
    "row_basis_decompose",
    "save_matrix",
    "swap_variables",
    "symmetry_report",
    "verify_factorization",
    "verify_map_of_tuples",
]
