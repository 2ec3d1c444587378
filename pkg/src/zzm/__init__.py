"""Zhegalkin zebra motives: tilings from zebra polynomials, their superpotentials,
perfect matchings, Poisson forms, weight realizations and Jacobi matrices.

All core computations are exact (integers and ``fractions.Fraction``).
"""

__version__ = "0.1.0"

from .errors import (
    CapExceededError,
    DegenerateError,
    InvariantViolation,
    LatticeError,
    PatchTooSmallError,
    PolynomialSyntaxError,
    PreconditionError,
    ZZMError,
)
from .zebra import ZebraPolynomial, evaluate, parse_polynomial
from .lattice import LatticeBasis, lattice_from_frequencies, reduced_basis
from .arrangement import automorphism_lattice, extract_edges, tiling
from .superpotential import (
    Motive,
    Superpotential,
    build_superpotential,
    isomorphic,
    motive_from_json,
    motive_from_polynomial,
    motive_to_json,
)
from .matchings import WeightFunction, enumerate_matchings, is_dimer_complete, weight_function
from .homology import kernel_checks, poisson_forms, rho_matrices
from .realization import (
    WeightRealization,
    newton_embedding,
    quadrangles,
    realization_lattice,
    search_weight_realization,
    validate_weight_realization,
)
from .jacobi import astar_matrix, check_jacobi_relations, master_binomials
from .render import Scene, render

__all__ = [
    "__version__",
    "ZZMError", "PolynomialSyntaxError", "DegenerateError", "PatchTooSmallError", "LatticeError",
    "PreconditionError", "InvariantViolation", "CapExceededError",
    "ZebraPolynomial", "parse_polynomial", "evaluate",
    "LatticeBasis", "lattice_from_frequencies", "reduced_basis",
    "extract_edges", "automorphism_lattice", "tiling",
    "Superpotential", "Motive", "build_superpotential", "motive_from_polynomial",
    "motive_to_json", "motive_from_json", "isomorphic",
    "WeightFunction", "weight_function", "enumerate_matchings", "is_dimer_complete",
    "rho_matrices", "poisson_forms", "kernel_checks",
    "WeightRealization", "validate_weight_realization", "quadrangles", "realization_lattice",
    "newton_embedding", "search_weight_realization",
    "astar_matrix", "check_jacobi_relations", "master_binomials",
    "Scene", "render",
]
