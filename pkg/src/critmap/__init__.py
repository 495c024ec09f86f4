"""Exact verification of corank-one Jacobians of the roots-to-critical-values map."""

from .jacobian import (
    JacobianT,
    PropositionReport,
    StructureReport,
    build_T,
    corank_check,
    definition_crosscheck,
    evaluate_T,
    principal_minor_det,
    structural_checks,
    verify_proposition,
)
from .matrix import RingMatrix, bareiss_determinant, determinant, rational_rank, submatrix
from .multiplicity import (
    BulletReport,
    ConjectureReport,
    FactorizationReport,
    MultiplicityProfile,
    bullet_checks,
    build_M,
    conjecture_check,
    enumerate_minors,
    factor_minor,
)
from .poly import (
    SparsePoly,
    deleted_product,
    discriminant_square_product,
    divide_linear_difference,
    parse_rational,
)
from .sampling import sample_distinct_roots

__version__ = "0.1.0"
