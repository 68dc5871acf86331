"""Exact verification of the Haar property for dihedral group frames."""

from .cyclotomic import CycloNum, CyclotomicField, cyclotomic_polynomial, field
from .dihedral import GroupElement, Matrix, Representation, dft_matrix, elements
from .erasure import exhaustive_erasure_audit, frame_bounds
from .literals import format_scalar, format_vector, parse_scalar, parse_vector
from .minors import (
    EXACT,
    FLOAT,
    HaarCertificate,
    chebotarev_check,
    check_haar,
    det_exact,
    det_float,
    even_dependence_certificate,
    orbit_matrix,
    pair_independence_tau,
)
from .sympoly import MultiPoly, det_laplace, prime_case_audit, symbolic_orbit_matrix

__all__ = [
    "EXACT",
    "FLOAT",
    "CycloNum",
    "CyclotomicField",
    "GroupElement",
    "HaarCertificate",
    "Matrix",
    "MultiPoly",
    "Representation",
    "chebotarev_check",
    "check_haar",
    "cyclotomic_polynomial",
    "det_exact",
    "det_float",
    "det_laplace",
    "dft_matrix",
    "elements",
    "even_dependence_certificate",
    "exhaustive_erasure_audit",
    "field",
    "format_scalar",
    "format_vector",
    "frame_bounds",
    "orbit_matrix",
    "pair_independence_tau",
    "parse_scalar",
    "parse_vector",
    "prime_case_audit",
    "symbolic_orbit_matrix",
]

__version__ = "0.1.0"
