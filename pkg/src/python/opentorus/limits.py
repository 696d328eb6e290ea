"""
Numerical tolerances and hard limits shared by the library and the tools.
"""

from __future__ import annotations

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

# Largest |n| accepted by IntMatrix2.power.
MAX_MATRIX_POWER = 62

# Terms allowed in the result of one twisted convolution.
SUPPORT_CAP = 1_000_000

COCYCLE_TOL = 1e-12
ELEMENT_TOL = 1e-12
ASSOCIATIVITY_TOL = 1e-11
REPRESENTATION_TOL = 1e-11
HOMOMORPHISM_TOL = 1e-10
NUMERIC_TRACE_TOL = 1e-10
PROJECTION_TOL = 1e-9
SELF_ADJOINT_TOL = 1e-12
RIEFFEL_TRACE_TOL = 1e-5

MIN_RIEFFEL_GRID = 256

DEFAULT_SEED = 0
DEFAULT_REVERSOR_BOUND = 40
DEFAULT_GRID = 4096


def tolerance_table() -> dict[str, float]:
    """Tolerances embedded in every JSON report."""
    return {
        "cocycle": COCYCLE_TOL,
        "element": ELEMENT_TOL,
        "associativity": ASSOCIATIVITY_TOL,
        "representation": REPRESENTATION_TOL,
        "homomorphism": HOMOMORPHISM_TOL,
        "numeric_trace": NUMERIC_TRACE_TOL,
        "projection": PROJECTION_TOL,
        "self_adjoint": SELF_ADJOINT_TOL,
        "rieffel_trace": RIEFFEL_TRACE_TOL,
    }
