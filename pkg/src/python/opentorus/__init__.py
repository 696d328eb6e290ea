"""
OpenTorus: K-theory invariants of crossed products of rotation algebras by
SL(2,Z), with small numerical checks of the algebra underneath them.
"""

from __future__ import annotations

import platform
from importlib import metadata

import numpy as _np

from .cocycle import Angle, GroupElt, omega, omega_tilde
from .errors import (
    AutomorphismError,
    ContextMismatchError,
    HypothesisError,
    IntRangeError,
    ParseError,
    SupportLimitError,
    TorusError,
)
from .intmat import (
    IntMatrix2,
    SNFDecomposition,
    TraceClass,
    center_rank,
    equivalent_matrices,
    format_matrix,
    parse_matrix,
    reversing_symmetry,
    smith_normal_form,
    trace2_normal_form,
    trace_class,
)
from .ktheory import (
    KInvariants,
    Verdict,
    classify_pair,
    isomorphism_obstruction,
    k_invariants,
    pv_data,
    reversor_angle_symmetry,
    trace2_theta0_isomorphic,
)
from .twistalg import AlgElement, TwistedAlgebra, crossed_product_algebra, rotation_algebra

try:
    __version__ = metadata.version("opentorus")
except metadata.PackageNotFoundError:
    __version__ = "0.0.0"


def info_lines() -> tuple[str, str]:
    """Build-info header printed by the command-line tools."""
    return (
        f"opentorus {__version__}",
        f"python {platform.python_version()} numpy {_np.__version__}",
    )


__all__ = [
    "AlgElement",
    "Angle",
    "AutomorphismError",
    "ContextMismatchError",
    "GroupElt",
    "HypothesisError",
    "IntMatrix2",
    "IntRangeError",
    "KInvariants",
    "ParseError",
    "SNFDecomposition",
    "SupportLimitError",
    "TorusError",
    "TraceClass",
    "TwistedAlgebra",
    "Verdict",
    "center_rank",
    "classify_pair",
    "crossed_product_algebra",
    "equivalent_matrices",
    "format_matrix",
    "info_lines",
    "isomorphism_obstruction",
    "k_invariants",
    "omega",
    "omega_tilde",
    "parse_matrix",
    "pv_data",
    "reversing_symmetry",
    "reversor_angle_symmetry",
    "rotation_algebra",
    "smith_normal_form",
    "trace2_normal_form",
    "trace2_theta0_isomorphic",
    "trace_class",
]
