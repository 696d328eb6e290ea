"""
K-theory of the crossed products A_theta x|_A Z.

Everything here is symbolic bookkeeping on top of the Smith normal form of
I - A^-1: the Pimsner-Voiculescu sequence gives the ranks and torsion, the
generators and tracial pairing are fixed by the trace class of A. The
isomorphism verdicts only ever certify an isomorphism in the two cases
where one is known: a verified reversor, and trace 2 at theta = 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

import numpy as np

from .cocycle import (
    Angle,
    SemidirectGroup,
    cohomologous_witness_check,
    crossed_cocycle,
    pullback,
    reversor_automorphism,
)
from .errors import HypothesisError
from .intmat import (
    IDENTITY,
    IntMatrix2,
    SNFDecomposition,
    TraceClass,
    equivalent_matrices,
    format_matrix,
    reversing_symmetry,
    smith_normal_form,
    trace_class,
)
from .limits import COCYCLE_TOL, DEFAULT_REVERSOR_BOUND, DEFAULT_SEED
from .rotrep import theta_zero_class

PairingValue = Union[Fraction, float]


class Generator(str, enum.Enum):
    UNIT = "[1]_0"
    RIEFFEL = "[iota(p_theta)]_0"
    EXTRA = "[P_A]_0"
    # theta = 0: formal difference class in M_2(A_0).
    BOTT = "[iota(p_0)]_0"


_CLASS_HYPOTHESIS = {
    TraceClass.FINITE_ORDER: "finite order",
    TraceClass.IDENTITY: "finite order (A = I)",
    TraceClass.MINUS_IDENTITY: "finite order (A = -I)",
}


def _infinite_order_class(a: IntMatrix2) -> TraceClass:
    tc = trace_class(a)
    if not tc.infinite_order:
        raise HypothesisError(
            f"matrix {format_matrix(a)} has {_CLASS_HYPOTHESIS[tc]}; "
            "K-theory is only computed for A of infinite order"
        )
    return tc


@dataclass(frozen=True)
class PVData:
    """Kernel and cokernel of I - A^-1 on K1(A_theta) = Z^2."""

    matrix: IntMatrix2
    snf: SNFDecomposition
    coker_free_rank: int
    coker_torsion: tuple[int, ...]
    ker_rank: int
    degenerate: bool

    def coker_group(self) -> str:
        return group_string(self.coker_free_rank, self.coker_torsion)

    def ker_group(self) -> str:
        return group_string(self.ker_rank, ())


def pv_data(a: IntMatrix2) -> PVData:
    det = a.det()
    if det != 1:
        raise HypothesisError(f"matrix {format_matrix(a)} is not in SL(2,Z) (det={det})")
    m = IDENTITY - a.inverse()
    snf = smith_normal_form(m)
    zeros = sum(1 for h in snf.diag if h == 0)
    return PVData(
        matrix=m,
        snf=snf,
        coker_free_rank=zeros,
        coker_torsion=tuple(h for h in snf.diag if h > 1),
        ker_rank=zeros,
        degenerate=a == IDENTITY,
    )


def group_string(rank: int, torsion: tuple[int, ...]) -> str:
    """Render Z^r + Z_h1 + ... ; the trivial group is "0"."""
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts.extend(f"Z_{h}" for h in torsion)
    return " + ".join(parts) if parts else "0"


def pairing_string(value: PairingValue) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return repr(value)


@dataclass(frozen=True)
class KInvariants:
    theta: Angle
    matrix: IntMatrix2
    trace_class: TraceClass
    k0_rank: int
    k1_rank: int
    k1_torsion: tuple[int, ...]
    k0_generators: tuple[Generator, ...]
    trace_pairing: tuple[PairingValue, ...]
    snf: tuple[int, int]
    notes: tuple[str, ...] = field(default=(), compare=False)

    def k0_group(self) -> str:
        return group_string(self.k0_rank, ())

    def k1_group(self) -> str:
        return group_string(self.k1_rank, self.k1_torsion)


def tracial_range(theta: Angle) -> str:
    """The subgroup Z + theta Z of R hit by the pairing."""
    if not theta.exact:
        return "Z + theta Z (dense)"
    q = theta.q
    return "Z" if q == 1 else f"(1/{q})Z"


def k_invariants(theta: Angle, a: IntMatrix2) -> KInvariants:
    tc = _infinite_order_class(a)
    pv = pv_data(a)
    notes: list[str] = []
    if tc is TraceClass.HYPERBOLIC and a.trace() == -2:
        notes.append("trace -2 with A != -I is treated as the hyperbolic case")

    theta_value: PairingValue = theta.residue if theta.exact else theta.as_float() % 1.0
    if not theta.exact:
        notes.append("float angle: pairing is approximate")
    if theta.exact and theta.residue == 0:
        gens = [Generator.UNIT, Generator.BOTT]
        pairing: list[PairingValue] = [Fraction(1), Fraction(0)]
        notes.append("theta = 0: second generator is a formal difference class in M_2(A_0)")
    else:
        gens = [Generator.UNIT, Generator.RIEFFEL]
        pairing = [Fraction(1), theta_value]

    if tc is TraceClass.UNIPOTENT_PLUS:
        gens.append(Generator.EXTRA)
        pairing.append(Fraction(1))
        notes.append("[P_A]_0 is reported as an opaque class of trace 1")

    notes.append(f"tracial range {tracial_range(theta)}")
    inv = KInvariants(
        theta=theta,
        matrix=a,
        trace_class=tc,
        k0_rank=2 + pv.ker_rank,
        k1_rank=2 + pv.coker_free_rank,
        k1_torsion=pv.coker_torsion,
        k0_generators=tuple(gens),
        trace_pairing=tuple(pairing),
        snf=pv.snf.diag,
        notes=tuple(notes),
    )
    if len(inv.k0_generators) != inv.k0_rank:
        raise RuntimeError(f"generator count disagrees with K0 rank for {format_matrix(a)}")
    return inv


def invariants_report(inv: KInvariants) -> dict[str, Any]:
    report: dict[str, Any] = {
        "theta": str(inv.theta),
        "matrix": format_matrix(inv.matrix),
        "trace_class": inv.trace_class.value,
        "K0": {
            "rank": inv.k0_rank,
            "group": inv.k0_group(),
            "generators": [g.value for g in inv.k0_generators],
            "pairing": [pairing_string(v) for v in inv.trace_pairing],
        },
        "K1": {
            "rank": inv.k1_rank,
            "group": inv.k1_group(),
            "torsion": list(inv.k1_torsion),
        },
        "snf": list(inv.snf),
        "notes": list(inv.notes),
    }
    if inv.theta.exact and inv.theta.residue == 0:
        report["K0"]["theta_zero_class"] = theta_zero_class()
    return report


@dataclass(frozen=True)
class Verdict:
    """
    Distinguished(reason) or NotDistinguished.

    NotDistinguished never claims an isomorphism unless ``certified`` is set.
    """

    distinguished: bool
    reason: str = ""
    certified: bool = False
    detail: str = ""

    @classmethod
    def by(cls, reason: str, detail: str = "") -> "Verdict":
        return cls(True, reason, False, detail)

    @classmethod
    def undecided(cls, detail: str = "", certified: bool = False) -> "Verdict":
        return cls(False, "", certified, detail)

    @property
    def label(self) -> str:
        return f"Distinguished({self.reason})" if self.distinguished else "NotDistinguished"

    def to_json(self) -> dict[str, Any]:
        return {
            "verdict": "Distinguished" if self.distinguished else "NotDistinguished",
            "reason": self.reason,
            "certified_isomorphic": self.certified,
            "detail": self.detail,
        }


def _require_hyperbolic(a: IntMatrix2) -> None:
    tc = trace_class(a)
    if tc is not TraceClass.HYPERBOLIC:
        raise HypothesisError(
            f"matrix {format_matrix(a)} is {tc.value}; the obstruction needs trace outside {{0, +-1, 2}}"
        )


def isomorphism_obstruction(theta: Angle, a: IntMatrix2, theta2: Angle, b: IntMatrix2) -> Verdict:
    _require_hyperbolic(a)
    _require_hyperbolic(b)
    if not (theta.exact and theta2.exact):
        return Verdict.undecided("float angle: angles are not compared")
    if not theta.congruent_up_to_sign(theta2):
        return Verdict.by("angle", f"{theta} is not congruent to +-{theta2} mod Z")
    if not equivalent_matrices(IDENTITY - a.inverse(), IDENTITY - b.inverse()):
        return Verdict.by("K1", "I - A^-1 and I - B^-1 have different Smith normal forms")
    return Verdict.undecided("angles and K1 agree; no isomorphism is claimed")


def trace2_theta0_isomorphic(a: IntMatrix2, b: IntMatrix2) -> bool:
    if trace_class(a) is not TraceClass.UNIPOTENT_PLUS:
        raise HypothesisError(f"matrix {format_matrix(a)} is not trace 2 with A != I")
    if trace_class(b) is not TraceClass.UNIPOTENT_PLUS:
        return False
    return equivalent_matrices(IDENTITY - a.inverse(), IDENTITY - b.inverse())


@dataclass(frozen=True)
class ReversorStatement:
    reversor: Optional[IntMatrix2]
    samples: int
    max_deviation: float
    bound: int

    @property
    def certified(self) -> bool:
        return self.reversor is not None and self.max_deviation <= COCYCLE_TOL

    @property
    def statement(self) -> str:
        if self.reversor is None:
            return "no reversor found within bound"
        if not self.certified:
            return "reversor found but the cocycle identity failed"
        return "for this A, theta -> -theta yields isomorphic crossed products"

    def to_json(self) -> dict[str, Any]:
        return {
            "statement": self.statement,
            "certified": self.certified,
            "reversor": None if self.reversor is None else format_matrix(self.reversor),
            "bound": self.bound,
            "samples": self.samples,
            "max_deviation": self.max_deviation,
        }


def reversor_angle_symmetry(
    theta: Angle,
    a: IntMatrix2,
    bound: int = DEFAULT_REVERSOR_BOUND,
    rng: Optional[np.random.Generator] = None,
    samples: int = 200,
) -> ReversorStatement:
    """
    Search a determinant -1 reversor B and check w~_theta = w~_-theta o Phi_B
    on ``samples`` random pairs before certifying the angle flip.
    """
    _require_hyperbolic(a)
    b = reversing_symmetry(a, bound)
    if b is None:
        return ReversorStatement(None, 0, 0.0, bound)
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
    phi = reversor_automorphism(a, b, rng)
    group = SemidirectGroup(a)
    left = group.sample(rng, samples)
    right = group.sample(rng, samples)
    flipped = pullback(crossed_cocycle(-theta, a), phi, group, left)
    check = cohomologous_witness_check(
        crossed_cocycle(theta, a), flipped, lambda s: 1 + 0j, group, zip(left, right)
    )
    return ReversorStatement(b, check.samples, check.max_deviation, bound)


def classify_pair(
    theta: Angle,
    a: IntMatrix2,
    theta2: Angle,
    b: IntMatrix2,
    bound: int = DEFAULT_REVERSOR_BOUND,
    rng: Optional[np.random.Generator] = None,
) -> Verdict:
    """Route a pair to the verdict its trace classes allow."""
    ta = _infinite_order_class(a)
    tb = _infinite_order_class(b)

    if ta is TraceClass.HYPERBOLIC and tb is TraceClass.HYPERBOLIC:
        verdict = isomorphism_obstruction(theta, a, theta2, b)
        if verdict.distinguished or a != b or not (theta.exact and theta2.exact):
            return verdict
        if theta.congruent(theta2):
            return Verdict.undecided("same matrix and angle", certified=True)
        rev = reversor_angle_symmetry(theta, a, bound, rng)
        if rev.certified:
            return Verdict.undecided(rev.statement, certified=True)
        return Verdict.undecided(f"{verdict.detail}; {rev.statement}")

    if ta is not tb:
        return Verdict.by("K0", f"K0 ranks differ ({ta.value} vs {tb.value})")

    h1_a = pv_data(a).snf.h1
    h1_b = pv_data(b).snf.h1
    if theta.exact and theta2.exact and theta.residue == 0 and theta2.residue == 0:
        if trace2_theta0_isomorphic(a, b):
            return Verdict.undecided("trace 2 at theta = 0 with equal Smith normal forms", certified=True)
        return Verdict.by("K1", f"trace 2 at theta = 0 with h1 {h1_a} vs {h1_b}")
    if h1_a != h1_b:
        return Verdict.by("K1", f"K1 torsion differs (h1 {h1_a} vs {h1_b})")
    return Verdict.undecided("trace 2 invariants agree; no isomorphism is claimed")
