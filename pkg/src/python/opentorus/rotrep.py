"""
Finite-dimensional representations of the rational rotation algebra.

For theta = p/q the fibre representations pi_z send U1 to z1 W1 and U2 to
z2 W2, with W1 the cyclic shift and W2 the clock. The Rieffel projection is
built from diagonal functional calculus on z2 W2, whose eigenvalue angles are
t_k = arg(z2)/2pi + k p/q (mod 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .cocycle import Angle, phase
from .errors import ContextMismatchError, HypothesisError
from .intmat import Vec2
from .limits import MIN_RIEFFEL_GRID, PROJECTION_TOL, SELF_ADJOINT_TOL
from .twistalg import AlgElement

RationalAngle = Angle


def _require_rational(theta: Angle) -> None:
    if not theta.exact:
        raise HypothesisError("finite-dimensional representations need a rational angle")


@dataclass(frozen=True)
class RepPoint:
    z1: complex
    z2: complex

    def __post_init__(self) -> None:
        for name in ("z1", "z2"):
            z = complex(getattr(self, name))
            if abs(abs(z) - 1.0) > 1e-12:
                raise HypothesisError(f"{name}={z} is not on the unit circle")
            object.__setattr__(self, name, z)

    @classmethod
    def from_angles(cls, s1: float, s2: float) -> "RepPoint":
        """Point (e^{2 pi i s1}, e^{2 pi i s2})."""
        return cls(cmath.exp(2j * math.pi * s1), cmath.exp(2j * math.pi * s2))


ORIGIN = RepPoint(1 + 0j, 1 + 0j)


def random_rep_point(rng: np.random.Generator) -> RepPoint:
    s1, s2 = rng.random(2)
    return RepPoint.from_angles(float(s1), float(s2))


def clock_shift(theta: RationalAngle) -> tuple[np.ndarray, np.ndarray]:
    """(W1, W2) with W1 e_k = e_{k+1} and W2 = diag(zeta^k), so W2 W1 = zeta W1 W2."""
    _require_rational(theta)
    p, q = theta.p, theta.q
    w1 = np.zeros((q, q), dtype=complex)
    for k in range(q):
        w1[(k + 1) % q, k] = 1
    w2 = np.diag([phase(2 * p * k, q) for k in range(q)]).astype(complex)
    return w1, w2


def rep(theta: RationalAngle, z: RepPoint, x: Vec2) -> np.ndarray:
    """pi_z(delta_x) = z1^x1 z2^x2 e^{i pi theta x1 x2} W1^x1 W2^x2."""
    _require_rational(theta)
    q = theta.q
    w1, w2 = clock_shift(theta)
    x1, x2 = x
    scalar = (
        z.z1**x1
        * z.z2**x2
        * phase(x1 * x2 * theta.value.numerator, theta.value.denominator)
    )
    return scalar * (np.linalg.matrix_power(w1, x1 % q) @ np.linalg.matrix_power(w2, x2 % q))


def apply_element(theta: RationalAngle, z: RepPoint, f: AlgElement) -> np.ndarray:
    if f.context.is_crossed or f.context.theta != theta:
        raise ContextMismatchError(f"apply_element needs a rotation algebra element at theta={theta}")
    q = theta.q
    out = np.zeros((q, q), dtype=complex)
    for x, c in sorted(f.coeffs.items()):
        out = out + c * rep(theta, z, x)
    return out


def _fsum_complex(values: Iterable[complex]) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def numeric_trace(theta: RationalAngle, f: AlgElement, n: int) -> complex:
    """
    Average of tr(pi_z(f))/q over the n x n grid of roots of unity.

    Exact for supports inside (-n, n)^2: the grid mean kills every nonzero
    frequency below n.
    """
    _require_rational(theta)
    radius = max((max(abs(x[0]), abs(x[1])) for x in f.coeffs), default=0)
    if n <= radius:
        raise HypothesisError(f"grid size {n} must exceed the support radius {radius}")
    q = theta.q
    values = []
    for j in range(n):
        for k in range(n):
            z = RepPoint.from_angles(j / n, k / n)
            values.append(complex(np.trace(apply_element(theta, z, f))) / q)
    return _fsum_complex(values) / (n * n)


@dataclass(frozen=True)
class RieffelData:
    """
    Bump f and ridge h defining P = h(U2) U1 + f(U2) + (h(U2) U1)*.

    f ramps up on [0, eps], is 1 on [eps, theta], ramps down on
    [theta, theta + eps] and vanishes after; h = sqrt(f - f^2) on the
    down-ramp only.
    """

    theta: RationalAngle
    epsilon: Fraction

    def __post_init__(self) -> None:
        _require_rational(self.theta)
        t = self.theta.residue
        if t == 0:
            raise HypothesisError("the Rieffel projection needs 0 < theta < 1; theta = 0 is symbolic only")
        eps = Fraction(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if not (0 < eps < min(t, 1 - t)):
            raise HypothesisError(f"epsilon={eps} must lie in (0, min(theta, 1 - theta))")

    def bump(self, t: Any) -> np.ndarray:
        th = float(self.theta.residue)
        eps = float(self.epsilon)
        s = np.mod(np.asarray(t, dtype=float), 1.0)
        up = s / eps
        down = 1.0 - (s - th) / eps
        return np.select(
            [s < eps, s < th, s < th + eps],
            [up, np.ones_like(s), down],
            default=0.0,
        )

    def ridge(self, t: Any) -> np.ndarray:
        th = float(self.theta.residue)
        eps = float(self.epsilon)
        s = np.mod(np.asarray(t, dtype=float), 1.0)
        fv = self.bump(s)
        inside = (s >= th) & (s < th + eps)
        return np.where(inside, np.sqrt(np.clip(fv - fv * fv, 0.0, None)), 0.0)


def rieffel_data(theta: RationalAngle, epsilon: Optional[Fraction] = None) -> RieffelData:
    if epsilon is None:
        t = theta.residue
        epsilon = min(t, 1 - t) / 2
    return RieffelData(theta, epsilon)


def check_functional_equations(data: RieffelData, points: Sequence[float]) -> float:
    """Max violation of h(t)h(t-th) = 0, h(t)(f(t)+f(t-th)) = h(t), f^2 + h^2 + h(t+th)^2 = f."""
    th = float(data.theta.residue)
    t = np.asarray(points, dtype=float)
    f, h = data.bump(t), data.ridge(t)
    f_back, h_back = data.bump(t - th), data.ridge(t - th)
    h_fwd = data.ridge(t + th)
    deviations = [
        np.abs(h * h_back),
        np.abs(h * (f + f_back) - h),
        np.abs(f * f + h * h + h_fwd * h_fwd - f),
    ]
    return float(max(np.max(d) for d in deviations)) if t.size else 0.0


def spectral_angles(theta: RationalAngle, z: RepPoint) -> np.ndarray:
    """Angles t_k in [0, 1) of the eigenvalues of z2 W2 in basis order."""
    base = cmath.phase(z.z2) / (2 * math.pi)
    ks = np.arange(theta.q)
    return np.mod(base + ks * theta.p / theta.q, 1.0)


def rieffel_projection_matrix(data: RieffelData, z: RepPoint) -> np.ndarray:
    theta = data.theta
    if theta.q < 2:
        raise HypothesisError("the Rieffel projection needs q >= 2")
    w1, _ = clock_shift(theta)
    t = spectral_angles(theta, z)
    f_diag = np.diag(data.bump(t)).astype(complex)
    h_diag = np.diag(data.ridge(t)).astype(complex)
    hu = h_diag @ (z.z1 * w1)
    return hu + f_diag + hu.conj().T


def projection_defect(p: np.ndarray) -> float:
    return float(np.linalg.norm(p @ p - p, 2))


def self_adjoint_defect(p: np.ndarray) -> float:
    return float(np.linalg.norm(p - p.conj().T, 2))


@dataclass(frozen=True)
class ProjectionRank:
    rank: int
    max_offset: float

    @property
    def integral(self) -> bool:
        return self.max_offset <= PROJECTION_TOL


def projection_rank(p: np.ndarray) -> ProjectionRank:
    """Rank from the Hermitian spectrum; ``max_offset`` is the distance of the spectrum from {0, 1}."""
    eig = np.linalg.eigvalsh((p + p.conj().T) / 2)
    offsets = np.minimum(np.abs(eig), np.abs(eig - 1.0))
    return ProjectionRank(int(np.count_nonzero(eig > 0.5)), float(np.max(offsets)) if eig.size else 0.0)


def _grid_trace(data: RieffelData, n: int) -> float:
    q = data.theta.q
    values = []
    for k in range(n):
        p = rieffel_projection_matrix(data, RepPoint.from_angles(0.0, k / n))
        values.append(float(np.trace(p).real) / q)
    return math.fsum(values) / n


@dataclass(frozen=True)
class RieffelTrace:
    value: float
    error_estimate: float


def rieffel_trace(data: RieffelData, n: int) -> RieffelTrace:
    """Rectangle-rule average of tr(P(z))/q over n points on the z2 circle; error is |T_n - T_2n|."""
    if n < MIN_RIEFFEL_GRID:
        raise HypothesisError(f"quadrature size {n} is below the minimum of {MIN_RIEFFEL_GRID}")
    coarse = _grid_trace(data, n)
    fine = _grid_trace(data, 2 * n)
    return RieffelTrace(coarse, abs(coarse - fine))


def rieffel_report(
    data: RieffelData,
    grid: int,
    rng: np.random.Generator,
    fibers: int = 20,
) -> dict[str, Any]:
    trace = rieffel_trace(data, grid)
    defect = 0.0
    adjoint = 0.0
    ranks: list[int] = []
    integral = True
    for _ in range(fibers):
        p = rieffel_projection_matrix(data, random_rep_point(rng))
        defect = max(defect, projection_defect(p))
        adjoint = max(adjoint, self_adjoint_defect(p))
        r = projection_rank(p)
        ranks.append(r.rank)
        integral = integral and r.integral
    theta = data.theta
    return {
        "theta": str(theta),
        "epsilon": f"{data.epsilon.numerator}/{data.epsilon.denominator}",
        "grid": grid,
        "fibers": fibers,
        "trace_estimate": trace.value,
        "error_estimate": trace.error_estimate,
        "trace_deviation": abs(trace.value - float(theta.residue)),
        "projection_defect": defect,
        "self_adjoint_defect": adjoint,
        "ranks": sorted(set(ranks)),
        "rank_integral": integral,
        "projection_ok": defect <= PROJECTION_TOL and adjoint <= SELF_ADJOINT_TOL,
    }


def theta_zero_class() -> dict[str, Any]:
    """
    K0 record for theta = 0, where no projection of trace theta exists in the
    algebra itself: the class lives in M_2(A_0) as a formal difference.
    """
    return {
        "generator": "[p_0]_0",
        "kind": "formal_difference",
        "ambient": "M_2(A_0)",
        "pairing": "0",
    }
