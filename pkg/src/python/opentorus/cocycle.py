"""
The 2-cocycles of the rotation algebra and of its crossed products.

``omega`` is the Heisenberg cocycle on Z^2, ``omega_tilde`` its extension to
Z^2 x|_A Z. Cocycle values are Python ``complex`` numbers of modulus one. For
an exact rational angle the exponent is kept as a root-of-unity index and
values come from a cached table, so equal indices give bit-identical values.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from .errors import AutomorphismError, HypothesisError, ParseError
from .intmat import IntMatrix2, Vec2, _checked, format_matrix
from .limits import COCYCLE_TOL, DEFAULT_SEED

G = TypeVar("G")
Cocycle = Callable[[G, G], complex]


@dataclass(frozen=True)
class Angle:
    """
    Exact rational angle with an optional float override.

    ``value`` is the signed representative used in cocycle exponents:
    omega depends on the angle mod 2, so -1/3 and 2/3 give different (though
    cohomologous) cocycles. ``p``/``q`` describe the reduced residue in [0, 1),
    which is all the K-theory sees.
    """

    value: Fraction
    real: Optional[float] = None

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))
        if self.real is not None:
            real = float(self.real)
            if not math.isfinite(real):
                raise ParseError(f"angle override must be finite, got {self.real}")
            object.__setattr__(self, "real", real)

    @classmethod
    def parse(cls, text: str) -> "Angle":
        s = text.strip()
        try:
            if "/" in s:
                num, den = s.split("/", 1)
                value = Fraction(int(num.strip(), 10), int(den.strip(), 10))
            else:
                value = Fraction(int(s, 10))
        except (ValueError, ZeroDivisionError) as ex:
            raise ParseError(f"invalid angle '{text}' (expected p/q)") from ex
        return cls(value)

    @classmethod
    def irrational(cls, x: float) -> "Angle":
        """Float-only angle; evaluation uses ``x``, exact comparisons are refused."""
        if not math.isfinite(x):
            raise ParseError(f"angle override must be finite, got {x}")
        return cls(Fraction(x).limit_denominator(10**9), real=x)

    @property
    def exact(self) -> bool:
        return self.real is None

    @property
    def residue(self) -> Fraction:
        return self.value % 1

    @property
    def p(self) -> int:
        return self.residue.numerator

    @property
    def q(self) -> int:
        return self.residue.denominator

    def as_float(self) -> float:
        return self.real if self.real is not None else float(self.value)

    def __neg__(self) -> "Angle":
        return Angle(-self.value, None if self.real is None else -self.real)

    def congruent(self, other: "Angle") -> bool:
        return self.residue == other.residue

    def congruent_up_to_sign(self, other: "Angle") -> bool:
        return self.residue == other.residue or self.residue == (-other.value) % 1

    def __str__(self) -> str:
        if self.real is not None:
            return repr(self.real)
        return f"{self.p}/{self.q}"


@dataclass(frozen=True, order=True)
class GroupElt:
    """Element (x, n) of Z^2 x|_A Z."""

    x: Vec2
    n: int = 0


def _exponent(x: Vec2, y: Vec2) -> int:
    return _checked(_checked(x[1] * y[0]) - _checked(x[0] * y[1]))


@functools.lru_cache(maxsize=64)
def _root_table(q: int) -> tuple[complex, ...]:
    # e^{i pi j / q}, j = 0 .. 2q-1; quarter turns are stored exactly.
    table = []
    for j in range(2 * q):
        if (4 * j) % (2 * q) == 0:
            table.append((1 + 0j, 1j, -1 + 0j, -1j)[(4 * j) // (2 * q)])
        else:
            table.append(cmath.exp(1j * math.pi * j / q))
    return tuple(table)


def phase(index: int, q: int) -> complex:
    """Unit complex number e^{i pi index / q}."""
    return _root_table(q)[index % (2 * q)]


def omega_index(theta: Angle, x: Vec2, y: Vec2) -> tuple[int, int]:
    if not theta.exact:
        raise HypothesisError("exact cocycle index needs a rational angle")
    q = theta.value.denominator
    return (_exponent(x, y) * theta.value.numerator) % (2 * q), q


def omega(theta: Angle, x: Vec2, y: Vec2) -> complex:
    """exp(i pi theta (x2 y1 - x1 y2))."""
    if theta.exact:
        return phase(*omega_index(theta, x, y))
    # Reduce theta*k mod 2 exactly; the float override is a dyadic rational.
    t = (Fraction(theta.as_float()) * _exponent(x, y)) % 2
    return cmath.exp(1j * math.pi * float(t))


@functools.lru_cache(maxsize=4096)
def _power(a: IntMatrix2, n: int) -> IntMatrix2:
    return a.power(n)


def _require_det_one(a: IntMatrix2) -> None:
    if a.det() != 1:
        raise HypothesisError(f"matrix {format_matrix(a)} is not in SL(2,Z) (det={a.det()})")


def omega_tilde(theta: Angle, a: IntMatrix2, g: GroupElt, h: GroupElt) -> complex:
    _require_det_one(a)
    return omega(theta, g.x, _power(a, g.n).apply(h.x))


def trivial_cocycle(s: object, t: object) -> complex:
    return 1 + 0j


def _sample_vectors(rng: np.random.Generator, count: int, radius: int) -> list[Vec2]:
    raw = rng.integers(-radius, radius + 1, size=(count, 2))
    return [(int(r[0]), int(r[1])) for r in raw]


@dataclass(frozen=True)
class LatticeGroup:
    """The group Z^2 with elements as integer pairs."""

    name: str = "Z2"

    def identity(self) -> Vec2:
        return 0, 0

    def mul(self, s: Vec2, t: Vec2) -> Vec2:
        return _checked(s[0] + t[0]), _checked(s[1] + t[1])

    def inv(self, s: Vec2) -> Vec2:
        return -s[0], -s[1]

    def normalize(self, s: object) -> Vec2:
        x1, x2 = s  # type: ignore[misc]
        return int(x1), int(x2)

    def key(self, s: Vec2) -> list[int]:
        return [s[0], s[1]]

    def from_key(self, key: Sequence[int]) -> Vec2:
        if len(key) != 2:
            raise ParseError(f"lattice element needs two coordinates, got {list(key)}")
        return int(key[0]), int(key[1])

    def sample(self, rng: np.random.Generator, count: int, radius: int = 20) -> list[Vec2]:
        return _sample_vectors(rng, count, radius)


@dataclass(frozen=True)
class SemidirectGroup:
    """Z^2 x|_A Z with product (x, n)(y, m) = (x + A^n y, n + m)."""

    a: IntMatrix2
    name: str = "Z2xZ"

    def __post_init__(self) -> None:
        _require_det_one(self.a)

    def identity(self) -> GroupElt:
        return GroupElt((0, 0), 0)

    def mul(self, g: GroupElt, h: GroupElt) -> GroupElt:
        y = _power(self.a, g.n).apply(h.x)
        return GroupElt((_checked(g.x[0] + y[0]), _checked(g.x[1] + y[1])), g.n + h.n)

    def inv(self, g: GroupElt) -> GroupElt:
        x = _power(self.a, -g.n).apply(g.x)
        return GroupElt((-x[0], -x[1]), -g.n)

    def normalize(self, g: object) -> GroupElt:
        if isinstance(g, GroupElt):
            return g
        x1, x2, n = g  # type: ignore[misc]
        return GroupElt((int(x1), int(x2)), int(n))

    def key(self, g: GroupElt) -> list[int]:
        return [g.x[0], g.x[1], g.n]

    def from_key(self, key: Sequence[int]) -> GroupElt:
        if len(key) != 3:
            raise ParseError(f"crossed product element needs [x1, x2, n], got {list(key)}")
        return GroupElt((int(key[0]), int(key[1])), int(key[2]))

    def sample(
        self, rng: np.random.Generator, count: int, radius: int = 20, max_n: int = 4
    ) -> list[GroupElt]:
        xs = _sample_vectors(rng, count, radius)
        ns = rng.integers(-max_n, max_n + 1, size=count)
        return [GroupElt(x, int(n)) for x, n in zip(xs, ns)]


Group = Union[LatticeGroup, SemidirectGroup]


def lattice_cocycle(theta: Angle) -> Cocycle:
    return functools.partial(omega, theta)


def crossed_cocycle(theta: Angle, a: IntMatrix2) -> Cocycle:
    _require_det_one(a)
    return functools.partial(omega_tilde, theta, a)


@dataclass(frozen=True)
class CocycleCheck:
    samples: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def verify_cocycle_identity(
    cocycle: Cocycle,
    group: Group,
    elements: Optional[Sequence[object]] = None,
    triples: Optional[Iterable[tuple[object, object, object]]] = None,
    tolerance: float = COCYCLE_TOL,
) -> CocycleCheck:
    """
    Check w(g,h) w(gh,k) = w(g,hk) w(h,k) and the normalization w(g,e) = w(e,g) = 1.

    ``elements`` checks every ordered triple of the sample; ``triples`` checks
    exactly the given ones.
    """
    if triples is None:
        pool = list(elements or ())
        triples = itertools.product(pool, repeat=3)
    e = group.identity()
    seen: list[object] = []
    worst = 0.0
    count = 0
    for g, h, k in triples:
        lhs = cocycle(g, h) * cocycle(group.mul(g, h), k)
        rhs = cocycle(g, group.mul(h, k)) * cocycle(h, k)
        worst = max(worst, abs(lhs - rhs))
        count += 1
        seen.extend((g, h, k))
    for g in seen:
        worst = max(worst, abs(cocycle(g, e) - 1), abs(cocycle(e, g) - 1))
    return CocycleCheck(count, worst, tolerance)


@dataclass(frozen=True)
class LinearAutomorphism:
    """x -> M x on Z^2 for M in GL(2,Z)."""

    matrix: IntMatrix2

    def __post_init__(self) -> None:
        if not self.matrix.is_gl2():
            raise AutomorphismError(f"matrix {format_matrix(self.matrix)} is not in GL(2,Z)")

    def __call__(self, x: Vec2) -> Vec2:
        return self.matrix.apply(x)

    def inverse(self) -> "LinearAutomorphism":
        return LinearAutomorphism(self.matrix.inverse())


@dataclass(frozen=True)
class ReversorAutomorphism:
    """Phi_B(x, n) = (B x, -n) on Z^2 x|_A Z."""

    a: IntMatrix2
    b: IntMatrix2

    def __call__(self, g: GroupElt) -> GroupElt:
        return GroupElt(self.b.apply(g.x), -g.n)

    def inverse(self) -> "ReversorAutomorphism":
        return ReversorAutomorphism(self.a, self.b.inverse())


def _check_automorphism(
    phi: Callable[[G], G], group: Group, samples: Sequence[G], inverse: Optional[Callable[[G], G]] = None
) -> None:
    images: dict[object, object] = {}
    for s in samples:
        image = phi(s)
        other = images.setdefault(image, s)
        if other != s:
            raise AutomorphismError(f"map is not injective: {other} and {s} share an image")
        if inverse is not None and inverse(image) != s:
            raise AutomorphismError(f"inverse map does not undo the map at {s}")
    for s, t in zip(samples, samples[1:] + samples[:1]):
        if phi(group.mul(s, t)) != group.mul(phi(s), phi(t)):
            raise AutomorphismError(f"map is not multiplicative at ({s}, {t})")


def pullback(
    cocycle: Cocycle,
    phi: Callable[[G], G],
    group: Group,
    samples: Sequence[G],
) -> Cocycle:
    """(w o Phi)(s, t) = w(Phi s, Phi t), after a homomorphism spot check on ``samples``."""
    inverse = getattr(phi, "inverse", None)
    _check_automorphism(phi, group, list(samples), inverse() if callable(inverse) else None)

    def pulled(s: G, t: G) -> complex:
        return cocycle(phi(s), phi(t))

    return pulled


def reversor_automorphism(
    a: IntMatrix2,
    b: IntMatrix2,
    rng: Optional[np.random.Generator] = None,
    samples: int = 100,
) -> ReversorAutomorphism:
    _require_det_one(a)
    if b.det() != -1 or b @ a != a.inverse() @ b:
        raise AutomorphismError(
            f"{format_matrix(b)} is not a determinant -1 reversor of {format_matrix(a)}"
        )
    phi = ReversorAutomorphism(a, b)
    group = SemidirectGroup(a)
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
    left = group.sample(rng, samples)
    right = group.sample(rng, samples)
    for g, h in zip(left, right):
        if phi(group.mul(g, h)) != group.mul(phi(g), phi(h)):
            raise AutomorphismError(f"Phi_B is not multiplicative at ({g}, {h})")
    return phi


def coboundary(lam: Callable[[G], complex], group: Group) -> Cocycle:
    def cob(s: G, t: G) -> complex:
        return lam(s) * lam(t) * lam(group.mul(s, t)).conjugate()

    return cob


def cocycle_product(first: Cocycle, second: Cocycle) -> Cocycle:
    def prod(s: G, t: G) -> complex:
        return first(s, t) * second(s, t)

    return prod


@dataclass(frozen=True)
class WitnessCheck:
    samples: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance


def cohomologous_witness_check(
    w: Cocycle,
    w_prime: Cocycle,
    lam: Callable[[G], complex],
    group: Group,
    pairs: Iterable[Tuple[G, G]],
    tolerance: float = COCYCLE_TOL,
) -> WitnessCheck:
    """Max of |w(s,t) - lam(s) lam(t) conj(lam(st)) w'(s,t)| over ``pairs``."""
    worst = 0.0
    count = 0
    for s, t in pairs:
        rhs = lam(s) * lam(t) * lam(group.mul(s, t)).conjugate() * w_prime(s, t)
        worst = max(worst, abs(w(s, t) - rhs))
        count += 1
    return WitnessCheck(count, worst, tolerance)


@dataclass(frozen=True)
class TwistCertificate:
    """Witness that w o Phi and w' are cohomologous, so C*(G, w) and C*(G, w') are isomorphic."""

    check: WitnessCheck

    @property
    def certified(self) -> bool:
        return self.check.passed


def certify_twist_isomorphism(
    w: Cocycle,
    w_prime: Cocycle,
    phi: Callable[[G], G],
    lam: Callable[[G], complex],
    group: Group,
    samples: Sequence[G],
    tolerance: float = COCYCLE_TOL,
) -> TwistCertificate:
    pulled = pullback(w, phi, group, samples)
    pairs = list(zip(samples, list(samples[1:]) + list(samples[:1])))
    return TwistCertificate(cohomologous_witness_check(pulled, w_prime, lam, group, pairs, tolerance))


def is_central(group: Group, g: G, samples: Iterable[G]) -> bool:
    return all(group.mul(g, s) == group.mul(s, g) for s in samples)


def commutator(group: Group, g: G, h: G) -> G:
    return group.mul(group.mul(g, h), group.mul(group.inv(g), group.inv(h)))


def nilpotency_check(group: Group, samples: Sequence[G]) -> bool:
    """Every commutator of sampled elements is central on the sample (nilpotency class <= 2)."""
    for g, h in itertools.product(samples, repeat=2):
        if not is_central(group, commutator(group, g, h), samples):
            return False
    return True
