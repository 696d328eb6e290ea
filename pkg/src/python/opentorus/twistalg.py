"""
Twisted convolution algebras over Z^2 and Z^2 x|_A Z.

An ``AlgElement`` is a finitely supported complex function on the group of
its ``TwistedAlgebra`` context. The product is the twisted convolution
(f*g)(s) = sum_t f(t) g(t^-1 s) w(t, t^-1 s); with the Heisenberg cocycle on
Z^2 this models the rotation algebra and with its extension it models the
crossed product by A.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .cocycle import (
    Angle,
    Group,
    GroupElt,
    LatticeGroup,
    SemidirectGroup,
    crossed_cocycle,
    lattice_cocycle,
    omega_index,
    phase,
)
from .errors import ContextMismatchError, HypothesisError, ParseError, SupportLimitError
from .intmat import IntMatrix2, Vec2, format_matrix
from .limits import DEFAULT_SEED, ELEMENT_TOL, SUPPORT_CAP

Key = Union[Vec2, GroupElt]
Scalar = Union[int, float, complex]


@dataclass(frozen=True)
class TwistedAlgebra:
    group: Group
    theta: Angle
    support_cap: int = field(default=SUPPORT_CAP, compare=False)

    @property
    def matrix(self) -> Optional[IntMatrix2]:
        return self.group.a if isinstance(self.group, SemidirectGroup) else None

    @property
    def is_crossed(self) -> bool:
        return isinstance(self.group, SemidirectGroup)

    def cocycle(self, s: Key, t: Key) -> complex:
        if isinstance(self.group, SemidirectGroup):
            return crossed_cocycle(self.theta, self.group.a)(s, t)
        return lattice_cocycle(self.theta)(s, t)

    def element(self, coeffs: Mapping[Any, Scalar]) -> "AlgElement":
        return AlgElement(self, coeffs)

    def delta(self, s: Any, coeff: Scalar = 1) -> "AlgElement":
        return AlgElement(self, {s: coeff})

    def unit(self) -> "AlgElement":
        return self.delta(self.group.identity())

    def zero(self) -> "AlgElement":
        return AlgElement(self, {})

    def generators(self) -> tuple["AlgElement", ...]:
        """(U1, U2) for the rotation algebra, (U1, U2, u) for a crossed product."""
        if isinstance(self.group, SemidirectGroup):
            return (
                self.delta(GroupElt((1, 0), 0)),
                self.delta(GroupElt((0, 1), 0)),
                self.delta(GroupElt((0, 0), 1)),
            )
        return self.delta((1, 0)), self.delta((0, 1))

    def random_element(
        self,
        rng: np.random.Generator,
        terms: int = 10,
        radius: int = 5,
        max_n: int = 2,
    ) -> "AlgElement":
        if isinstance(self.group, SemidirectGroup):
            keys: Sequence[Key] = self.group.sample(rng, terms, radius, max_n)
        else:
            keys = self.group.sample(rng, terms, radius)
        values = rng.normal(size=(terms, 2))
        coeffs: dict[Key, complex] = {}
        for key, (re, im) in zip(keys, values):
            coeffs[key] = coeffs.get(key, 0j) + complex(float(re), float(im))
        return AlgElement(self, coeffs)

    def describe(self) -> str:
        if isinstance(self.group, SemidirectGroup):
            return f"crossed product (theta={self.theta}, A={format_matrix(self.group.a)})"
        return f"rotation algebra (theta={self.theta})"


def rotation_algebra(theta: Angle, support_cap: int = SUPPORT_CAP) -> TwistedAlgebra:
    return TwistedAlgebra(LatticeGroup(), theta, support_cap)


def crossed_product_algebra(
    theta: Angle, a: IntMatrix2, support_cap: int = SUPPORT_CAP
) -> TwistedAlgebra:
    return TwistedAlgebra(SemidirectGroup(a), theta, support_cap)


class AlgElement:
    """
    Immutable finitely supported function on the context's group.

    Exact zero coefficients are dropped. ``==`` compares contexts exactly and
    coefficients up to ``ELEMENT_TOL``, so elements are unhashable.
    """

    __slots__ = ("_context", "_coeffs")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, context: TwistedAlgebra, coeffs: Mapping[Any, Scalar]) -> None:
        group = context.group
        clean: dict[Key, complex] = {}
        for s, c in coeffs.items():
            value = complex(c)
            if value != 0:
                clean[group.normalize(s)] = value
        if len(clean) > context.support_cap:
            raise SupportLimitError(
                f"element support {len(clean)} exceeds the cap of {context.support_cap} terms"
            )
        self._context = context
        self._coeffs = MappingProxyType(clean)

    @property
    def context(self) -> TwistedAlgebra:
        return self._context

    @property
    def coeffs(self) -> Mapping[Key, complex]:
        return self._coeffs

    @property
    def support(self) -> tuple[Key, ...]:
        return tuple(sorted(self._coeffs))

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, s: Any) -> complex:
        return self._coeffs.get(self._context.group.normalize(s), 0j)

    def _same_context(self, other: "AlgElement") -> None:
        if self._context != other._context:
            raise ContextMismatchError(
                f"cannot combine elements of {self._context.describe()} "
                f"and {other._context.describe()}"
            )

    def __add__(self, other: "AlgElement") -> "AlgElement":
        if not isinstance(other, AlgElement):
            return NotImplemented
        self._same_context(other)
        out = dict(self._coeffs)
        for s, c in other._coeffs.items():
            out[s] = out.get(s, 0j) + c
        return AlgElement(self._context, out)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self._context, {s: -c for s, c in self._coeffs.items()})

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> "AlgElement":
        return AlgElement(self._context, {s: c * v for s, v in self._coeffs.items()})

    def __mul__(self, other: Any) -> "AlgElement":
        if isinstance(other, AlgElement):
            return convolve(self, other)
        if isinstance(other, numbers.Number):
            return self.scale(other)  # type: ignore[arg-type]
        return NotImplemented

    def __rmul__(self, other: Any) -> "AlgElement":
        if isinstance(other, numbers.Number):
            return self.scale(other)  # type: ignore[arg-type]
        return NotImplemented

    def star(self) -> "AlgElement":
        return involution(self)

    def trace(self) -> complex:
        return canonical_trace(self)

    def power(self, n: int) -> "AlgElement":
        """n-th convolution power; negative n uses the adjoint, so it inverts unitaries only."""
        base = self if n >= 0 else self.star()
        out = self._context.unit()
        for _ in range(abs(n)):
            out = convolve(out, base)
        return out

    def distance(self, other: "AlgElement") -> float:
        self._same_context(other)
        keys = set(self._coeffs) | set(other._coeffs)
        return max((abs(self[s] - other[s]) for s in keys), default=0.0)

    def close_to(self, other: "AlgElement", tol: float = ELEMENT_TOL) -> bool:
        return self._context == other._context and self.distance(other) <= tol

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.close_to(other)

    def __repr__(self) -> str:
        terms = ", ".join(f"{s}: {c:.6g}" for s, c in sorted(self._coeffs.items()))
        return f"AlgElement({{{terms}}})"


def convolve(f: AlgElement, g: AlgElement) -> AlgElement:
    f._same_context(g)
    ctx = f.context
    group = ctx.group
    cap = ctx.support_cap
    out: dict[Key, complex] = {}
    for t, a in sorted(f.coeffs.items()):
        for u, b in sorted(g.coeffs.items()):
            s = group.mul(t, u)
            if s not in out and len(out) >= cap:
                raise SupportLimitError(f"convolution support exceeds the cap of {cap} terms")
            out[s] = out.get(s, 0j) + a * b * ctx.cocycle(t, u)
    return AlgElement(ctx, out)


def involution(f: AlgElement) -> AlgElement:
    """f*(s) = conj(w(s, s^-1)) conj(f(s^-1))."""
    ctx = f.context
    group = ctx.group
    out: dict[Key, complex] = {}
    for t, a in f.coeffs.items():
        s = group.inv(t)
        out[s] = ctx.cocycle(s, t).conjugate() * a.conjugate()
    return AlgElement(ctx, out)


def canonical_trace(f: AlgElement) -> complex:
    return f[f.context.group.identity()]


def alpha(a: IntMatrix2, f: AlgElement) -> AlgElement:
    """[alpha_A(f)](x) = f(A^-1 x): the support moves by A, coefficients are unchanged."""
    if a.det() != 1:
        raise HypothesisError(f"matrix {format_matrix(a)} is not in SL(2,Z) (det={a.det()})")
    if f.context.is_crossed:
        raise ContextMismatchError("alpha acts on the rotation algebra, not on a crossed product")
    return AlgElement(f.context, {a.apply(x): c for x, c in f.coeffs.items()})


def embed(f: AlgElement, target: TwistedAlgebra) -> AlgElement:
    """The inclusion iota of the rotation algebra as the n = 0 slice of ``target``."""
    if f.context.is_crossed or not target.is_crossed:
        raise ContextMismatchError("embed maps a rotation algebra element into a crossed product")
    if f.context.theta != target.theta:
        raise ContextMismatchError(
            f"angle mismatch: element has theta={f.context.theta}, target has {target.theta}"
        )
    return AlgElement(target, {GroupElt(x, 0): c for x, c in f.coeffs.items()})


def covariance_check(
    a: IntMatrix2,
    theta: Angle,
    samples: int = 20,
    rng: Optional[np.random.Generator] = None,
    elements: Optional[Iterable[AlgElement]] = None,
) -> float:
    """Max coefficient deviation of u iota(f) u* from iota(alpha_A(f))."""
    base = rotation_algebra(theta)
    crossed = crossed_product_algebra(theta, a)
    if elements is None:
        rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED)
        elements = [base.random_element(rng) for _ in range(samples)]
    u = crossed.generators()[2]
    u_star = u.star()
    worst = 0.0
    for f in elements:
        lhs = u * embed(f, crossed) * u_star
        rhs = embed(alpha(a, f), crossed)
        worst = max(worst, lhs.distance(rhs))
    return worst


def weyl_monomial(algebra: TwistedAlgebra, m: int, n: int) -> AlgElement:
    """U1^m * U2^n computed by convolution."""
    u1, u2 = algebra.generators()[:2]
    return u1.power(m) * u2.power(n)


def element_to_json(f: AlgElement) -> list[dict[str, Any]]:
    group = f.context.group
    return [
        {"element": group.key(s), "re": c.real, "im": c.imag}
        for s, c in sorted(f.coeffs.items())
    ]


def element_from_json(algebra: TwistedAlgebra, payload: Any) -> AlgElement:
    if not isinstance(payload, list):
        raise ParseError("algebra element JSON must be a list of terms")
    coeffs: dict[Key, complex] = {}
    for term in payload:
        if not isinstance(term, dict) or "element" not in term:
            raise ParseError(f"malformed algebra term: {term!r}")
        key = term["element"]
        if not isinstance(key, list) or not all(isinstance(v, int) for v in key):
            raise ParseError(f"malformed group element: {key!r}")
        s = algebra.group.from_key(key)
        try:
            value = complex(float(term.get("re", 0.0)), float(term.get("im", 0.0)))
        except (TypeError, ValueError) as ex:
            raise ParseError(f"malformed coefficient in term {term!r}") from ex
        coeffs[s] = coeffs.get(s, 0j) + value
    return AlgElement(algebra, coeffs)


def exact_cocycle_index(algebra: TwistedAlgebra, s: Key, t: Key) -> tuple[int, int]:
    theta = algebra.theta
    if isinstance(algebra.group, SemidirectGroup):
        g = algebra.group.normalize(s)
        h = algebra.group.normalize(t)
        return omega_index(theta, g.x, algebra.group.a.power(g.n).apply(h.x))
    return omega_index(theta, s, t)  # type: ignore[arg-type]


@dataclass(frozen=True)
class ExactMonomial:
    """
    coeff * e^{i pi index / q} * delta_element, for a rational angle with
    denominator q. Products of monomials stay exact.
    """

    index: int
    q: int
    coeff: Fraction
    element: Key

    @classmethod
    def delta(cls, algebra: TwistedAlgebra, s: Any, coeff: Fraction = Fraction(1)) -> "ExactMonomial":
        if not algebra.theta.exact:
            raise HypothesisError("exact monomials need a rational angle")
        return cls(0, algebra.theta.value.denominator, Fraction(coeff), algebra.group.normalize(s))

    def mul(self, other: "ExactMonomial", algebra: TwistedAlgebra) -> "ExactMonomial":
        k, q = exact_cocycle_index(algebra, self.element, other.element)
        if q != self.q or q != other.q:
            raise ContextMismatchError("exact monomials from different angle denominators")
        return ExactMonomial(
            (self.index + other.index + k) % (2 * q),
            q,
            self.coeff * other.coeff,
            algebra.group.mul(self.element, other.element),
        )

    def star(self, algebra: TwistedAlgebra) -> "ExactMonomial":
        s = algebra.group.inv(self.element)
        k, q = exact_cocycle_index(algebra, s, self.element)
        return ExactMonomial((-self.index - k) % (2 * q), q, self.coeff, s)

    def phase_ratio(self, other: "ExactMonomial") -> Optional[tuple[int, int]]:
        """Index d with self = e^{i pi d / q} other, or None when they are not proportional."""
        if self.element != other.element or self.coeff != other.coeff or self.q != other.q:
            return None
        return (self.index - other.index) % (2 * self.q), self.q

    def to_element(self, algebra: TwistedAlgebra) -> AlgElement:
        return algebra.delta(self.element, float(self.coeff) * phase(self.index, self.q))
