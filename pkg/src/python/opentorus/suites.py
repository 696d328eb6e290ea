"""
Verification suites run by ``torusverify``.

Each suite draws from its own generator seeded with the run seed, so a suite
reports the same numbers whether it runs alone or inside ``all``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

import numpy as np

from . import cocycle as co
from . import intmat as im
from . import rotrep as rr
from . import twistalg as ta
from .errors import ParseError
from .limits import (
    ASSOCIATIVITY_TOL,
    COCYCLE_TOL,
    DEFAULT_GRID,
    DEFAULT_REVERSOR_BOUND,
    DEFAULT_SEED,
    ELEMENT_TOL,
    HOMOMORPHISM_TOL,
    NUMERIC_TRACE_TOL,
    PROJECTION_TOL,
    REPRESENTATION_TOL,
    RIEFFEL_TRACE_TOL,
    SELF_ADJOINT_TOL,
)

CAT_MAP = im.IntMatrix2(2, 1, 1, 1)
SAMPLE_MATRICES = (
    CAT_MAP,
    im.IntMatrix2(1, 1, 0, 1),
    im.IntMatrix2(3, 1, 2, 1),
    im.IntMatrix2(1, 0, 2, 1),
    im.IntMatrix2(-2, 1, -1, 0),
)
SAMPLE_ANGLES = (
    co.Angle(Fraction(0)),
    co.Angle(Fraction(1, 4)),
    co.Angle(Fraction(1, 3)),
    co.Angle(Fraction(1, 2)),
    co.Angle.irrational(0.6180339887498949),
)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    samples: int
    max_deviation: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "samples": self.samples,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "detail": self.detail,
        }


def _flag(name: str, ok: bool, samples: int = 1, detail: str = "") -> PropertyResult:
    return PropertyResult(name, samples, 0.0 if ok else 1.0, 0.0, detail)


@dataclass(frozen=True)
class SuiteParams:
    theta: co.Angle = field(default_factory=lambda: co.Angle(Fraction(1, 3)))
    matrix: im.IntMatrix2 = CAT_MAP
    bound: int = DEFAULT_REVERSOR_BOUND
    grid: int = DEFAULT_GRID
    epsilon: Optional[Fraction] = None
    seed: int = DEFAULT_SEED
    # AlgElement JSON terms for the element suite; a seeded random element when None.
    element: Optional[list[Any]] = field(default=None, compare=False)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    properties: tuple[PropertyResult, ...]
    report: Optional[dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "suite": self.name,
            "passed": self.passed,
            "properties": [p.to_json() for p in self.properties],
        }
        if self.report is not None:
            out["report"] = self.report
        return out


def _half_turns(theta: co.Angle, k: int) -> complex:
    """e^{i pi theta k}."""
    if theta.exact:
        return co.phase(k * theta.value.numerator, theta.value.denominator)
    return cmath.exp(1j * math.pi * theta.as_float() * k)


def _random_triples(sample: Callable[[int], list], count: int) -> list[tuple]:
    a, b, c = sample(count), sample(count), sample(count)
    return list(zip(a, b, c))


def suite_cocycle(params: SuiteParams) -> SuiteResult:
    rng = params.rng()
    out: list[PropertyResult] = []
    lattice = co.LatticeGroup()
    angles = list(SAMPLE_ANGLES)
    if params.theta not in angles:
        angles.append(params.theta)
    for theta in angles:
        w = co.lattice_cocycle(theta)
        triples = _random_triples(lambda n: lattice.sample(rng, n, 20), 200)
        check = co.verify_cocycle_identity(w, lattice, triples=triples)
        out.append(PropertyResult(f"omega_identity[theta={theta}]", check.samples, check.max_deviation, COCYCLE_TOL))

        xs = lattice.sample(rng, 100, 20)
        ys = lattice.sample(rng, 100, 20)
        worst_sl2 = 0.0
        worst_sym = 0.0
        for x, y in zip(xs, ys):
            a = im.random_sl2(rng, 4)
            worst_sl2 = max(worst_sl2, abs(co.omega(theta, a.apply(x), a.apply(y)) - co.omega(theta, x, y)))
            minus = lattice.inv(x)
            worst_sym = max(worst_sym, abs(co.omega(theta, x, minus) / co.omega(theta, minus, x) - 1))
        out.append(PropertyResult(f"omega_sl2_invariance[theta={theta}]", len(xs), worst_sl2, COCYCLE_TOL))
        out.append(PropertyResult(f"omega_inverse_symmetry[theta={theta}]", len(xs), worst_sym, COCYCLE_TOL))

    matrices = list(SAMPLE_MATRICES)
    if params.matrix not in matrices and params.matrix.is_sl2():
        matrices.append(params.matrix)
    for a in matrices:
        group = co.SemidirectGroup(a)
        w = co.crossed_cocycle(params.theta, a)
        triples = _random_triples(lambda n: group.sample(rng, n, 20, 4), 200)
        check = co.verify_cocycle_identity(w, group, triples=triples)
        out.append(
            PropertyResult(
                f"omega_tilde_identity[A={im.format_matrix(a)}]", check.samples, check.max_deviation, COCYCLE_TOL
            )
        )
    return SuiteResult("cocycle", tuple(out))


def suite_algebra(params: SuiteParams) -> SuiteResult:
    rng = params.rng()
    theta = params.theta
    a = params.matrix
    base = ta.rotation_algebra(theta)
    crossed = ta.crossed_product_algebra(theta, a)
    out: list[PropertyResult] = []

    for alg, label in ((base, "Z2"), (crossed, "Z2xZ")):
        worst = 0.0
        for _ in range(50):
            f, g, h = (alg.random_element(rng, terms=4, radius=3, max_n=2) for _ in range(3))
            worst = max(worst, ((f * g) * h).distance(f * (g * h)))
        out.append(PropertyResult(f"associativity[{label}]", 50, worst, ASSOCIATIVITY_TOL))

        worst_trace = 0.0
        worst_pos = 0.0
        for _ in range(50):
            f, g = (alg.random_element(rng, terms=5, radius=3, max_n=2) for _ in range(2))
            worst_trace = max(worst_trace, abs((f * g).trace() - (g * f).trace()))
            norm2 = sum(abs(c) ** 2 for c in f.coeffs.values())
            tau = (f.star() * f).trace()
            worst_pos = max(worst_pos, abs(tau - norm2), max(0.0, -tau.real))
        out.append(PropertyResult(f"trace_property[{label}]", 50, worst_trace, ELEMENT_TOL))
        out.append(PropertyResult(f"trace_positivity[{label}]", 50, worst_pos, ASSOCIATIVITY_TOL))

        worst_star = 0.0
        for _ in range(20):
            f, g = (alg.random_element(rng, terms=4, radius=3, max_n=2) for _ in range(2))
            worst_star = max(
                worst_star,
                f.star().star().distance(f),
                (f * g).star().distance(g.star() * f.star()),
            )
        out.append(PropertyResult(f"involution[{label}]", 20, worst_star, ASSOCIATIVITY_TOL))

    u1, u2 = base.generators()
    relation = (u2 * u1).distance((u1 * u2).scale(_half_turns(theta, 2)))
    out.append(PropertyResult("defining_relation", 1, relation, ELEMENT_TOL))
    if theta.exact:
        e1 = ta.ExactMonomial.delta(base, (1, 0))
        e2 = ta.ExactMonomial.delta(base, (0, 1))
        ratio = e2.mul(e1, base).phase_ratio(e1.mul(e2, base))
        expected = ((2 * theta.value.numerator) % (2 * theta.value.denominator), theta.value.denominator)
        out.append(_flag("defining_relation_exact", ratio == expected, detail=f"phase index {ratio}"))

    worst_weyl = 0.0
    for m, n in itertools.product(range(-6, 7), repeat=2):
        lhs = base.delta((m, n))
        rhs = ta.weyl_monomial(base, m, n).scale(_half_turns(theta, m * n))
        worst_weyl = max(worst_weyl, lhs.distance(rhs))
    out.append(PropertyResult("weyl_correspondence", 169, worst_weyl, ELEMENT_TOL))

    cov = ta.covariance_check(a, theta, samples=20, rng=rng)
    out.append(PropertyResult("covariance", 20, cov, ELEMENT_TOL))

    worst_action = 0.0
    worst_hom = 0.0
    for _ in range(10):
        p, q = im.random_sl2(rng, 3), im.random_sl2(rng, 3)
        for _ in range(20):
            f = base.random_element(rng, terms=4, radius=3)
            worst_action = max(worst_action, ta.alpha(p, ta.alpha(q, f)).distance(ta.alpha(p @ q, f)))
        f, g = base.random_element(rng, terms=4, radius=3), base.random_element(rng, terms=4, radius=3)
        worst_hom = max(worst_hom, ta.alpha(p, f * g).distance(ta.alpha(p, f) * ta.alpha(p, g)))
    out.append(PropertyResult("action_property", 200, worst_action, ELEMENT_TOL))
    out.append(PropertyResult("alpha_multiplicative", 10, worst_hom, ASSOCIATIVITY_TOL))

    worst_embed = 0.0
    for _ in range(20):
        f, g = base.random_element(rng, terms=4, radius=3), base.random_element(rng, terms=4, radius=3)
        worst_embed = max(
            worst_embed,
            ta.embed(f * g, crossed).distance(ta.embed(f, crossed) * ta.embed(g, crossed)),
            abs(ta.embed(f, crossed).trace() - f.trace()),
        )
    out.append(PropertyResult("embedding", 20, worst_embed, ASSOCIATIVITY_TOL))
    return SuiteResult("algebra", tuple(out))


def suite_representation(params: SuiteParams) -> SuiteResult:
    rng = params.rng()
    theta = params.theta
    base = ta.rotation_algebra(theta)
    lattice = co.LatticeGroup()
    out: list[PropertyResult] = []

    w1, w2 = rr.clock_shift(theta)
    zeta = co.phase(2 * theta.p, theta.q)
    out.append(
        PropertyResult("clock_shift_relation", 1, float(np.max(np.abs(w2 @ w1 - zeta * (w1 @ w2)))), ELEMENT_TOL)
    )

    worst = 0.0
    for _ in range(100):
        z = rr.random_rep_point(rng)
        x, y = lattice.sample(rng, 2, 10)
        lhs = rr.rep(theta, z, x) @ rr.rep(theta, z, y)
        rhs = co.omega(theta, x, y) * rr.rep(theta, z, lattice.mul(x, y))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    out.append(PropertyResult("rep_multiplicativity", 100, worst, REPRESENTATION_TOL))

    worst = 0.0
    for _ in range(20):
        z = rr.random_rep_point(rng)
        f = base.random_element(rng, terms=10, radius=4)
        g = base.random_element(rng, terms=10, radius=4)
        lhs = rr.apply_element(theta, z, f * g)
        rhs = rr.apply_element(theta, z, f) @ rr.apply_element(theta, z, g)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    out.append(PropertyResult("apply_homomorphism", 20, worst, HOMOMORPHISM_TOL))

    worst_trace = 0.0
    worst_alpha = 0.0
    for _ in range(5):
        f = base.random_element(rng, terms=6, radius=3)
        t = rr.numeric_trace(theta, f, 4)
        worst_trace = max(worst_trace, abs(t - f.trace()))
        a = im.random_sl2(rng, 2)
        moved = ta.alpha(a, f)
        radius = max(max(abs(x[0]), abs(x[1])) for x in moved.coeffs) if len(moved) else 0
        worst_alpha = max(worst_alpha, abs(rr.numeric_trace(theta, moved, radius + 1) - t))
    out.append(PropertyResult("numeric_trace_consistency", 5, worst_trace, NUMERIC_TRACE_TOL))
    out.append(PropertyResult("trace_alpha_invariance", 5, worst_alpha, NUMERIC_TRACE_TOL))
    return SuiteResult("representation", tuple(out))


def suite_element(params: SuiteParams) -> SuiteResult:
    """Checks on one rotation-algebra element, read from JSON terms or drawn from the seed."""
    rng = params.rng()
    theta = params.theta
    base = ta.rotation_algebra(theta)
    if params.element is None:
        f = base.random_element(rng, terms=6, radius=3)
        source = "random"
    else:
        f = ta.element_from_json(base, params.element)
        source = "input"
    terms = ta.element_to_json(f)
    out = [
        PropertyResult("json_codec", len(f), ta.element_from_json(base, terms).distance(f), ELEMENT_TOL),
        PropertyResult("involution", len(f), f.star().star().distance(f), ELEMENT_TOL),
    ]
    norm2 = sum(abs(c) ** 2 for c in f.coeffs.values())
    tau = f.trace()
    positivity = (f.star() * f).trace()
    out.append(PropertyResult("trace_positivity", len(f), abs(positivity - norm2), ASSOCIATIVITY_TOL))
    if theta.exact:
        radius = max((max(abs(x[0]), abs(x[1])) for x in f.coeffs), default=0)
        n = radius + 1
        out.append(
            PropertyResult("numeric_trace", n * n, abs(rr.numeric_trace(theta, f, n) - tau), NUMERIC_TRACE_TOL)
        )
    if params.matrix.is_sl2():
        cov = ta.covariance_check(params.matrix, theta, elements=[f])
        out.append(PropertyResult("covariance", 1, cov, ELEMENT_TOL))
    report = {
        "source": source,
        "theta": str(theta),
        "trace": [tau.real, tau.imag],
        "element": terms,
    }
    return SuiteResult("element", tuple(out), report)


def suite_rieffel(params: SuiteParams) -> SuiteResult:
    rng = params.rng()
    data = rr.rieffel_data(params.theta, params.epsilon)
    report = rr.rieffel_report(data, params.grid, rng)
    points = np.linspace(0.0, 1.0, 1000, endpoint=False)
    out = [
        PropertyResult(
            "rieffel_trace",
            params.grid,
            report["trace_deviation"],
            RIEFFEL_TRACE_TOL,
            f"trace {report['trace_estimate']:.9f} +- {report['error_estimate']:.2e}",
        ),
        PropertyResult("projection_defect", report["fibers"], report["projection_defect"], PROJECTION_TOL),
        PropertyResult("self_adjoint_defect", report["fibers"], report["self_adjoint_defect"], SELF_ADJOINT_TOL),
        PropertyResult(
            "functional_equations", len(points), rr.check_functional_equations(data, points), PROJECTION_TOL
        ),
        _flag("rank_integral", report["rank_integral"], report["fibers"], f"ranks {report['ranks']}"),
    ]
    return SuiteResult("rieffel", tuple(out), report)


def suite_reversor(params: SuiteParams) -> SuiteResult:
    rng = params.rng()
    a = params.matrix
    b = im.reversing_symmetry(a, params.bound)
    if b is None:
        return SuiteResult(
            "reversor",
            (_flag("reversor_search", True, detail=f"none found within bound {params.bound}"),),
        )
    out = [
        _flag(
            "reversing_relation",
            b.det() == -1 and b @ a == a.inverse() @ b,
            detail=f"B={im.format_matrix(b)}",
        )
    ]
    phi = co.reversor_automorphism(a, b, rng)
    group = co.SemidirectGroup(a)
    left = group.sample(rng, 200)
    right = group.sample(rng, 200)
    flipped = co.pullback(co.crossed_cocycle(-params.theta, a), phi, group, left)
    check = co.cohomologous_witness_check(
        co.crossed_cocycle(params.theta, a), flipped, lambda s: 1 + 0j, group, zip(left, right)
    )
    out.append(PropertyResult("angle_flip_identity", check.samples, check.max_deviation, COCYCLE_TOL))
    twice = all(phi(phi(g)) == co.GroupElt((b @ b).apply(g.x), g.n) for g in left)
    out.append(_flag("phi_square", twice, len(left)))
    return SuiteResult("reversor", tuple(out))


def _det_one_matrices(radius: int) -> list[im.IntMatrix2]:
    span = range(-radius, radius + 1)
    found = []
    for a, b, c in itertools.product(span, repeat=3):
        if a != 0:
            if (1 + b * c) % a == 0 and abs((1 + b * c) // a) <= radius:
                found.append(im.IntMatrix2(a, b, c, (1 + b * c) // a))
        elif b * c == -1:
            found.extend(im.IntMatrix2(a, b, c, d) for d in span)
    return found


def suite_center(params: SuiteParams) -> SuiteResult:
    rng = params.rng()
    out: list[PropertyResult] = []
    mats = _det_one_matrices(10)
    bad = [
        m for m in mats
        if (im.center_rank(m) == 1) != (m.trace() == 2 and m != im.IDENTITY)
    ]
    out.append(_flag("center_rank_iff_trace2", not bad, len(mats), f"{len(bad)} mismatches"))

    a = params.matrix
    if a.is_sl2() and im.trace_class(a).infinite_order:
        group = co.SemidirectGroup(a)
        samples = group.sample(rng, 40, 10, 3)
        rank = im.center_rank(a)
        if rank == 1:
            v = im.fixed_vector(a)
            out.append(_flag("fixed_vector_central", co.is_central(group, co.GroupElt(v, 0), samples), len(samples)))
            out.append(_flag("nilpotent_class_two", co.nilpotency_check(group, samples), len(samples)))
        else:
            central = [g for g in samples if g != group.identity() and co.is_central(group, g, samples)]
            out.append(_flag("trivial_center", not central, len(samples)))
    return SuiteResult("center", tuple(out))


def suite_trace2(params: SuiteParams) -> SuiteResult:
    rng = params.rng()
    bad = 0
    for _ in range(20):
        h = int(rng.integers(1, 7))
        p = im.random_sl2(rng, 4)
        a = p @ im.IntMatrix2(1, h, 0, 1) @ p.inverse()
        nf = im.trace2_normal_form(a)
        ok = (
            nf.h1 == h
            and nf.conjugator.det() == 1
            and nf.conjugator @ a @ nf.conjugator.inverse() == nf.reduced_matrix()
            and im.smith_normal_form(a - im.IDENTITY).diag == (h, 0)
        )
        bad += 0 if ok else 1
    out = [_flag("trace2_reduction", bad == 0, 20, f"{bad} failures")]
    a = params.matrix
    if a.is_sl2() and im.trace_class(a) is im.TraceClass.UNIPOTENT_PLUS:
        nf = im.trace2_normal_form(a)
        out.append(
            _flag(
                "trace2_input",
                nf.h1 == im.smith_normal_form(a - im.IDENTITY).h1,
                detail=f"h1={nf.h1} form={nf.form.value}",
            )
        )
    return SuiteResult("trace2", tuple(out))


SUITES: dict[str, Callable[[SuiteParams], SuiteResult]] = {
    "cocycle": suite_cocycle,
    "algebra": suite_algebra,
    "representation": suite_representation,
    "element": suite_element,
    "rieffel": suite_rieffel,
    "reversor": suite_reversor,
    "center": suite_center,
    "trace2": suite_trace2,
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str, params: SuiteParams) -> list[SuiteResult]:
    if name == "all":
        return [fn(params) for fn in SUITES.values()]
    fn = SUITES.get(name)
    if fn is None:
        raise ParseError(f"unknown suite '{name}' (expected one of: {', '.join(suite_names())})")
    return [fn(params)]
