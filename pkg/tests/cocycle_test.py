from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import angle
from opentorus.cocycle import (
    Angle,
    GroupElt,
    LatticeGroup,
    LinearAutomorphism,
    SemidirectGroup,
    certify_twist_isomorphism,
    coboundary,
    cocycle_product,
    cohomologous_witness_check,
    crossed_cocycle,
    is_central,
    lattice_cocycle,
    nilpotency_check,
    omega,
    omega_index,
    omega_tilde,
    pullback,
    reversor_automorphism,
    trivial_cocycle,
    verify_cocycle_identity,
)
from opentorus.errors import AutomorphismError, HypothesisError, ParseError
from opentorus.intmat import IntMatrix2, random_sl2

CAT = IntMatrix2(2, 1, 1, 1)
CAT_REVERSOR = IntMatrix2(1, -1, 0, -1)
T1 = IntMatrix2(1, 1, 0, 1)
MATRICES = (CAT, T1, IntMatrix2(3, 1, 2, 1), IntMatrix2(1, 0, 2, 1), IntMatrix2(-2, 1, -1, 0))
ANGLES = (angle(0), angle(1, 4), angle(1, 3), angle(1, 2), Angle.irrational(math.sqrt(2) - 1))


def _triples(group, rng, count: int = 200) -> list[tuple]:
    if isinstance(group, SemidirectGroup):
        draw = lambda: group.sample(rng, count, 20, 4)  # noqa: E731
    else:
        draw = lambda: group.sample(rng, count, 20)  # noqa: E731
    return list(zip(draw(), draw(), draw()))


def test_angle_parsing_and_residue() -> None:
    theta = Angle.parse("-1/3")
    assert (theta.p, theta.q) == (2, 3)
    assert theta.value == Fraction(-1, 3)
    assert str(theta) == "2/3"
    assert Angle.parse("4/6") == angle(2, 3)
    assert angle(1, 3).congruent_up_to_sign(angle(2, 3))
    assert not angle(1, 5).congruent_up_to_sign(angle(2, 5))
    for bad in ("", "1/0", "x/3", "0.5"):
        with pytest.raises(ParseError):
            Angle.parse(bad)
    with pytest.raises(ParseError):
        Angle.irrational(float("nan"))


def test_omega_examples() -> None:
    assert omega(angle(1, 2), (1, 0), (0, 1)) == -1j
    assert omega(angle(1, 3), (2, 1), (1, 2)) == -1
    for theta in ANGLES:
        assert omega(theta, (3, -7), (3, -7)) == 1
    assert omega_index(angle(1, 3), (2, 1), (1, 2)) == (3, 3)


def test_omega_matches_float_formula(rng) -> None:
    theta = angle(3, 7)
    for x, y in zip(LatticeGroup().sample(rng, 100), LatticeGroup().sample(rng, 100)):
        expected = cmath.exp(1j * math.pi * (3 / 7) * (x[1] * y[0] - x[0] * y[1]))
        assert abs(omega(theta, x, y) - expected) <= 1e-12


def test_omega_is_bilinear_in_the_exponent(rng) -> None:
    g = LatticeGroup()
    for theta in ANGLES:
        for x, xp, y in _triples(g, rng, 50):
            lhs = omega(theta, g.mul(x, xp), y)
            assert abs(lhs - omega(theta, x, y) * omega(theta, xp, y)) <= 1e-12


def test_omega_tilde_examples() -> None:
    theta = angle(1, 2)
    assert omega_tilde(theta, T1, GroupElt((1, 0), 1), GroupElt((0, 1), 0)) == -1j
    assert omega_tilde(theta, CAT, GroupElt((0, 0), 3), GroupElt((5, -2), 1)) == 1
    assert omega_tilde(theta, CAT, GroupElt((2, 1), 0), GroupElt((1, 4), 7)) == omega(theta, (2, 1), (1, 4))
    with pytest.raises(HypothesisError):
        omega_tilde(theta, IntMatrix2(2, 0, 0, 1), GroupElt((1, 0), 1), GroupElt((0, 1), 0))


@pytest.mark.parametrize("theta", ANGLES, ids=str)
def test_lattice_cocycle_identity(theta: Angle, rng) -> None:
    g = LatticeGroup()
    check = verify_cocycle_identity(lattice_cocycle(theta), g, triples=_triples(g, rng))
    assert check.samples == 200
    assert check.passed


@pytest.mark.parametrize("a", MATRICES, ids=str)
def test_crossed_cocycle_identity(a: IntMatrix2, rng) -> None:
    g = SemidirectGroup(a)
    check = verify_cocycle_identity(crossed_cocycle(angle(1, 3), a), g, triples=_triples(g, rng))
    assert check.passed


def test_trivial_cocycle_has_zero_deviation(rng) -> None:
    g = LatticeGroup()
    check = verify_cocycle_identity(trivial_cocycle, g, elements=g.sample(rng, 6))
    assert check.samples == 216
    assert check.max_deviation == 0


def test_broken_cocycle_is_detected() -> None:
    theta = angle(1, 3)

    def broken(x, y):
        if (x, y) == ((1, 0), (0, 1)):
            return -omega(theta, x, y)
        return omega(theta, x, y)

    g = LatticeGroup()
    elements = [(1, 0), (0, 1), (1, 1), (0, 0)]
    assert not verify_cocycle_identity(broken, g, elements=elements).passed


def test_semidirect_group_law(rng) -> None:
    g = SemidirectGroup(CAT)
    for x, y, z in _triples(g, rng, 50):
        assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))
        assert g.mul(x, g.inv(x)) == g.identity()
        assert g.mul(g.inv(x), x) == g.identity()


def test_sl2_invariance_of_omega(rng) -> None:
    g = LatticeGroup()
    for theta in ANGLES:
        for x, y, _ in _triples(g, rng, 30):
            a = random_sl2(rng, 5)
            assert abs(omega(theta, a.apply(x), a.apply(y)) - omega(theta, x, y)) <= 1e-12


def test_inverse_pair_symmetry(rng) -> None:
    g = LatticeGroup()
    for x in g.sample(rng, 50):
        assert omega(angle(2, 5), x, g.inv(x)) / omega(angle(2, 5), g.inv(x), x) == 1


def test_pullback_identity_and_sl2(rng) -> None:
    g = LatticeGroup()
    theta = angle(1, 3)
    w = lattice_cocycle(theta)
    samples = g.sample(rng, 40)
    same = pullback(w, lambda x: x, g, samples)
    by_cat = pullback(w, LinearAutomorphism(CAT), g, samples)
    for x, y in zip(samples, samples[::-1]):
        assert same(x, y) == w(x, y)
        assert abs(by_cat(x, y) - w(x, y)) <= 1e-12


def test_pullback_by_orientation_reversal_flips_angle(rng) -> None:
    g = LatticeGroup()
    theta = angle(2, 7)
    samples = g.sample(rng, 40)
    flipped = pullback(lattice_cocycle(theta), LinearAutomorphism(CAT_REVERSOR), g, samples)
    check = verify_cocycle_identity(flipped, g, triples=_triples(g, rng, 50))
    assert check.passed
    for x, y in zip(samples, samples[1:]):
        assert abs(flipped(x, y) - omega(-theta, x, y)) <= 1e-12


def test_pullback_rejects_non_homomorphism(rng) -> None:
    g = LatticeGroup()
    with pytest.raises(AutomorphismError):
        pullback(lattice_cocycle(angle(1, 3)), lambda x: (x[0] + 1, x[1]), g, g.sample(rng, 10))
    with pytest.raises(AutomorphismError):
        LinearAutomorphism(IntMatrix2(2, 0, 0, 1))


def test_reversor_automorphism() -> None:
    phi = reversor_automorphism(CAT, CAT_REVERSOR)
    assert phi(GroupElt((3, -2), 0)) == GroupElt(CAT_REVERSOR.apply((3, -2)), 0)
    assert phi(GroupElt((1, 0), 1)) == GroupElt((1, 0), -1)
    g = GroupElt((4, 5), 2)
    assert phi(phi(g)) == g
    with pytest.raises(AutomorphismError):
        reversor_automorphism(CAT, IntMatrix2(1, 0, 0, -1))


@pytest.mark.parametrize("a, b", [(CAT, CAT_REVERSOR), (T1, IntMatrix2(1, 0, 0, -1))], ids=str)
def test_angle_flip_identity_is_exact(a: IntMatrix2, b: IntMatrix2, rng) -> None:
    group = SemidirectGroup(a)
    phi = reversor_automorphism(a, b, rng)
    for theta in (angle(1, 3), angle(2, 5), Angle.irrational(0.3819660112501051)):
        left, right = group.sample(rng, 200), group.sample(rng, 200)
        flipped = pullback(crossed_cocycle(-theta, a), phi, group, left)
        check = cohomologous_witness_check(
            crossed_cocycle(theta, a), flipped, lambda s: 1, group, zip(left, right)
        )
        assert check.samples == 200
        assert check.passed
        if theta.exact:
            assert check.max_deviation == 0


def test_coboundary_witness(rng) -> None:
    g = LatticeGroup()
    theta = angle(1, 3)
    w = lattice_cocycle(theta)
    phases = {}

    def lam(x):
        if x not in phases:
            phases[x] = cmath.exp(2j * math.pi * float(rng.random()))
        return phases[x]

    w_prime = cocycle_product(w, coboundary(lam, g))
    pairs = list(zip(g.sample(rng, 100), g.sample(rng, 100)))
    conj = lambda x: lam(x).conjugate()  # noqa: E731
    assert cohomologous_witness_check(w, w, lambda x: 1, g, pairs).max_deviation == 0
    assert cohomologous_witness_check(w_prime, w, lam, g, pairs).passed
    assert cohomologous_witness_check(w, w_prime, conj, g, pairs).passed
    assert not cohomologous_witness_check(w, lattice_cocycle(angle(1, 4)), lambda x: 1, g, pairs).passed


def test_certify_twist_isomorphism(rng) -> None:
    a = CAT
    group = SemidirectGroup(a)
    phi = reversor_automorphism(a, CAT_REVERSOR, rng)
    theta = angle(1, 3)
    cert = certify_twist_isomorphism(
        crossed_cocycle(-theta, a), crossed_cocycle(theta, a), phi, lambda s: 1, group, group.sample(rng, 50)
    )
    assert cert.certified


def test_center_for_trace_two(rng) -> None:
    a = IntMatrix2(1, 3, 0, 1)
    group = SemidirectGroup(a)
    samples = group.sample(rng, 30, 10, 3)
    assert is_central(group, GroupElt((1, 0), 0), samples)
    assert not is_central(group, GroupElt((0, 1), 0), samples)
    assert nilpotency_check(group, samples)

    hyper = SemidirectGroup(CAT)
    hyper_samples = hyper.sample(rng, 30, 10, 3)
    assert not nilpotency_check(hyper, hyper_samples)


def test_sampling_is_seeded() -> None:
    g = SemidirectGroup(CAT)
    first = g.sample(np.random.default_rng(7), 20)
    second = g.sample(np.random.default_rng(7), 20)
    assert first == second
    assert all(isinstance(e.x[0], int) and isinstance(e.n, int) for e in first)
