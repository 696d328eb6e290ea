from __future__ import annotations

import itertools
import math

import pytest

from opentorus.errors import HypothesisError, IntRangeError, ParseError
from opentorus.intmat import (
    IDENTITY,
    IntMatrix2,
    ReducedForm,
    TraceClass,
    center_rank,
    equivalent_matrices,
    fixed_vector,
    format_matrix,
    parse_matrix,
    random_sl2,
    reversing_symmetry,
    smith_normal_form,
    trace2_normal_form,
    trace_class,
)
from opentorus.limits import INT64_MAX

CAT = IntMatrix2(2, 1, 1, 1)
NO_REVERSOR = IntMatrix2(4, 9, 7, 16)


def _random_matrix(rng, radius: int = 20) -> IntMatrix2:
    return IntMatrix2(*(int(v) for v in rng.integers(-radius, radius + 1, size=4)))


def _random_unimodular(rng) -> IntMatrix2:
    m = random_sl2(rng, 5)
    if rng.integers(0, 2):
        m = m @ IntMatrix2(1, 0, 0, -1)
    return m


@pytest.mark.parametrize(
    "m, diag",
    [
        (IntMatrix2(0, 0, 0, 0), (0, 0)),
        (IntMatrix2(0, 1, 1, -1), (1, 1)),
        (IntMatrix2(0, 1, 2, -2), (1, 2)),
        (IntMatrix2(0, 3, 0, 0), (3, 0)),
        (IntMatrix2(0, 0, 0, 5), (5, 0)),
        (IntMatrix2(-4, 0, 0, 6), (2, 12)),
    ],
)
def test_snf_examples(m: IntMatrix2, diag: tuple[int, int]) -> None:
    snf = smith_normal_form(m)
    assert snf.diag == diag
    assert snf.reproduces(m)


def test_snf_contract_on_random_matrices(rng) -> None:
    for _ in range(300):
        m = _random_matrix(rng)
        snf = smith_normal_form(m)
        h1, h2 = snf.diag
        assert snf.reproduces(m)
        assert abs(snf.left.det()) == 1 and abs(snf.right.det()) == 1
        assert h1 >= 0 and h2 >= 0
        assert h2 == 0 or h2 % h1 == 0
        assert h1 * h2 == abs(m.det())
        assert h1 == math.gcd(math.gcd(m.a, m.b), math.gcd(m.c, m.d))


def test_snf_invariant_under_unimodular_multiplication(rng) -> None:
    for _ in range(100):
        m = _random_matrix(rng, 10)
        p, q = _random_unimodular(rng), _random_unimodular(rng)
        assert smith_normal_form(p @ m @ q).diag == smith_normal_form(m).diag


def test_snf_matches_sympy(rng) -> None:
    pytest.importorskip("sympy")
    from sympy.polys.domains import ZZ
    from sympy.polys.matrices import DomainMatrix
    from sympy.polys.matrices.normalforms import smith_normal_form as sympy_snf

    checked = 0
    while checked < 60:
        m = _random_matrix(rng, 12)
        if m.det() == 0:
            continue
        dm = DomainMatrix([[ZZ(m.a), ZZ(m.b)], [ZZ(m.c), ZZ(m.d)]], (2, 2), ZZ)
        ref = sympy_snf(dm).to_Matrix()
        expected = tuple(sorted((abs(int(ref[0, 0])), abs(int(ref[1, 1])))))
        assert smith_normal_form(m).diag == expected
        checked += 1


def test_products_are_range_checked() -> None:
    big = IntMatrix2(INT64_MAX, 0, 0, 1)
    with pytest.raises(IntRangeError):
        big @ IntMatrix2(2, 0, 0, 1)
    with pytest.raises(IntRangeError):
        IntMatrix2(INT64_MAX + 1, 0, 0, 1)


def test_power_cap_and_inverse() -> None:
    t = IntMatrix2(1, 1, 0, 1)
    assert t.power(62) == IntMatrix2(1, 62, 0, 1)
    assert t.power(-3) == IntMatrix2(1, -3, 0, 1)
    with pytest.raises(IntRangeError):
        t.power(63)
    b = IntMatrix2(1, -1, 0, -1)
    assert b @ b.inverse() == IDENTITY
    with pytest.raises(HypothesisError):
        IntMatrix2(2, 0, 0, 1).inverse()


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2,1;1,1", CAT),
        (" 1, -3 ; 0 ,1 ", IntMatrix2(1, -3, 0, 1)),
    ],
)
def test_parse_matrix(text: str, expected: IntMatrix2) -> None:
    assert parse_matrix(text) == expected
    assert parse_matrix(format_matrix(expected)) == expected


@pytest.mark.parametrize("text", ["", "1,2,3;4", "1,2;3", "a,b;c,d", "1,2;3,4;5,6", "1.5,0;0,1"])
def test_parse_matrix_rejects_malformed_text(text: str) -> None:
    with pytest.raises(ParseError):
        parse_matrix(text)


@pytest.mark.parametrize(
    "m, tag",
    [
        (IntMatrix2(0, -1, 1, 0), TraceClass.FINITE_ORDER),
        (IntMatrix2(1, 1, 0, 1), TraceClass.UNIPOTENT_PLUS),
        (CAT, TraceClass.HYPERBOLIC),
        (IDENTITY, TraceClass.IDENTITY),
        (-IDENTITY, TraceClass.MINUS_IDENTITY),
        (IntMatrix2(-1, 1, 0, -1), TraceClass.HYPERBOLIC),
    ],
)
def test_trace_class_examples(m: IntMatrix2, tag: TraceClass) -> None:
    assert trace_class(m) is tag


def test_trace_class_agrees_with_powers() -> None:
    span = range(-5, 6)
    for a, b, c, d in itertools.product(span, repeat=4):
        m = IntMatrix2(a, b, c, d)
        if m.det() != 1:
            continue
        finite = any(m.power(n) == IDENTITY for n in range(1, 13))
        assert finite == (not trace_class(m).infinite_order), format_matrix(m)


def test_trace_class_rejects_non_sl2() -> None:
    with pytest.raises(HypothesisError):
        trace_class(IntMatrix2(1, 0, 0, -1))


@pytest.mark.parametrize(
    "m, n, expected",
    [
        (IntMatrix2(0, 1, 1, -1), IDENTITY, True),
        (IntMatrix2(0, 3, 0, 0), IntMatrix2(3, 0, 0, 0), True),
        (IntMatrix2(0, 1, 2, -2), IntMatrix2(0, 1, 1, -1), False),
    ],
)
def test_equivalent_matrices(m: IntMatrix2, n: IntMatrix2, expected: bool) -> None:
    assert equivalent_matrices(m, n) is expected
    assert equivalent_matrices(n, m) is expected


@pytest.mark.parametrize(
    "m, h1, form",
    [
        (IntMatrix2(1, 3, 0, 1), 3, ReducedForm.UPPER),
        (IntMatrix2(1, 0, 2, 1), 2, ReducedForm.LOWER),
    ],
)
def test_trace2_normal_form_fixed_points(m: IntMatrix2, h1: int, form: ReducedForm) -> None:
    nf = trace2_normal_form(m)
    assert (nf.h1, nf.form, nf.conjugator) == (h1, form, IDENTITY)


def test_trace2_normal_form_general_matrix() -> None:
    a = IntMatrix2(-1, -1, 4, 3)
    nf = trace2_normal_form(a)
    p = nf.conjugator
    assert nf.h1 == 1
    assert p.det() == 1
    assert p @ a @ p.inverse() in (IntMatrix2(1, 1, 0, 1), IntMatrix2(1, 0, 1, 1))


def test_trace2_normal_form_recovers_random_conjugates(rng) -> None:
    for _ in range(20):
        h = int(rng.integers(1, 9))
        p = random_sl2(rng, 4)
        a = p @ IntMatrix2(1, h, 0, 1) @ p.inverse()
        nf = trace2_normal_form(a)
        assert nf.h1 == h
        assert nf.conjugator @ a @ nf.conjugator.inverse() == nf.reduced_matrix()
        assert smith_normal_form(a - IDENTITY).diag == (h, 0)
        assert smith_normal_form(IDENTITY - a.inverse()).diag == (h, 0)


def test_trace2_normal_form_rejects_other_classes() -> None:
    for m in (CAT, IDENTITY, IntMatrix2(0, -1, 1, 0)):
        with pytest.raises(HypothesisError):
            trace2_normal_form(m)


@pytest.mark.parametrize(
    "a, expected",
    [
        (CAT, IntMatrix2(1, -1, 0, -1)),
        (IntMatrix2(1, 1, 0, 1), IntMatrix2(1, 0, 0, -1)),
    ],
)
def test_reversing_symmetry_divisibility(a: IntMatrix2, expected: IntMatrix2) -> None:
    b = reversing_symmetry(a, 40)
    assert b == expected
    assert b @ a == a.inverse() @ b
    assert b @ a @ b.inverse() == a.inverse()


def test_reversing_symmetry_none_within_bound() -> None:
    assert reversing_symmetry(NO_REVERSOR, 40) is None


def _first_reversor(a: IntMatrix2, bound: int) -> IntMatrix2 | None:
    a_inv = a.inverse()
    span = range(-bound, bound + 1)
    for entries in itertools.product(span, repeat=4):
        b = IntMatrix2(*entries)
        if b.det() == -1 and b @ a == a_inv @ b:
            return b
    return None


def test_reversor_search_order_matches_exhaustive_scan() -> None:
    bound = 3
    span = range(-3, 4)
    for a, b, c, d in itertools.product(span, repeat=4):
        m = IntMatrix2(a, b, c, d)
        if m.det() != 1 or m in (IDENTITY, -IDENTITY):
            continue
        diff = a - d
        shortcut = (c != 0 and diff % c == 0) or (b != 0 and diff % b == 0)
        found = reversing_symmetry(m, bound)
        if found is not None:
            assert found.det() == -1 and found @ m == m.inverse() @ found
        if not shortcut:
            assert found == _first_reversor(m, bound)


def test_reversing_symmetry_preconditions() -> None:
    with pytest.raises(HypothesisError):
        reversing_symmetry(IDENTITY, 5)
    with pytest.raises(HypothesisError):
        reversing_symmetry(-IDENTITY, 5)
    with pytest.raises(HypothesisError):
        reversing_symmetry(IntMatrix2(2, 0, 0, 1), 5)
    with pytest.raises(ValueError):
        reversing_symmetry(CAT, 0)


@pytest.mark.parametrize(
    "a, rank",
    [
        (IDENTITY, 2),
        (IntMatrix2(1, 3, 0, 1), 1),
        (CAT, 0),
    ],
)
def test_center_rank_examples(a: IntMatrix2, rank: int) -> None:
    assert center_rank(a) == rank


def test_center_rank_is_one_exactly_for_trace_two() -> None:
    span = range(-6, 7)
    for a, b, c, d in itertools.product(span, repeat=4):
        m = IntMatrix2(a, b, c, d)
        if m.det() != 1:
            continue
        assert (center_rank(m) == 1) == (m.trace() == 2 and m != IDENTITY)


def test_fixed_vector() -> None:
    assert fixed_vector(IntMatrix2(1, 3, 0, 1)) == (1, 0)
    assert fixed_vector(IntMatrix2(1, 0, 2, 1)) == (0, 1)
    a = IntMatrix2(-1, -1, 4, 3)
    v = fixed_vector(a)
    assert a.apply(v) == v
    assert math.gcd(*v) == 1
    with pytest.raises(HypothesisError):
        fixed_vector(CAT)


def test_random_sl2_stays_in_sl2(rng) -> None:
    for _ in range(50):
        assert random_sl2(rng, 8).det() == 1
