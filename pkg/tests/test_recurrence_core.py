import random
from fractions import Fraction

import pytest
from helpers import random_thm_one
from hypothesis import given, settings
from hypothesis import strategies as st

from trirec.errors import PoleAtIndex, UnsupportedShape
from trirec.heun import HeunParams, heun_family
from trirec.recurrence_core import (
    CoefficientFamily,
    PolyN,
    coeff_A,
    coeff_B,
    family_from_json,
    family_to_json,
    normalize,
    poly_eval,
)
from trirec.scalars import MP, format_scalar, is_mp, parse_scalar

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=20)


# --- scalars ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [("3", Fraction(3)), ("-3/4", Fraction(-3, 4)), ("0.125", Fraction(1, 8)),
     ("1e-3", Fraction(1, 1000)), ("2+0i", Fraction(2))],
)
def test_parse_real(text, expected):
    assert parse_scalar(text) == expected


def test_parse_complex():
    v = parse_scalar("1/2-3/4i")
    assert is_mp(v)
    assert v == MP.mpc(0.5, -0.75)
    assert parse_scalar("1e-2+2j") == MP.mpc(MP.mpf(1) / 100, 2)
    assert format_scalar(v) == "0.5-0.75i"


def test_float_input_uses_shortest_repr():
    assert parse_scalar(0.1) == Fraction(1, 10)


@given(fracs)
def test_format_parse_roundtrip(v):
    assert parse_scalar(format_scalar(v)) == v


# --- polynomials -----------------------------------------------------------


def test_poly_eval_zero_polynomial():
    assert PolyN().degree == -1
    assert poly_eval(PolyN(), 7) == 0


def test_trailing_zeros_stripped():
    assert PolyN.of(1, 2, 0, 0).degree == 1


@given(st.lists(fracs, min_size=1, max_size=6), st.integers(-30, 30))
def test_poly_eval_matches_power_sum(cs, n):
    # oracle: explicit sum of c_j n^j
    assert poly_eval(PolyN(tuple(cs)), n) == sum(c * Fraction(n) ** j for j, c in enumerate(cs))


@given(st.lists(fracs, min_size=1, max_size=4), st.lists(fracs, min_size=1, max_size=4),
       st.integers(-10, 10))
def test_poly_product(p, q, n):
    P, Q = PolyN(tuple(p)), PolyN(tuple(q))
    assert (P * Q)(n) == P(n) * Q(n)


def test_integer_roots():
    p = PolyN.of(4, 5, 1)  # (n+1)(n+4)
    assert p.integer_roots(-10, 10) == [-4, -1]


# --- coefficients --------------------------------------------------------


def test_heun_A0_is_minus_q_over_gamma(heun_ref):
    assert coeff_A(heun_ref, 0) == Fraction(-1, 2)


def test_heun_B1():
    f = heun_family(HeunParams(alpha=1, beta=2, gamma=4, delta=1, q=2))
    assert coeff_B(f, 1) == Fraction(1, 5)


def test_pole_detected():
    f = CoefficientFamily(PolyN.of(1), PolyN.of(-3, 1), PolyN.of(1), PolyN.of(1, 1))
    with pytest.raises(PoleAtIndex) as info:
        coeff_A(f, 3)
    assert info.value.index == 3
    with pytest.raises(PoleAtIndex):
        f.check_poles(0, 10)
    f.check_poles(4, 100)


def test_zero_denominator_rejected():
    with pytest.raises(ValueError):
        CoefficientFamily(PolyN.of(1), PolyN(), PolyN.of(1), PolyN.of(1))


def test_coeff_A_tends_to_leading_ratio():
    rng = random.Random(11)
    for _ in range(10):
        f = random_thm_one(rng)
        nf = normalize(f)
        n = 10**6
        assert abs(coeff_A(f, n) - nf.A) < Fraction(1000, n)


# --- normalization -------------------------------------------------------


def test_normalize_leading_ratios():
    f = CoefficientFamily(PolyN.of(1, 0, 2), PolyN.of(1, 0, 1), PolyN.of(1), PolyN.of(1, 0, 1))
    nf = normalize(f)
    assert (nf.A, nf.Omega[0], nf.omega[0]) == (2, Fraction(1, 2), 1)
    assert nf.t == 2


def test_normalize_rejects_other_shape():
    f = CoefficientFamily(PolyN.of(1, 1), PolyN.of(1), PolyN.of(1, 1), PolyN.of(1))
    with pytest.raises(UnsupportedShape):
        normalize(f)


def test_normalized_reproduces_raw_coefficients():
    rng = random.Random(5)
    for _ in range(10):
        f = random_thm_one(rng)
        nf = normalize(f)
        for n in list(range(1, 200)) + [10**4]:
            assert nf.A_at(n) == coeff_A(f, n)
            assert nf.B_at(n) == coeff_B(f, n)


def test_thm_two_normalization(thm_two):
    nf = normalize(thm_two)
    assert nf.shape == "B" and nf.A == 1 and nf.B == 4
    for n in range(1, 50):
        assert nf.B_at(n) == coeff_B(thm_two, n)
        assert nf.A_at(n) == coeff_A(thm_two, n)


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_family_json_roundtrip(seed):
    f = random_thm_one(random.Random(seed))
    g = family_from_json(family_to_json(f))
    assert g == f


def test_complex_family_evaluates_in_mp():
    f = heun_family(HeunParams(alpha="1+1i", beta=1, gamma=4, delta=1, q="2-1/2i"))
    assert not f.is_exact
    v = coeff_A(f, 0)
    assert abs(v - (-MP.mpc(2, -0.5) / 4)) < MP.mpf(10) ** -70
