import random
from fractions import Fraction
from math import comb

import pytest
from helpers import random_thm_one
from hypothesis import given, settings
from hypothesis import strategies as st

from trirec.decomposition import (
    Mode,
    decompose,
    decomposition_check,
    eq16_sides,
    eq16_threshold,
    path_oracle,
    path_products,
    pochhammer,
    pochhammer_ratio,
    pochhammer_tail_bound,
    subseries_coefficients,
    subseries_y_tau,
    verify_eq16,
)
from trirec.errors import DomainError, TruncationMismatch, ZeroDenominator
from trirec.recurrence_core import NormalizedFamily
from trirec.series_eval import majorant_sequences


def _fib(n):
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def test_path_counts_are_fibonacci(heun_ref):
    for k in range(13):
        assert len(path_products(heun_ref, 5, k)) == _fib(k)
    assert len(path_products(heun_ref, 5, 12)) == 233


def test_path_oracle_equals_majorant(heun_ref):
    for N in (5, 10):
        assert path_oracle(heun_ref, N, 12) == list(majorant_sequences(heun_ref, N, 12).cbar)


@pytest.mark.parametrize("mode", list(Mode))
@pytest.mark.parametrize("N", [5, 10])
def test_identity_on_heun(heun_ref, mode, N):
    rep = decomposition_check(heun_ref, N, 12, mode=mode)
    assert rep["discrepancy"] == 0
    assert rep["lhs_coeffs"] == path_oracle(heun_ref, N, 12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 20), st.integers(0, 12), st.sampled_from(list(Mode)))
def test_identity_random_families(seed, N, M, mode):
    f = random_thm_one(random.Random(seed))
    rep = decomposition_check(f, N, M, x="3/7", mode=mode)
    assert rep["discrepancy"] == 0
    assert rep["lhs_total"] == rep["rhs_total"]


def test_both_groupings_share_lhs(thm_two):
    a = decomposition_check(thm_two, 4, 10, mode=Mode.GROUP_BY_A)
    b = decomposition_check(thm_two, 4, 10, mode=Mode.GROUP_BY_B)
    assert a["lhs_coeffs"] == b["lhs_coeffs"]
    assert a["discrepancy"] == b["discrepancy"] == 0


def test_float_mode_close(heun_ref):
    rep = decomposition_check(heun_ref, 5, 12, exact=False)
    assert rep["discrepancy"] < 1e-14


def test_truncation_mismatch(heun_ref):
    with pytest.raises(TruncationMismatch):
        decomposition_check(heun_ref, 5, 12, tau_max=3)


def test_constant_bar_family_gives_binomials():
    # all bar values 1: y_tau coefficients count placements, C(i+tau, tau)
    one = (Fraction(1),)
    nf = NormalizedFamily("A", 0, Fraction(1), Fraction(1), one, one, one, one, None)
    for tau in range(4):
        coefs = subseries_coefficients(nf, 3, tau, 8)
        assert coefs == [comb(i + tau, tau) for i in range(9)]


def test_y_tau_monotone_in_I_max(heun_ref):
    prev = Fraction(-1)
    for I_max in range(0, 15):
        v = subseries_y_tau(heun_ref, 5, 2, Fraction(1), I_max)
        assert v >= prev
        prev = v


def test_decompose_total_matches_majorant_sum(heun_ref):
    # with enough depth in both directions the regrouped sum bounds the
    # majorant's truncation at degree M from above
    d = decompose(heun_ref, 5, "1/2", tau_max=6, I_max=12)
    maj = majorant_sequences(heun_ref, 5, 12).cbar
    head = sum(c * Fraction(1, 2) ** i for i, c in enumerate(maj))
    assert d.total() >= head


# --- Pochhammer ----------------------------------------------------------


def test_pochhammer_basics():
    assert pochhammer(3, 0) == 1
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert pochhammer_ratio(2, 5, 3) == Fraction(2 * 3 * 4, 5 * 6 * 7)
    with pytest.raises(ZeroDenominator):
        pochhammer_ratio(1, -2, 4)


@given(st.integers(1, 40), st.integers(0, 5), st.integers(1, 3), st.integers(0, 20), st.integers(1, 60))
def test_eq16_lhs_matches_direct_product(N, h, r, i2r, i):
    if N - h <= 0:
        return
    a = N + 2 * (r + 1) + i2r
    lhs, _ = eq16_sides(N, h, r, i2r, i)
    assert lhs == pochhammer_ratio(a - h, a, i)


def test_eq16_reference_point():
    assert eq16_sides(6, 2, 1, 0, 4) == (Fraction(6, 13), Fraction(9, 4))
    assert not verify_eq16(6, 2, 1, 0, 4)


def test_eq16_threshold_is_tight():
    for N, h, r in [(6, 2, 1), (6, 2, 3), (6, 1, 1), (30, 3, 2)]:
        m = eq16_threshold(N, h, r, 0)
        assert not verify_eq16(N, h, r, 0, m - 1)
        assert all(verify_eq16(N, h, r, 0, i) for i in range(m, m + 300))


def test_eq16_h_zero():
    assert eq16_sides(5, 0, 1, 0, 7) == (1, Fraction(1, 2))
    assert eq16_threshold(5, 0, 1, 0) == 0


def test_eq16_rhs_decays():
    vals = [pochhammer_tail_bound(6, 2, 1, 0, i) for i in (10, 100, 1000)]
    assert vals[0] > vals[1] > vals[2]


def test_eq16_domain():
    with pytest.raises(DomainError):
        verify_eq16(3, 3, 1, 0, 10)
