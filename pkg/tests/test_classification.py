import random
from fractions import Fraction

from helpers import random_heun_params, random_thm_one
from hypothesis import given, settings
from hypothesis import strategies as st

from trirec.classification import INF, BoundaryVerdict, Kind, Subcase, classify, subcase_of
from trirec.heun import heun_family
from trirec.recurrence_core import CoefficientFamily, PolyN, normalize
from trirec.series_eval import empirical_ratio


def test_heun_reference(heun_ref):
    c = classify(heun_ref)
    assert c.kind == Kind.THM_ONE
    assert c.disc_radius == 1
    assert c.boundary_verdict == BoundaryVerdict.DIVERGES
    # Omega_1 = 3 < omega_1 = 5
    assert c.subcase == Subcase.CASE1
    assert c.to_json() == (
        '{"A": "1", "B": "1", "boundary_verdict": "DivergesPerPaper", '
        '"disc_radius": "1", "kind": "ThmOne", "subcase": "Case1"}'
    )


def test_thm_two_radius(thm_two):
    c = classify(thm_two)
    assert c.kind == Kind.THM_TWO
    assert c.disc_radius == Fraction(1, 2)
    assert c.boundary_verdict == BoundaryVerdict.DIVERGES


def test_thm_two_radius_matches_ratio_scan(thm_two):
    # |d_{n+2}/d_n| -> |B| = 4, i.e. radius 1/2
    r = empirical_ratio(thm_two, 4000, step=2)
    assert abs(float(r) - 4) < 1e-2


def test_two_term_is_gauss_conditional():
    f = CoefficientFamily(PolyN.of(1, 2, 1), PolyN.of(2, 3, 1), PolyN(), PolyN.of(1))
    c = classify(f)
    assert c.kind == Kind.TWO_TERM
    assert c.boundary_verdict == BoundaryVerdict.GAUSS_CONDITIONAL
    assert c.disc_radius == 1


def test_entire_two_term():
    # A_n = 1/(n+1): exp-like, infinite radius
    f = CoefficientFamily(PolyN.of(1), PolyN.of(1, 1), PolyN(), PolyN.of(1))
    assert classify(f).disc_radius == INF


def test_fast_decay_downgrades_verdict():
    # B_n ~ 1/n^2 decays faster than 1/n
    f = CoefficientFamily(PolyN.of(0, 0, 1), PolyN.of(1, 0, 1), PolyN.of(1), PolyN.of(1, 0, 1))
    c = classify(f)
    assert c.kind == Kind.THM_ONE
    assert c.boundary_verdict == BoundaryVerdict.UNKNOWN


def test_unsupported_shape():
    # A_n grows: neither theorem applies
    f = CoefficientFamily(PolyN.of(0, 1), PolyN.of(1), PolyN.of(1), PolyN.of(1))
    c = classify(f)
    assert c.kind == Kind.UNSUPPORTED
    assert c.disc_radius is None


def test_case2_when_subleading_not_smaller():
    # Omega_1 = 7 >= omega_1 = 5
    f = CoefficientFamily(PolyN.of(1, 7, 1), PolyN.of(4, 5, 1), PolyN.of(0, 1), PolyN.of(4, 5, 1))
    assert classify(f).subcase == Subcase.CASE2


def test_complex_subleading_not_applicable():
    f = heun_family(random_heun_params(random.Random(1)).__class__(alpha=1, beta="1+1i", gamma=4, delta=1, q=2))
    c = classify(f)
    assert c.kind == Kind.THM_ONE
    assert c.subcase == Subcase.NOT_APPLICABLE


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_thm_one_radius_is_reciprocal_lead(seed):
    f = random_thm_one(random.Random(seed))
    c = classify(f)
    nf = normalize(f)
    assert c.kind == Kind.THM_ONE
    assert c.disc_radius == 1 / abs(nf.A)
    # sub-case follows the sub-leading coefficients directly
    expected = Subcase.CASE1 if nf.subleading("Omega") < nf.subleading("omega") else Subcase.CASE2
    assert subcase_of(nf, Kind.THM_ONE) == expected == c.subcase


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_heun_always_radius_one(seed):
    c = classify(heun_family(random_heun_params(random.Random(seed))))
    assert c.kind == Kind.THM_ONE and c.disc_radius == 1
