from fractions import Fraction

import mpmath
import pytest
from helpers import ode_residual

from trirec.errors import DomainError, PoleAtIndex
from trirec.heun import (
    GaussVerdict,
    HeunParams,
    gauss_boundary_test,
    heun_family,
    hypergeometric_family,
    hypergeometric_reduction,
)
from trirec.series_eval import eval_series, generate_coeffs


@pytest.mark.parametrize("root", ["0", "1-gamma"])
def test_recurrence_solves_the_ode(root):
    p = HeunParams(alpha="1/3", beta=2, gamma="7/2", delta=-1, q="5/4", lambda_root=root)
    d = list(generate_coeffs(heun_family(p), 1, 40).d)
    res = ode_residual(p, d, p.lam)
    # the truncation only disturbs the top two powers
    assert all(r == 0 for r in res[: len(d)])
    assert any(r != 0 for r in res[len(d):])


def test_reference_polynomials(heun_ref):
    assert str(heun_ref.a_num) == "n^2 + (3)*n + (-2)"
    assert str(heun_ref.a_den) == "n^2 + (5)*n + (4)"
    assert str(heun_ref.b_num) == "n"


def test_beta_zero_is_two_term():
    assert heun_family(HeunParams(beta=0, gamma=2)).is_two_term


def test_pole_from_gamma():
    # second root with gamma = 3: lam = -2, D(n) = (n-1)(n+1) vanishes at n = 1
    with pytest.raises(PoleAtIndex):
        heun_family(HeunParams(gamma=3, lambda_root="1-gamma"))
    with pytest.raises(PoleAtIndex):
        heun_family(HeunParams(gamma=-2))


def test_repeated_root_flag():
    assert HeunParams(gamma=1).repeated_root
    assert not HeunParams(gamma=2).repeated_root


def test_reduction_roots():
    assert hypergeometric_reduction(HeunParams(beta=0, gamma=1, delta=1, q=2)) == (2, -1, 1)
    a, b, c = hypergeometric_reduction(HeunParams(beta=0, gamma=3, delta=1, q=0))
    assert {a, b} == {0, 3} and c == 3


def test_reduction_irrational_roots():
    a, b, c = hypergeometric_reduction(HeunParams(beta=0, gamma=2, delta=1, q=1))
    # z^2 - 2z - 1 = 0
    with mpmath.workdps(80):
        assert abs(a - (1 + mpmath.sqrt(2))) < mpmath.mpf(10) ** -60
        assert abs(b - (1 - mpmath.sqrt(2))) < mpmath.mpf(10) ** -60


@pytest.mark.parametrize("gamma, delta, q", [(2, 1, 1), ("5/2", "1/3", "-1/2"), (3, -1, 2)])
def test_reduced_series_matches_hyp2f1(gamma, delta, q):
    p = HeunParams(beta=0, gamma=gamma, delta=delta, q=q)
    a, b, c = hypergeometric_reduction(p)
    x = 0.4
    got = eval_series(heun_family(p), x=x, tol=1e-16).value
    with mpmath.workdps(40):
        want = mpmath.hyp2f1(mpmath.mpmathify(str(a)), mpmath.mpmathify(str(b)),
                             mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator, x)
    assert abs(got - complex(want)) <= 1e-13 * abs(complex(want))


def test_hypergeometric_family_coefficients():
    # 2F1 coefficient ratio (n+a)(n+b)/((n+1)(n+c))
    f = hypergeometric_family("1/2", "1/3", 2)
    d = generate_coeffs(f, 1, 6).d
    for n in range(6):
        assert d[n + 1] / d[n] == (n + Fraction(1, 2)) * (n + Fraction(1, 3)) / ((n + 1) * (n + 2))


@pytest.mark.parametrize(
    "a, b, c, verdict",
    [("1/4", "1/4", 1, GaussVerdict.ABSOLUTELY_CONVERGENT),
     ("1/2", "1/2", 1, GaussVerdict.DIVERGENT),
     (0, 5, 1, GaussVerdict.ABSOLUTELY_CONVERGENT),
     (-3, 5, 1, GaussVerdict.ABSOLUTELY_CONVERGENT),
     ("1+1i", "1-1i", "5/2", GaussVerdict.ABSOLUTELY_CONVERGENT),
     ("1+1i", "1-1i", 2, GaussVerdict.DIVERGENT)],
)
def test_gauss_test(a, b, c, verdict):
    assert gauss_boundary_test(a, b, c) == verdict


def test_gauss_rejects_nonpositive_integer_c():
    with pytest.raises(DomainError):
        gauss_boundary_test(1, 1, -2)
