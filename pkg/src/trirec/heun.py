"""Confluent Heun recurrence and the two-term hypergeometric baseline.

The confluent Heun equation in non-symmetrical canonical form,

    y'' + (beta + gamma/x + delta/(x-1)) y' + (alpha beta x - q)/(x(x-1)) y = 0,

has Frobenius solutions ``sum d_n x**(n+lam)`` about x = 0 with
``lam`` in {0, 1-gamma}.  Their coefficients obey a three-term recurrence
with

    A_n = (n^2 + (2 lam - beta + gamma + delta - 1) n
           + lam (lam - beta + gamma + delta - 1) - q) / D(n)
    B_n = beta (n + lam + alpha - 1) / D(n)
    D(n) = n^2 + (2 lam + 1 + gamma) n + (lam + 1)(lam + gamma).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PoleAtIndex
from .recurrence_core import CoefficientFamily, PolyN
from .scalars import MP, exact_sqrt, is_exact, is_real, parse_scalar, real_part, to_mp, unify

__all__ = [
    "HeunParams",
    "heun_family",
    "hypergeometric_reduction",
    "hypergeometric_family",
    "gauss_boundary_test",
    "GaussVerdict",
]


@dataclass(frozen=True)
class HeunParams:
    """Parameters of the confluent Heun equation.

    ``lambda_root`` selects the indicial exponent: ``"0"`` or ``"1-gamma"``.
    """

    alpha: object = 0
    beta: object = 1
    gamma: object = 1
    delta: object = 1
    q: object = 0
    lambda_root: str = "0"

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta", "q"):
            object.__setattr__(self, name, parse_scalar(getattr(self, name)))
        root = str(self.lambda_root).replace(" ", "")
        if root not in ("0", "1-gamma"):
            raise ValueError("lambda_root must be '0' or '1-gamma'")
        object.__setattr__(self, "lambda_root", root)

    @property
    def lam(self):
        return Fraction(0) if self.lambda_root == "0" else 1 - self.gamma

    @property
    def repeated_root(self) -> bool:
        """True when gamma = 1; the second solution is logarithmic (not built here)."""
        return self.gamma == 1


def _is_nonpositive_integer(v) -> bool:
    if not is_real(v):
        return False
    r = real_part(v)
    return r <= 0 and r == int(r)


def heun_family(p: HeunParams) -> CoefficientFamily:
    """Recurrence family of the Frobenius series at the chosen root.

    >>> f = heun_family(HeunParams(alpha=1, beta=1, gamma=4, delta=1, q=2))
    >>> str(f.a_num), str(f.a_den), str(f.b_num)
    ('n^2 + (3)*n + (-2)', 'n^2 + (5)*n + (4)', 'n')
    """
    lam, beta, gamma, delta, q, alpha = unify([p.lam, p.beta, p.gamma, p.delta, p.q, p.alpha])
    s = lam - beta + gamma + delta - 1
    a_num = PolyN.of(lam * s - q, lam + s, 1)
    den = PolyN.of((lam + 1) * (lam + gamma), 2 * lam + 1 + gamma, 1)
    b_num = PolyN.of(beta * (lam + alpha - 1), beta)
    # D(n) = (n + lam + 1)(n + lam + gamma)
    for root in (-(lam + 1), -(lam + gamma)):
        if _is_nonpositive_integer(-root):
            raise PoleAtIndex(int(real_part(root)), "a_den")
    return CoefficientFamily(a_num, den, b_num, den)


def hypergeometric_reduction(p: HeunParams) -> tuple:
    """``(a, b, c)`` of the 2F1 that the beta = 0 equation reduces to.

    ``c = gamma`` and ``a, b`` are the roots of
    ``z^2 - (gamma + delta - 1) z - q = 0``, larger-real-part root first.

    >>> hypergeometric_reduction(HeunParams(beta=0, gamma=1, delta=1, q=2))
    (Fraction(2, 1), Fraction(-1, 1), Fraction(1, 1))
    """
    if p.beta != 0:
        raise ValueError("hypergeometric reduction requires beta = 0")
    s = p.gamma + p.delta - 1
    disc = s * s + 4 * p.q
    if is_exact(disc) and disc >= 0:
        root = exact_sqrt(disc)
        if isinstance(root, Fraction):
            return (s + root) / 2, (s - root) / 2, p.gamma
    sq = MP.sqrt(to_mp(disc))
    s = to_mp(s)
    return (s + sq) / 2, (s - sq) / 2, p.gamma


def hypergeometric_family(a, b, c) -> CoefficientFamily:
    """Two-term family with ``A_n = (n+a)(n+b) / ((n+1)(n+c))``.

    ``a + b`` and ``a b`` are real whenever ``a, b`` are conjugate, so such
    pairs still give real coefficients.
    """
    a, b, c = (parse_scalar(v) for v in (a, b, c))
    s, prod = _realify(a + b), _realify(a * b)
    num = PolyN.of(prod, s, 1)
    den = PolyN.of(1, 1) * PolyN.of(c, 1)
    return CoefficientFamily(num, den, PolyN(), PolyN.of(1))


def _realify(v):
    if is_exact(v):
        return v
    if abs(MP.im(v)) <= MP.eps * max(1, abs(v)) * 16:
        return MP.re(v)
    return v


class GaussVerdict(str, enum.Enum):
    ABSOLUTELY_CONVERGENT = "AbsolutelyConvergent"
    DIVERGENT = "Divergent"


def gauss_boundary_test(a, b, c) -> GaussVerdict:
    """Absolute convergence of 2F1(a, b; c; x) on |x| = 1.

    >>> gauss_boundary_test("1/4", "1/4", 1).value
    'AbsolutelyConvergent'
    >>> gauss_boundary_test("1/2", "1/2", 1).value
    'Divergent'
    """
    a, b, c = unify([parse_scalar(v) for v in (a, b, c)])
    if _is_nonpositive_integer(c):
        raise DomainError(f"c = {c} is a nonpositive integer")
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        return GaussVerdict.ABSOLUTELY_CONVERGENT
    if real_part(c) > real_part(a + b):
        return GaussVerdict.ABSOLUTELY_CONVERGENT
    return GaussVerdict.DIVERGENT
