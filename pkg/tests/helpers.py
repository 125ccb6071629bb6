"""Random family generators and shared constants for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from trirec.heun import HeunParams
from trirec.recurrence_core import CoefficientFamily, PolyN

HEUN_REF = dict(alpha=1, beta=1, gamma=4, delta=1, q=2)


def rand_frac(rng: random.Random, lo: int, hi: int, den: int = 6) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def random_thm_one(rng: random.Random, t: int | None = None) -> CoefficientFamily:
    """ThmOne family whose denominators have only negative real roots, so
    no pole at a nonnegative index."""
    t = rng.randint(1, 3) if t is None else t

    def den():
        p = PolyN.of(1)
        for _ in range(t):
            p = p * PolyN.of(Fraction(rng.randint(1, 12), rng.randint(1, 4)), 1)
        return p

    a_num = PolyN(tuple(rand_frac(rng, -4, 4) for _ in range(t)) + (rand_frac(rng, 1, 3) * rng.choice((1, -1)),))
    b_deg = rng.randint(0, t - 1)
    b_num = PolyN(tuple(rand_frac(rng, -4, 4) for _ in range(b_deg)) + (rand_frac(rng, 1, 3),))
    return CoefficientFamily(a_num, den(), b_num, den())


def random_heun_params(rng: random.Random) -> HeunParams:
    beta = Fraction(0)
    while beta == 0:
        beta = rand_frac(rng, -3, 3)
    return HeunParams(
        alpha=rand_frac(rng, -3, 3),
        beta=beta,
        gamma=Fraction(rng.randint(1, 30), rng.randint(1, 6)),
        delta=rand_frac(rng, -3, 3),
        q=rand_frac(rng, -5, 5),
    )


def ode_residual(p: HeunParams, d: list, lam) -> list:
    """Coefficients of x(x-1) L[y] for y = sum d_n x^(n+lam), from the ODE
    itself: x(x-1)y'' + (beta x^2 + (gamma+delta-beta) x - gamma) y' + (alpha beta x - q) y,
    all divided by x^(lam-1)."""
    al, be, ga, de, q = p.alpha, p.beta, p.gamma, p.delta, p.q
    out = [Fraction(0)] * (len(d) + 2)
    for n, c in enumerate(d):
        e = n + lam  # exponent of this term
        # x^2 y'' -> e(e-1) x^e ; -x y'' -> -e(e-1) x^(e-1)
        out[n + 1] += e * (e - 1) * c
        out[n] -= e * (e - 1) * c
        # beta x^2 y' -> beta e x^(e+1); (gamma+delta-beta) x y' -> ... x^e; -gamma y' -> x^(e-1)
        out[n + 2] += be * e * c if n + 2 < len(out) else 0
        out[n + 1] += (ga + de - be) * e * c
        out[n] -= ga * e * c
        # alpha beta x y -> x^(e+1); -q y -> x^e
        out[n + 2] += al * be * c if n + 2 < len(out) else 0
        out[n + 1] -= q * c
    return out


# filled by the acceptance tests, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []
