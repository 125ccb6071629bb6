"""Regrouping of the majorant series into sub-series, and Pochhammer tools.

The majorant ``|c_k|`` started at index N is a sum over lattice paths
from 0 to k made of A-steps (length 1, weight ``|A_{N+p}|`` when leaving
position p) and B-steps (length 2, weight ``|B_{N+p+1}|``).  Grouping the
paths by the number of B-steps gives the sub-series ``y_tau(z)`` with
``z = |A||x|`` and ``eta = |B||x|^2`` (``GroupByB``); grouping by the number
of A-steps swaps the roles (``GroupByA``, ``z = |B||x|^2``, ``eta = |A||x|``).
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, TruncationMismatch, ZeroDenominator
from .recurrence_core import CoefficientFamily, NormalizedFamily, normalize
from .scalars import format_scalar, is_exact, parse_scalar, unify
from .series_eval import majorant_sequences

__all__ = [
    "Mode",
    "Decomposition",
    "bar_moduli",
    "subseries_coefficients",
    "subseries_y_tau",
    "decompose",
    "path_products",
    "path_oracle",
    "decomposition_check",
    "pochhammer",
    "pochhammer_ratio",
    "pochhammer_tail_bound",
    "eq16_sides",
    "verify_eq16",
    "eq16_threshold",
]


class Mode(str, enum.Enum):
    GROUP_BY_B = "GroupByB"
    GROUP_BY_A = "GroupByA"


# (primary step length, counted step length)
_STEPS = {Mode.GROUP_BY_B: (1, 2), Mode.GROUP_BY_A: (2, 1)}


def bar_moduli(nf: NormalizedFamily, n: int, exact: bool = True) -> tuple:
    """``(|A_n|/|A|, |B_n|/|B|)``; a zero scale gives a zero bar value."""
    a = abs(nf.A_bar(n)) if nf.A != 0 else Fraction(0)
    b = abs(nf.B_bar(n)) if nf.B != 0 else Fraction(0)
    if not exact:
        return float(a), float(b)
    return a, b


def _weights(nf: NormalizedFamily, N: int, mode: Mode, exact: bool):
    """Return callables giving the bar weight of the primary step and the
    counted step leaving lattice position ``p``."""
    cache: dict[int, tuple] = {}

    def at(n):
        if n not in cache:
            cache[n] = bar_moduli(nf, n, exact)
        return cache[n]

    def a_step(p):
        return at(N + p)[0]

    def b_step(p):
        return at(N + p + 1)[1]

    if mode == Mode.GROUP_BY_B:
        return a_step, b_step
    return b_step, a_step


def subseries_coefficients(nf: NormalizedFamily, N: int, tau: int, I_max: int,
                           mode: Mode = Mode.GROUP_BY_B, exact: bool = True) -> list:
    """Power-series coefficients ``[z^0 .. z^I_max]`` of ``|y_tau(z)|``.

    Level k of the nested sum carries the running count ``i_{2k}`` of
    primary steps taken before the (k+1)-th counted step.  Between two
    counted steps the primary steps run over ``i_{2(k-1)} .. i_{2k}-1``;
    with ``k`` counted steps already taken, primary step number ``j`` starts
    at lattice position ``j*len_p + k*len_s``.
    """
    if tau < 0 or I_max < 0:
        raise ValueError("tau and I_max must be nonnegative")
    mode = Mode(mode)
    len_p, len_s = _STEPS[mode]
    primary, counted = _weights(nf, N, mode, exact)
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0

    def pos(j, k):
        return j * len_p + k * len_s

    # level 0: i_0 primary steps, then (if tau > 0) the first counted step
    v = [zero] * (I_max + 1)
    prod = one
    for i in range(I_max + 1):
        v[i] = prod
        prod = prod * primary(pos(i, 0))
    if tau == 0:
        return v
    v = [v[i] * counted(pos(i, 0)) for i in range(I_max + 1)]
    for k in range(1, tau + 1):
        # w[i] = sum_{j <= i} v[j] * prod_{l=j}^{i-1} primary(pos(l, k))
        w = [zero] * (I_max + 1)
        acc = zero
        for i in range(I_max + 1):
            acc = acc * primary(pos(i - 1, k)) + v[i] if i > 0 else v[0]
            w[i] = acc
        if k < tau:
            v = [w[i] * counted(pos(i, k)) for i in range(I_max + 1)]
        else:
            v = w
    return v


def subseries_y_tau(f: CoefficientFamily, N: int, tau: int, z, I_max: int,
                    mode: Mode = Mode.GROUP_BY_B, exact: bool = True):
    """Truncated ``|y_tau(z)| = sum_{i <= I_max} coef_i z^i``."""
    nf = normalize(f)
    z = parse_scalar(z) if exact else float(z)
    coefs = subseries_coefficients(nf, N, tau, I_max, mode, exact)
    total = Fraction(0) if exact else 0.0
    for c in reversed(coefs):
        total = total * z + c
    return total


@dataclass(frozen=True)
class Decomposition:
    N: int
    mode: Mode
    tau_max: int
    I_max: int
    z: object
    eta: object
    tables: tuple  # truncated |y_tau(z)| for tau = 0..tau_max

    def total(self):
        return sum(y * self.eta**tau for tau, y in enumerate(self.tables))


def _eta_z(nf: NormalizedFamily, x_abs, mode: Mode):
    absA, absB = abs(nf.A), abs(nf.B)
    if mode == Mode.GROUP_BY_B:
        return absB * x_abs * x_abs, absA * x_abs
    return absA * x_abs, absB * x_abs * x_abs


def decompose(f: CoefficientFamily, N: int, x_abs, tau_max: int, I_max: int,
              mode: Mode = Mode.GROUP_BY_B, exact: bool = True) -> Decomposition:
    nf = normalize(f)
    mode = Mode(mode)
    x_abs = parse_scalar(x_abs) if exact else float(x_abs)
    eta, z = _eta_z(nf, x_abs, mode)
    tables = []
    for tau in range(tau_max + 1):
        coefs = subseries_coefficients(nf, N, tau, I_max, mode, exact)
        total = Fraction(0) if exact else 0.0
        for c in reversed(coefs):
            total = total * z + c
        tables.append(total)
    return Decomposition(N, mode, tau_max, I_max, z, eta, tuple(tables))


def path_products(f: CoefficientFamily, N: int, k: int) -> list[tuple[str, object]]:
    """Every composition of ``k`` into A-steps (1) and B-steps (2) with its
    weight, a product of raw moduli |A_.| and |B_.| (exhaustive)."""
    out = []

    def walk(p, steps, weight):
        if p == k:
            out.append(("".join(steps), weight))
            return
        walk(p + 1, steps + ["A"], weight * abs(f.A(N + p)))
        if p + 2 <= k:
            walk(p + 2, steps + ["B"], weight * abs(f.B(N + p + 1)))

    walk(0, [], Fraction(1))
    return out


def path_oracle(f: CoefficientFamily, N: int, M: int) -> list:
    """``|c_k|`` for k = 0..M by brute-force path enumeration."""
    return [sum(w for _, w in path_products(f, N, k)) for k in range(M + 1)]


def _rhs_coefficients(f: CoefficientFamily, N: int, M: int, mode: Mode, tau_max: int | None,
                      exact: bool = True):
    """Coefficient of |x|^i, i <= M, in sum_tau eta^tau |y_tau(z)|."""
    nf = normalize(f)
    len_p, len_s = _STEPS[mode]
    needed = M // len_s
    if tau_max is None:
        tau_max = needed
    if tau_max < needed:
        raise TruncationMismatch(
            f"tau_max = {tau_max} cannot reach degree {M}; need {needed} for {mode.value}"
        )
    absA, absB = abs(nf.A), abs(nf.B)
    scale_p, scale_s = (absA, absB) if mode == Mode.GROUP_BY_B else (absB, absA)
    if exact:
        rhs = unify([Fraction(0)] * (M + 1) + [scale_p, scale_s])[: M + 1]
    else:
        scale_p, scale_s = float(scale_p), float(scale_s)
        rhs = [0.0] * (M + 1)
    for tau in range(min(tau_max, needed) + 1):
        room = M - tau * len_s
        if room < 0:
            break
        coefs = subseries_coefficients(nf, N, tau, room // len_p, mode, exact)
        for i, c in enumerate(coefs):
            deg = i * len_p + tau * len_s
            rhs[deg] += c * scale_p**i * scale_s**tau
    return rhs


def decomposition_check(f: CoefficientFamily, N: int, M: int, x=1,
                        mode: Mode = Mode.GROUP_BY_B, tau_max: int | None = None,
                        exact: bool = True) -> dict:
    """Compare the majorant series with its regrouping, degree by degree.

    Both sides are truncated at total |x|-degree M, the only truncation
    under which the rearrangement is an identity at finite order.
    Returns ``lhs_coeffs``, ``rhs_coeffs``, ``discrepancy`` (max abs
    coefficient difference) and the totals at ``|x|``.  With
    ``exact=False`` both sides are built in double precision.
    """
    mode = Mode(mode)
    lhs = list(majorant_sequences(f, N, M, "exact" if exact else "float").cbar)
    rhs = _rhs_coefficients(f, N, M, mode, tau_max, exact)
    discrepancy = max(abs(a - b) for a, b in zip(lhs, rhs))
    xa = abs(parse_scalar(x))
    if not exact:
        xa = float(xa)
    lhs_total = sum(c * xa**i for i, c in enumerate(lhs))
    rhs_total = sum(c * xa**i for i, c in enumerate(rhs))
    return {
        "N": N,
        "M": M,
        "mode": mode.value,
        "lhs_coeffs": lhs,
        "rhs_coeffs": rhs,
        "discrepancy": discrepancy,
        "lhs_total": lhs_total,
        "rhs_total": rhs_total,
    }


def report_to_json(report: dict) -> str:
    doc = {}
    for key, value in report.items():
        if isinstance(value, list):
            doc[key] = [format_scalar(v) for v in value]
        elif isinstance(value, (int, str)) and not isinstance(value, bool):
            doc[key] = value
        else:
            doc[key] = format_scalar(value)
    return json.dumps(doc, sort_keys=True)


__all__.append("report_to_json")


def pochhammer(a, n: int):
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``; exact for rationals."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = parse_scalar(a) if not isinstance(a, float) else a
    out = Fraction(1) if is_exact(a) else 1
    for k in range(n):
        out *= a + k
    return out


def pochhammer_ratio(a, b, n: int):
    """``(a)_n / (b)_n`` as a product of paired factors ``(a+k)/(b+k)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not isinstance(a, float):
        a = parse_scalar(a)
    if not isinstance(b, float):
        b = parse_scalar(b)
    out = Fraction(1) if is_exact(a) and is_exact(b) else 1.0
    for k in range(n):
        den = b + k
        if den == 0:
            raise ZeroDenominator(f"(b)_n has a zero factor at k = {k}")
        out *= (a + k) / den
    return out


def _gamma_ratio_int(top: int, h: int) -> Fraction:
    """Gamma(top) / Gamma(top - h) for integers, via (top-h)_h."""
    if top - h <= 0:
        raise DomainError(f"Gamma pole at {top - h}")
    return Fraction(pochhammer(top - h, h))


def pochhammer_tail_bound(N: int, h: int, r: int, i2r: int, i_next: int) -> Fraction:
    """Right side of the Pochhammer tail inequality:

        Gamma(N+2(r+1)+i2r) / (2 Gamma(N+2(r+1)-h+i2r)) * i_next**(-h)
    """
    if i_next <= 0 and h > 0:
        raise DomainError("i_next must be positive")
    a = N + 2 * (r + 1) + i2r
    return _gamma_ratio_int(a, h) / 2 / Fraction(i_next) ** h


def eq16_sides(N: int, h: int, r: int, i2r: int, i_next: int) -> tuple[Fraction, Fraction]:
    """Exact ``(lhs, rhs)`` of the Pochhammer tail inequality, where
    ``lhs = (N+2(r+1)-h+i2r)_{i_next} / (N+2(r+1)+i2r)_{i_next}``."""
    a = N + 2 * (r + 1) + i2r
    # for integer h the product telescopes: (a-h)_i / (a)_i = (a-h)_h / (a-h+i)_h
    lhs = Fraction(pochhammer(a - h, h)) / pochhammer(a - h + i_next, h)
    return lhs, pochhammer_tail_bound(N, h, r, i2r, i_next)


def verify_eq16(N: int, h: int, r: int, i2r: int, i_next: int) -> bool:
    if N - h <= 0:
        raise DomainError("requires N - h > 0")
    lhs, rhs = eq16_sides(N, h, r, i2r, i_next)
    return lhs > rhs


def eq16_threshold(N: int, h: int, r: int, i2r: int) -> int:
    """Smallest m such that the tail inequality holds for every i_next >= m.

    lhs/rhs = 2 i^h / prod_{k<h} (a-h+i+k) with a = N+2(r+1)+i2r is
    increasing in i, so the first passing i is the threshold.
    """
    if N - h <= 0:
        raise DomainError("requires N - h > 0")
    if h == 0:
        return 0
    a = N + 2 * (r + 1) + i2r
    # 2 i^h > (i + a - 1)^h  <=  i > (a - 1) / (2^{1/h} - 1)
    hi = max(1, math.ceil((a - 1) / (2 ** (1 / h) - 1)) + 2)
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if verify_eq16(N, h, r, i2r, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
