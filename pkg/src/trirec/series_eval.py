"""Coefficient generation, evaluation inside the disc, and majorants.

Float mode keeps every coefficient as a ``(mantissa, exponent)`` pair,
``d_n = mantissa * 10**exponent``, so that scans with ``M ~ 1e5`` never
overflow even when ``|A| > 1``.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .classification import INF, classify
from .errors import NoConvergenceWithinBudget, NotInDisc, UnsupportedShape
from .recurrence_core import CoefficientFamily, PolyN, coeff_A, coeff_B
from .scalars import (
    format_scalar,
    is_exact,
    parse_scalar,
    to_complex,
    to_float,
    to_mp,
    unify,
)

__all__ = [
    "SeriesRun",
    "MajorantRun",
    "generate_coeffs",
    "eval_series",
    "abs_partial_sums",
    "majorant_sequences",
    "coefficient_sup_bound",
    "scaled_coefficients",
    "empirical_ratio",
    "integer_numerators",
    "partial_sum_differences",
]

_RESCALE_HI = 1e150
_RESCALE_LO = 1e-150
_CHUNK = 4096


@dataclass(frozen=True)
class SeriesRun:
    """Coefficients of one run and, for evaluations, the partial sums.

    In exact mode ``d`` holds exact values and ``scale`` is ``None``.  In
    float mode ``d`` holds complex mantissas and ``scale[n]`` the decimal
    exponent of ``d_n``.
    """

    lam: object
    d: tuple
    scale: tuple | None = None
    x: object = None
    partial_sums: tuple | None = None
    value: complex | None = None
    truncation_error_bound: float | None = None
    converged: bool = False

    @property
    def M(self) -> int:
        return len(self.d) - 1

    @property
    def exact(self) -> bool:
        return self.scale is None

    def coefficient(self, n: int):
        """d_n as a plain number (may overflow to inf in float mode)."""
        if self.scale is None:
            return self.d[n]
        return self.d[n] * 10.0 ** self.scale[n]

    def log10_abs(self, n: int) -> float:
        """log10 |d_n|; ``-inf`` for a zero coefficient."""
        if self.scale is None:
            v = abs(self.d[n])
            if v == 0:
                return -math.inf
            if isinstance(v, Fraction):
                return _log10_fraction(v)
            return float(math.log10(float(v))) if float(v) > 0 else -math.inf
        m = abs(self.d[n])
        return math.log10(m) + self.scale[n] if m > 0 else -math.inf

    def to_csv(self, stream=None) -> str:
        """Columns ``n, Re(d_n), Im(d_n), scale_exponent, S_n``."""
        buf = io.StringIO() if stream is None else stream
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "Re(d_n)", "Im(d_n)", "scale_exponent", "S_n"])
        for n in range(len(self.d)):
            v = self.d[n]
            if self.scale is None:
                if is_exact(v):
                    re, im = format_scalar(v), "0"
                else:
                    c = to_complex(v)
                    re, im = repr(c.real), repr(c.imag)
                exp = 0
            else:
                re, im = repr(v.real), repr(v.imag)
                exp = self.scale[n]
            s = ""
            if self.partial_sums is not None and n < len(self.partial_sums):
                s = format_scalar(self.partial_sums[n])
            w.writerow([n, re, im, exp, s])
        return buf.getvalue() if stream is None else ""


@dataclass(frozen=True)
class MajorantRun:
    N: int
    cbar: tuple
    chat: tuple


def _log10_fraction(v: Fraction) -> float:
    return (math.log10(v.numerator) if v.numerator < 10**300 else _log10_int(v.numerator)) - (
        math.log10(v.denominator) if v.denominator < 10**300 else _log10_int(v.denominator)
    )


def _log10_int(k: int) -> float:
    shift = max(0, k.bit_length() - 60)
    return math.log10(k >> shift) + shift * math.log10(2)


def _float_coeffs(p: PolyN) -> np.ndarray:
    return np.array([to_complex(c) for c in p.coeffs] or [0j], dtype=complex)


class _FloatCoefficients:
    """Chunked float evaluation of A_n and B_n."""

    def __init__(self, f: CoefficientFamily):
        self.f = f
        self._polys = [_float_coeffs(p) for p in (f.a_num, f.a_den, f.b_num, f.b_den)]
        self._lo = 0
        self._A: list = []
        self._B: list = []

    def _fill(self, lo: int) -> None:
        hi = lo + _CHUNK
        self.f.check_poles(lo, hi)
        n = np.arange(lo, hi, dtype=float)
        an, ad, bn, bd = (np.polynomial.polynomial.polyval(n, c) for c in self._polys)
        self._A = (an / ad).tolist()
        self._B = (bn / bd).tolist()
        self._lo = lo

    def __call__(self, n: int):
        if not (self._lo <= n < self._lo + len(self._A)):
            self._fill(n)
        k = n - self._lo
        return self._A[k], self._B[k]


def scaled_coefficients(f: CoefficientFamily, d0=1, M: int | None = None) -> Iterator[tuple]:
    """Yield ``(n, mantissa, exponent)`` for d_0, d_1, ... in float mode.

    Runs forever when ``M`` is None.
    """
    coeffs = _FloatCoefficients(f)
    prev = 0j
    cur = to_complex(parse_scalar(d0))
    e = 0
    yield 0, cur, 0
    n = 0
    while M is None or n < M:
        a, b = coeffs(n)
        nxt = a * cur + (b * prev if n >= 1 else 0j)
        prev, cur = cur, nxt
        big = max(abs(prev), abs(cur))
        if big > _RESCALE_HI or 0 < big < _RESCALE_LO:
            shift = math.floor(math.log10(big))
            factor = 10.0 ** (-shift)
            prev *= factor
            cur *= factor
            e += shift
        n += 1
        yield n, cur, e


def generate_coeffs(f: CoefficientFamily, d0=1, M: int = 0, mode: str = "exact") -> SeriesRun:
    """d_0..d_M of the recurrence started from ``d0``.

    >>> from trirec.heun import HeunParams, heun_family
    >>> f = heun_family(HeunParams(alpha=1, beta=1, gamma=4, delta=1, q=2))
    >>> generate_coeffs(f, 1, 3).d
    (Fraction(1, 1), Fraction(-1, 2), Fraction(0, 1), Fraction(-1, 18))
    """
    if M < 0:
        raise ValueError("M must be nonnegative")
    if mode == "float":
        mant, exps = [], []
        for _, m, e in scaled_coefficients(f, d0, M):
            mant.append(m)
            exps.append(e)
        return SeriesRun(lam=0, d=tuple(mant), scale=tuple(exps))
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    f.check_poles(0, M)
    d = [parse_scalar(d0) if f.is_exact else to_mp(parse_scalar(d0))]
    if M >= 1:
        d.append(coeff_A(f, 0) * d[0])
    for n in range(1, M):
        d.append(coeff_A(f, n) * d[n] + coeff_B(f, n) * d[n - 1])
    return SeriesRun(lam=0, d=tuple(d))


def _abs_coeffs(p: PolyN) -> list[float]:
    return [abs(to_complex(c)) for c in p.coeffs]


def _sup_ratio_bound(num: PolyN, den: PolyN, n: int) -> float:
    """Upper bound of |num(k)/den(k)| valid for every real k >= n >= 1."""
    if num.is_zero:
        return 0.0
    t = den.degree
    if num.degree > t:
        return math.inf
    nc, dc = _abs_coeffs(num), _abs_coeffs(den)
    top = sum(c * float(n) ** (j - t) for j, c in enumerate(nc))
    bottom = dc[t] - sum(c * float(n) ** (j - t) for j, c in enumerate(dc[:t]))
    if bottom <= 0:
        return math.inf
    return top / bottom


def coefficient_sup_bound(f: CoefficientFamily, n: int) -> tuple[float, float]:
    """Bounds ``(a, b)`` with ``|A_k| <= a`` and ``|B_k| <= b`` for all k >= n."""
    if n < 1:
        return math.inf, math.inf
    return _sup_ratio_bound(f.a_num, f.a_den, n), _sup_ratio_bound(f.b_num, f.b_den, n)


def _x_power_lambda(x: complex, lam: complex) -> complex:
    if lam == 0:
        return 1.0 + 0j
    if x == 0:
        if lam.real > 0:
            return 0j
        raise NotInDisc("x**lambda is singular at x = 0")
    return cmath.exp(lam * cmath.log(x))


def _term(m: complex, e: int, n: int, x: complex, log10_absx: float, real_x: bool) -> complex:
    if m == 0:
        return 0j
    if x == 0:
        return m * 10.0**e if n == 0 else 0j
    mag = math.log10(abs(m)) + e + n * log10_absx
    if mag < -330:
        return 0j
    size = 10.0**mag
    if real_x:
        sign = -1.0 if (x.real < 0 and n % 2) else 1.0
        return (m / abs(m)) * size * sign
    return (m / abs(m)) * size * cmath.exp(1j * n * cmath.phase(x))


def eval_series(
    f: CoefficientFamily,
    lam=0,
    x=0,
    tol: float = 1e-12,
    M_max: int = 100_000,
    d0=1,
) -> SeriesRun:
    """Sum ``d_n x**(n+lam)`` until a geometric tail bound drops below ``tol``.

    Once ``rho = sup_{k>=M}(|A_k x| + |B_k x^2|) < 1``, every further
    pair of terms shrinks by ``rho``, so the remainder is at most
    ``2 max(|t_M|, |t_{M-1}|) rho / (1 - rho)`` times ``|x**lam|``.
    The sup is bounded from the polynomial coefficients, not sampled.

    Raises NotInDisc for ``|x|`` on or outside the disc and
    NoConvergenceWithinBudget if the bound is not met by ``M_max``.
    """
    cls = classify(f)
    radius = cls.disc_radius
    if radius is None:
        raise UnsupportedShape("disc of convergence unknown for this family")
    xc = to_complex(parse_scalar(x)) if not isinstance(x, (complex, float)) else complex(x)
    lam_c = to_complex(parse_scalar(lam)) if not isinstance(lam, (complex, float)) else complex(lam)
    absx = abs(xc)
    if radius != INF and absx >= to_float(radius):
        raise NotInDisc(f"|x| = {absx!r} is not inside the disc of radius {format_scalar(radius)}")

    real_x = xc.imag == 0
    log10_absx = math.log10(absx) if absx > 0 else -math.inf
    xl = _x_power_lambda(xc, lam_c)
    absxl = abs(xl)

    mant, exps, sums = [], [], []
    total = 0j
    comp = 0j  # Kahan compensation
    prev_abs = 0.0
    for n, m, e in scaled_coefficients(f, d0, M_max):
        mant.append(m)
        exps.append(e)
        t = _term(m, e, n, xc, log10_absx, real_x)
        y = t * xl - comp
        s = total + y
        comp = (s - total) - y
        total = s
        sums.append(total)
        cur_abs = abs(t)
        if absx == 0:
            return SeriesRun(lam, tuple(mant), tuple(exps), xc, tuple(sums), total, 0.0, True)
        if n >= 1:
            a_sup, b_sup = coefficient_sup_bound(f, n)
            rho = a_sup * absx + b_sup * absx * absx
            if rho < 1:
                bound = 2 * max(cur_abs, prev_abs) * rho / (1 - rho) * absxl
                if bound <= tol:
                    return SeriesRun(lam, tuple(mant), tuple(exps), xc, tuple(sums), total, bound, True)
        prev_abs = cur_abs
    raise NoConvergenceWithinBudget(f"tail bound above {tol!r} after {M_max} terms")


def abs_partial_sums(f: CoefficientFamily, x_abs, M: int, mode: str = "float", d0=1) -> list:
    """S_k = sum_{n<=k} |d_n| x_abs**n for k = 0..M (nondecreasing)."""
    if mode == "exact":
        xa = parse_scalar(x_abs)
        run = generate_coeffs(f, d0, M, mode="exact")
        out, s, p = [], Fraction(0), Fraction(1)
        for n, v in enumerate(run.d):
            s = s + abs(v) * p
            out.append(s)
            p = p * xa
        return out
    xa = float(x_abs)
    if xa < 0:
        raise ValueError("x_abs must be nonnegative")
    lx = math.log10(xa) if xa > 0 else -math.inf
    out, s = [], 0.0
    for n, m, e in scaled_coefficients(f, d0, M):
        am = abs(m)
        if am > 0 and (n == 0 or xa > 0):
            mag = math.log10(am) + e + (n * lx if n else 0.0)
            s += 10.0**mag if mag > -330 else 0.0
        out.append(s)
    return out


def majorant_sequences(f: CoefficientFamily, N: int = 10, M: int = 20, mode: str = "exact") -> MajorantRun:
    """Modulus recurrences started at index N (``cbar``) and N+1 (``chat``).

    ``|c_{k+1}| = |A_{N+k}||c_k| + |B_{N+k}||c_{k-1}|`` with ``|c_0| = 1``
    and ``|c_1| = |A_N|``; ``chat`` is the same with N replaced by N+1.
    """
    f.check_poles(N, N + M + 1)

    def run(start: int) -> tuple:
        if mode == "exact":
            absA = [abs(coeff_A(f, start + k)) for k in range(M)]
            absB = [abs(coeff_B(f, start + k)) for k in range(M)]
            one = unify([Fraction(1)] + absA[:1])[0]
        else:
            absA = [abs(to_complex(coeff_A(f, start + k))) for k in range(M)]
            absB = [abs(to_complex(coeff_B(f, start + k))) for k in range(M)]
            one = 1.0
        c = [one]
        if M >= 1:
            c.append(absA[0] * one)
        for k in range(1, M):
            c.append(absA[k] * c[k] + absB[k] * c[k - 1])
        return tuple(c)

    return MajorantRun(N=N, cbar=run(N), chat=run(N + 1))


def _integer_pair(num: PolyN, den: PolyN) -> tuple[list[int], list[int]]:
    scale = 1
    for c in num.coeffs + den.coeffs:
        scale = math.lcm(scale, Fraction(c).denominator)
    return ([int(c * scale) for c in num.coeffs], [int(c * scale) for c in den.coeffs])


def _ieval(cs: list[int], n: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * n + c
    return acc


def integer_numerators(f: CoefficientFamily, M: int) -> tuple[list[int], list[int]]:
    """Fraction-free form of an exact rational run: ``d_n = u_n / w_n``.

    With integer ``A_n = p_n/q_n`` and ``B_n = r_n/s_n``, ``w_{n+1} = q_n
    s_n w_n`` and ``u_{n+1} = p_n s_n u_n + r_n q_n q_{n-1} s_{n-1} u_{n-1}``,
    so only small-integer multiplications occur.  Returns ``(u, g)`` with
    ``g_n = q_n s_n`` (the per-step denominator growth).
    """
    if not f.is_exact or not all(
        isinstance(c, Fraction) for p in (f.a_num, f.a_den, f.b_num, f.b_den) for c in p.coeffs
    ):
        raise TypeError("fraction-free generation needs rational coefficients")
    f.check_poles(0, M)
    pa, qa = _integer_pair(f.a_num, f.a_den)
    pb, qb = _integer_pair(f.b_num, f.b_den)
    g = [_ieval(qa, n) * _ieval(qb, n) for n in range(M + 1)]
    u = [1]
    if M >= 1:
        # d_1 = A_0 d_0 = p_0 s_0 / (q_0 s_0)
        u.append(_ieval(pa, 0) * _ieval(qb, 0))
    for n in range(1, M):
        u.append(_ieval(pa, n) * _ieval(qb, n) * u[n]
                 + _ieval(pb, n) * _ieval(qa, n) * g[n - 1] * u[n - 1])
    return u, g


def empirical_ratio(f: CoefficientFamily, n: int, step: int = 1, mode: str = "exact"):
    """|d_{n+step} / d_n| for the run started at d_0 = 1.

    Exact mode returns a Fraction computed fraction-free; float mode uses
    the scaled float recurrence.
    """
    if mode == "exact" and f.is_exact:
        u, g = integer_numerators(f, n + step)
        growth = 1
        for k in range(n, n + step):
            growth *= g[k]
        if u[n] == 0:
            return math.inf
        return Fraction(abs(u[n + step]), abs(u[n] * growth))
    run = generate_coeffs(f, 1, n + step, mode="float")
    return 10.0 ** (run.log10_abs(n + step) - run.log10_abs(n))


def partial_sum_differences(sums: Sequence, Ms: Sequence[int]) -> list:
    """S_{2M} - S_M for each M (``sums`` must reach index 2 max(Ms))."""
    return [sums[2 * M] - sums[M] for M in Ms]
