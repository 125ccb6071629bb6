"""Divergence on the boundary of the disc: inequality witnesses, the
harmonic lower-bound chain, and empirical growth scans of the absolute
partial sums."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import special

from .classification import Kind, Subcase, classify
from .decomposition import eq16_threshold
from .errors import DomainError, UnsupportedShape, WitnessNotFound, ZeroDenominator
from .recurrence_core import CoefficientFamily, NormalizedFamily
from .scalars import format_scalar, is_exact, is_real, parse_scalar, real_part, to_float
from .series_eval import abs_partial_sums

__all__ = [
    "Side",
    "WitnessParams",
    "GrowthScan",
    "find_witness",
    "check_witness",
    "harmonic_partial",
    "power_tail_partial",
    "pfq_3f2_partial",
    "witness_3f2_params",
    "lower_bound_witness",
    "boundary_point",
    "boundary_scan",
    "doubling_increments",
    "fit_log_growth",
]

_DIRECT_SUM_LIMIT = 2000


class Side(str, enum.Enum):
    THM_ONE = "ThmOneBoundary"
    THM_TWO = "ThmTwoBoundary"


@dataclass(frozen=True)
class WitnessParams:
    """Validated parameters of the boundary lower-bound chain.

    ``h`` bounds the slowly varying factor from below (``|lead_n| > 1 -
    h/n``) and ``h0`` the decaying one (``|decay_n| > 1/(n + h0)``) for every
    n in ``[N, scan_limit]``.  ``m`` is the smallest start index from which
    the Pochhammer tail inequality holds for r = 1, 2, 3.
    """

    N: int
    h: int
    h0: int
    m: int
    eps: Fraction
    K: Fraction
    scan_limit: int
    kind: str = "ThmOne"
    subcase: str = "Case1"
    margin_lead: object = None
    margin_decay: object = None
    validation: str = ""

    def to_dict(self) -> dict:
        doc = asdict(self)
        for key in ("eps", "K", "margin_lead", "margin_decay"):
            if doc[key] is not None:
                doc[key] = format_scalar(doc[key])
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        doc = self.to_dict()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(doc))
        w.writerow([doc[k] for k in doc])
        return buf.getvalue()


# --- exact scans of |lead_n| and |decay_n| -------------------------------


def _int_poly(cs: Sequence, scale: int) -> list[int]:
    return [int(c * scale) for c in cs]


def _integer_ratio(num: Sequence, den: Sequence):
    """Integer polynomials P, Q with P(n)/Q(n) equal to the monic ratio."""
    scale = 1
    for c in list(num) + list(den):
        scale = math.lcm(scale, Fraction(c).denominator)
    return _int_poly(num, scale), _int_poly(den, scale)


def _ieval(cs: list[int], n: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * n + c
    return acc


class _Moduli:
    """|lead_n| and |decay_n| on a range, exact as integer pairs when possible."""

    def __init__(self, nf: NormalizedFamily, kind: Kind):
        if kind == Kind.THM_ONE:
            lead, decay = (nf.Omega, nf.omega), (nf.Theta, nf.theta)
        else:
            lead, decay = (nf.Theta, nf.theta), (nf.Omega, nf.omega)
        self.exact = all(isinstance(c, Fraction) for c in lead[0] + lead[1] + decay[0] + decay[1])
        self.lead, self.decay = lead, decay
        if self.exact:
            self.lead_int = _integer_ratio(*lead)
            self.decay_int = _integer_ratio(*decay) if decay[0] else None

    def pair(self, which: str, n: int) -> tuple:
        """(|P(n)|, |Q(n)|); exact ints in rational mode, mp reals otherwise."""
        if self.exact:
            ints = self.lead_int if which == "lead" else self.decay_int
            if ints is None:
                return 0, 1
            return abs(_ieval(ints[0], n)), abs(_ieval(ints[1], n))
        num, den = self.lead if which == "lead" else self.decay
        if not num:
            return 0, 1
        p = q = 0
        for c in reversed(num):
            p = p * n + c
        for c in reversed(den):
            q = q * n + c
        return abs(p), abs(q)


def _lead_violations(mod: _Moduli, h: int, lo: int, hi: int) -> int | None:
    """Largest n in [lo, hi] with |lead_n| <= 1 - h/n (or a pole), else None."""
    for n in range(hi, lo - 1, -1):
        p, q = mod.pair("lead", n)
        if q == 0 or n * p <= (n - h) * q:
            return n
    return None


def _required_h0(mod: _Moduli, lo: int, hi: int) -> tuple[int, int | None]:
    """Smallest h0 >= 1 with |decay_n| > 1/(n+h0) on [lo, hi].

    Returns ``(h0, bad_n)`` where ``bad_n`` is the first n at which the
    decaying factor vanishes (no h0 can work), else None.
    """
    h0 = 1
    for n in range(lo, hi + 1):
        p, q = mod.pair("decay", n)
        if p == 0 or q == 0:
            return h0, n
        # need n + h0 > q/p
        if mod.exact:
            need = (q - n * p) // p + 1
        else:
            need = math.floor(to_float(q / p - n)) + 1
        if need > h0:
            h0 = need
    return max(h0, 1), None


def _margins(mod: _Moduli, h: int, h0: int, lo: int, hi: int):
    """Exact ``min_n (|lead_n| - (1 - h/n))`` and ``min_n (|decay_n| - 1/(n+h0))``."""
    best_lead = best_decay = None
    for n in range(lo, hi + 1):
        p, q = mod.pair("lead", n)
        lead = Fraction(p * n - (n - h) * q, q * n) if mod.exact else p / q - (1 - Fraction(h, n))
        p, q = mod.pair("decay", n)
        decay = Fraction(p * (n + h0) - q, q * (n + h0)) if mod.exact else p / q - Fraction(1, n + h0)
        if best_lead is None or lead < best_lead:
            best_lead = lead
        if best_decay is None or decay < best_decay:
            best_decay = decay
    return best_lead, best_decay


def _subleading_gap(nf: NormalizedFamily, kind: Kind):
    if kind == Kind.THM_ONE:
        upper, lower = nf.subleading("Omega"), nf.subleading("omega")
    else:
        upper, lower = nf.subleading("Theta"), nf.subleading("theta")
    return lower - upper


def _min_N(h: int, eps: Fraction, violation: int | None) -> int:
    # N - h > 0 and h/N < eps, i.e. 1 - h/n > 1 - eps for n >= N
    n = max(h + 1, math.floor(h / eps) + 1)
    if violation is not None:
        n = max(n, violation + 1)
    return n


def find_witness(f: CoefficientFamily, eps="1/1000", scan_limit: int = 100_000,
                 K="1/2", r_max: int = 3) -> WitnessParams:
    """Search the smallest validated ``(h, N, h0)`` on ``[N, scan_limit]``.

    Case1 takes h from the sub-leading gap (smallest integer above it);
    otherwise h is scanned upward.  h is never below 2 so that
    ``sum k^-h`` converges.  N is the smallest index with ``N > h``,
    ``h/N < eps`` and no violation of the lead inequality on the range.

    WitnessNotFound carries the largest violating n of the last h tried
    (``scan_limit`` itself when ``h/n < eps`` cannot hold on the range).
    """
    eps, K = parse_scalar(eps), parse_scalar(K)
    if not (0 < eps < 1) or not (0 < K < 1):
        raise ValueError("eps and K must lie in (0, 1)")
    cls = classify(f)
    if cls.kind not in (Kind.THM_ONE, Kind.THM_TWO):
        raise UnsupportedShape(f"no boundary witness for kind {cls.kind.value}")
    nf = cls.normalized
    mod = _Moduli(nf, cls.kind)

    if cls.subcase == Subcase.CASE1:
        gap = real_part(_subleading_gap(nf, cls.kind))
        candidates = [max(2, math.floor(gap) + 1)]
        validation = "h from sub-leading gap; inequalities checked on [N, scan_limit]"
    else:
        candidates = range(2, scan_limit)
        validation = "h found by scan; empirically validated on [N, scan_limit]"

    first_violation = None
    for h in candidates:
        if math.floor(h / eps) + 1 > scan_limit:
            # h/n < eps fails on the whole range
            if first_violation is None:
                first_violation = scan_limit
            break
        violation = _lead_violations(mod, h, 1, scan_limit)
        N = _min_N(h, eps, violation)
        if N > scan_limit:
            first_violation = violation
            continue
        h0, bad = _required_h0(mod, N, scan_limit)
        if bad is not None:
            raise WitnessNotFound("decaying factor vanishes", bad)
        margin_lead, margin_decay = _margins(mod, h, h0, N, scan_limit)
        m = max(eq16_threshold(N, h, r, 0) for r in range(1, r_max + 1))
        return WitnessParams(
            N=N, h=h, h0=h0, m=m, eps=eps, K=K, scan_limit=scan_limit,
            kind=cls.kind.value, subcase=cls.subcase.value,
            margin_lead=margin_lead, margin_decay=margin_decay, validation=validation,
        )
    raise WitnessNotFound(f"no (N, h, h0) validates within scan_limit = {scan_limit}", first_violation)


def check_witness(f: CoefficientFamily, w: WitnessParams) -> bool:
    """Re-verify both inequalities of ``w`` on ``[N, scan_limit]``."""
    cls = classify(f)
    mod = _Moduli(cls.normalized, cls.kind)
    if w.N - w.h <= 0:
        return False
    lead, decay = _margins(mod, w.h, w.h0, w.N, w.scan_limit)
    return lead > 0 and decay > 0


# --- lower-bound chain ---------------------------------------------------


def harmonic_partial(m: int, M: int, offset, exact: bool = False):
    """``sum_{j=m}^{M} 1 / (offset + j)``."""
    if m > M:
        return Fraction(0) if exact else 0.0
    if offset + m <= 0:
        raise DomainError("offset + m must be positive")
    if exact:
        offset = Fraction(offset)
        return sum((1 / (offset + j) for j in range(m, M + 1)), Fraction(0))
    if M - m < _DIRECT_SUM_LIMIT:
        return math.fsum(1.0 / (offset + j) for j in range(m, M + 1))
    return float(special.digamma(offset + M + 1) - special.digamma(offset + m))


def power_tail_partial(m: int, M: int, h: int, exact: bool = False):
    """``sum_{k=m}^{M} k^{-h}`` (k >= 1)."""
    if m < 1:
        raise DomainError("k^-h needs k >= 1")
    if m > M:
        return Fraction(0) if exact else 0.0
    if exact:
        return sum((Fraction(1, k**h) for k in range(m, M + 1)), Fraction(0))
    if M - m < _DIRECT_SUM_LIMIT or h < 2:
        return math.fsum(k ** (-float(h)) for k in range(m, M + 1))
    return float(special.zeta(h, m) - special.zeta(h, M + 1))


def pfq_3f2_partial(a1, a2, a3, b1, b2, x, terms: int):
    """Partial sum of ``3F2(a1, a2, a3; b1, b2; x)`` over ``k < terms``.

    Each term is the previous one times
    ``(a1+k)(a2+k)(a3+k) / ((b1+k)(b2+k)(k+1)) x``, i.e. the exact
    Pochhammer products, in exact arithmetic for rational inputs.
    """
    vals = [v if isinstance(v, float) else parse_scalar(v) for v in (a1, a2, a3, b1, b2, x)]
    a1, a2, a3, b1, b2, x = vals
    if not (0 <= x < 1):
        raise DomainError("x must lie in [0, 1)")
    exact = all(is_exact(v) for v in vals)
    term = Fraction(1) if exact else 1.0
    total = Fraction(0) if exact else 0.0
    for k in range(terms):
        total += term
        den = (b1 + k) * (b2 + k) * (k + 1)
        if den == 0:
            raise ZeroDenominator(f"denominator parameter hits zero at k = {k}")
        term = term * (a1 + k) * (a2 + k) * (a3 + k) / den * x
    return total


def witness_3f2_params(w: WitnessParams, p: int) -> tuple[int, int, int, int, int]:
    """``(a1, a2, a3, b1, b2)`` of the 3F2 factor of the p-th chain term."""
    base = w.N + w.m + 2 * p
    return 1, base + 2, base + 1 + w.h0, base + 2 - w.h, base + 2 + w.h0


def lower_bound_witness(w: WitnessParams, eta, p_max: int, M: int, K=None) -> float:
    """Truncation at depth M of the final lower bound of the chain:

        (1-K)(1-eps)^m / 2 * sum_{p=1}^{p_max} Gamma(N+m+2p+2) eta^(p+1)
            / ((N+m+2p+1+h0) Gamma(N+m+2p+2-h))
            * prod_{l<p} sum_{j=m}^{M} 1/(N+2l+1+j+h0) * sum_{k=m}^{M} k^-h

    The 3F2 factor (>= 1) is dropped, as in the final line of the chain.
    Every term is nonnegative, so the value is nondecreasing in M and p_max.
    """
    K = w.K if K is None else parse_scalar(K)
    eta = float(eta)
    if eta <= 0:
        raise DomainError("eta must be positive")
    if p_max <= 0:
        return 0.0
    N, h, h0, m = w.N, w.h, w.h0, w.m
    pref = float(1 - K) * math.exp(m * math.log1p(-float(w.eps))) / 2
    tail = power_tail_partial(m, M, h)
    harmonic = [harmonic_partial(m, M, N + 2 * l + 1 + h0) for l in range(p_max)]
    total = 0.0
    prod = 1.0
    for p in range(1, p_max + 1):
        top = N + m + 2 * p + 2
        if top - h <= 0:
            raise DomainError(f"Gamma pole at {top - h}")
        # Gamma(top)/Gamma(top-h) = (top-h)_h
        log_gamma_ratio = sum(math.log(top - h + k) for k in range(h))
        log_term = log_gamma_ratio + (p + 1) * math.log(eta) - math.log(top - 1 + h0)
        prod *= harmonic[p - 1]
        total += math.exp(log_term) * prod * tail
    return pref * total


# --- empirical growth at the boundary ------------------------------------


def boundary_point(f: CoefficientFamily, side: Side = Side.THM_ONE) -> float:
    """``1/|A|`` (ThmOne side) or ``1/sqrt|B|`` (ThmTwo side) as a float."""
    side = Side(side)
    cls = classify(f)
    if side == Side.THM_ONE:
        ok = cls.kind == Kind.THM_ONE or (cls.kind == Kind.TWO_TERM and cls.normalized is not None)
    else:
        ok = cls.kind == Kind.THM_TWO
    if not ok:
        raise UnsupportedShape(f"{cls.kind.value} family has no {side.value}")
    return to_float(cls.disc_radius)


@dataclass(frozen=True)
class GrowthScan:
    x_abs: float
    checkpoints: tuple  # ((M, S_M), ...)
    fitted_model: tuple  # (alpha, beta) of S_M ~ alpha log M + beta

    def to_dict(self) -> dict:
        return {
            "x_abs": repr(self.x_abs),
            "checkpoints": [[M, repr(S)] for M, S in self.checkpoints],
            "alpha": repr(self.fitted_model[0]),
            "beta": repr(self.fitted_model[1]),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["M", "S_M", "x_abs", "log_fit_alpha", "log_fit_beta"])
        for M, S in self.checkpoints:
            w.writerow([M, repr(S), repr(self.x_abs), repr(self.fitted_model[0]),
                        repr(self.fitted_model[1])])
        return buf.getvalue()


def fit_log_growth(Ms: Sequence[int], S: Sequence[float], top_decade: bool = True) -> tuple:
    """Least-squares ``S ~ alpha log M + beta``, over the top decade of
    checkpoints by default (at least the last two points)."""
    Ms = np.asarray(Ms, dtype=float)
    S = np.asarray(S, dtype=float)
    if top_decade:
        keep = Ms >= Ms.max() / 10
        if keep.sum() < 2:
            keep = np.zeros_like(keep)
            keep[-2:] = True
        Ms, S = Ms[keep], S[keep]
    if len(Ms) < 2:
        return (math.nan, math.nan)
    alpha, beta = np.polyfit(np.log(Ms), S, 1)
    return float(alpha), float(beta)


def _check_checkpoints(Ms: Sequence[int]) -> list[int]:
    Ms = [int(M) for M in Ms]
    if not Ms or any(b <= a for a, b in zip(Ms, Ms[1:])) or Ms[0] < 0:
        raise ValueError("checkpoints must be nonnegative and strictly increasing")
    return Ms


def boundary_scan(f: CoefficientFamily, side: Side = Side.THM_ONE,
                  M_checkpoints: Sequence[int] = (1000, 10_000, 100_000),
                  x_abs=None) -> GrowthScan:
    """S_M = sum_{n<=M} |d_n| x_abs^n at each checkpoint, x_abs on the
    boundary unless given, with a log-growth fit."""
    Ms = _check_checkpoints(M_checkpoints)
    xa = boundary_point(f, side) if x_abs is None else float(x_abs)
    sums = abs_partial_sums(f, xa, Ms[-1])
    S = [sums[M] for M in Ms]
    return GrowthScan(xa, tuple(zip(Ms, S)), fit_log_growth(Ms, S))


def doubling_increments(f: CoefficientFamily, x_abs, Ms: Sequence[int]) -> list[float]:
    """``S_{2M} - S_M`` for each M."""
    Ms = _check_checkpoints(Ms)
    sums = abs_partial_sums(f, float(x_abs), 2 * Ms[-1])
    return [sums[2 * M] - sums[M] for M in Ms]
