"""Polynomials in n and three-term recurrence coefficient families.

A family describes

    d_{n+1} = A_n d_n + B_n d_{n-1},   n >= 1,      d_1 = A_0 d_0,

with ``A_n = a_num(n) / a_den(n)`` and ``B_n = b_num(n) / b_den(n)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PoleAtIndex, UnsupportedShape
from .scalars import format_scalar, is_mp, parse_scalar, unify

__all__ = [
    "PolyN",
    "CoefficientFamily",
    "NormalizedFamily",
    "poly_eval",
    "coeff_A",
    "coeff_B",
    "normalize",
    "shape_of",
    "family_to_dict",
    "family_from_dict",
    "family_to_json",
    "family_from_json",
]


@dataclass(frozen=True)
class PolyN:
    """Dense polynomial in n; ``coeffs[j]`` multiplies ``n**j``.

    Trailing zeros are stripped, so the zero polynomial has no
    coefficients and degree -1.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        cs = unify(parse_scalar(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, *coeffs) -> "PolyN":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_exact(self) -> bool:
        return not any(is_mp(c) for c in self.coeffs)

    def coeff(self, j: int):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0)

    def __call__(self, n):
        return poly_eval(self, n)

    def scaled(self, factor) -> "PolyN":
        factor = parse_scalar(factor)
        return PolyN(tuple(c * factor for c in self.coeffs))

    def monic(self) -> "PolyN":
        lead = self.lead
        return PolyN(tuple(c / lead for c in self.coeffs))

    def __mul__(self, other: "PolyN") -> "PolyN":
        if self.is_zero or other.is_zero:
            return PolyN()
        a, b = unify(self.coeffs), unify(other.coeffs)
        out = [a[0] * 0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return PolyN(tuple(out))

    def integer_roots(self, lo: int, hi: int) -> list[int]:
        """Integer n in [lo, hi] at which the polynomial vanishes."""
        if self.is_zero:
            return list(range(lo, hi + 1))
        return [n for n in range(lo, hi + 1) if poly_eval(self, n) == 0]

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("n" if j == 1 else f"n^{j}")
            cs = format_scalar(c)
            if mono and c == 1:
                terms.append(mono)
            elif mono:
                terms.append(f"({cs})*{mono}")
            else:
                terms.append(f"({cs})")
        return " + ".join(terms)


def poly_eval(p: PolyN, n):
    """Horner evaluation of ``p`` at ``n``; exact for rational coefficients."""
    if not p.coeffs:
        return Fraction(0)
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * n + c
    return acc


@dataclass(frozen=True)
class CoefficientFamily:
    a_num: PolyN
    a_den: PolyN
    b_num: PolyN
    b_den: PolyN
    n_min: int = 1

    def __post_init__(self):
        if self.a_den.is_zero or self.b_den.is_zero:
            raise ValueError("denominator polynomials must be nonzero")

    @property
    def is_exact(self) -> bool:
        return all(p.is_exact for p in (self.a_num, self.a_den, self.b_num, self.b_den))

    @property
    def is_two_term(self) -> bool:
        return self.b_num.is_zero

    def check_poles(self, lo: int, hi: int) -> None:
        """Raise :class:`PoleAtIndex` if a denominator vanishes for n in [lo, hi]."""
        for name, den in (("a_den", self.a_den), ("b_den", self.b_den)):
            if den.degree == 0:
                continue
            roots = den.integer_roots(lo, min(hi, _root_search_span(den)))
            if roots:
                raise PoleAtIndex(roots[0], name)

    def A(self, n):
        return coeff_A(self, n)

    def B(self, n):
        return coeff_B(self, n)


def _root_search_span(p: PolyN) -> int:
    # Cauchy bound on the modulus of any root
    lead = abs(p.lead)
    return int(1 + max(abs(c) / lead for c in p.coeffs[:-1])) + 1


def coeff_A(f: CoefficientFamily, n):
    den = poly_eval(f.a_den, n)
    if den == 0:
        raise PoleAtIndex(n, "a_den")
    return poly_eval(f.a_num, n) / den


def coeff_B(f: CoefficientFamily, n):
    den = poly_eval(f.b_den, n)
    if den == 0:
        raise PoleAtIndex(n, "b_den")
    if f.b_num.is_zero:
        return Fraction(0)
    return poly_eval(f.b_num, n) / den


def shape_of(f: CoefficientFamily) -> str:
    """Degree-shape label: ``"A"`` (A_n tends to a nonzero limit, B_n -> 0),
    ``"B"`` (B_n tends to a nonzero limit, A_n -> 0) or ``"other"``."""
    da, dA = f.a_num.degree, f.a_den.degree
    db, dB = f.b_num.degree, f.b_den.degree
    if da == dA and db < dB:
        return "A"
    if db == dB and da < dA:
        return "B"
    return "other"


@dataclass(frozen=True)
class NormalizedFamily:
    """Leading ratios and monic coefficient lists of a family.

    ``Omega``/``omega`` are the monic coefficients of ``a_num``/``a_den``
    and ``Theta``/``theta`` those of ``b_num``/``b_den`` (index j
    multiplies n**j; the last entry is 1).  ``A`` and ``B`` are the leading
    ratios, ``B = 0`` with empty ``Theta`` for two-term families.
    """

    shape: str
    t: int
    A: object
    B: object
    Omega: tuple
    omega: tuple
    Theta: tuple = ()
    theta: tuple = ()
    source: CoefficientFamily | None = field(default=None, repr=False, compare=False)

    def A_bar(self, n):
        """A_n / A."""
        return _ratio(self.Omega, self.omega, n)

    def B_bar(self, n):
        """B_n / B; zero for two-term families."""
        if not self.Theta:
            return Fraction(0)
        return _ratio(self.Theta, self.theta, n)

    def A_at(self, n):
        return self.A * self.A_bar(n)

    def B_at(self, n):
        return self.B * self.B_bar(n) if self.Theta else Fraction(0)

    def subleading(self, which: str):
        """Coefficient of n**(t-1) of the monic numerator/denominator.

        ``which`` is one of ``"Omega"``, ``"omega"``, ``"Theta"``,
        ``"theta"``; missing coefficients count as zero.
        """
        seq = getattr(self, which)
        j = self.t - 1
        return seq[j] if 0 <= j < len(seq) else Fraction(0)


def _ratio(num: Sequence, den: Sequence, n):
    d = 0
    for c in reversed(den):
        d = d * n + c
    if d == 0:
        raise PoleAtIndex(n)
    v = 0
    for c in reversed(num):
        v = v * n + c
    return v / d


def _monic(p: PolyN) -> tuple:
    return p.monic().coeffs if not p.is_zero else ()


def normalize(f: CoefficientFamily) -> NormalizedFamily:
    """Split ``f`` into leading ratios and monic coefficient lists.

    A-shape families (equal degrees in A_n, B_n -> 0) use ``t = deg a_den``;
    B-shape families (equal degrees in B_n, A_n -> 0) use ``t = deg b_den``.

    >>> f = CoefficientFamily(PolyN.of(1, 0, 2), PolyN.of(1, 0, 1), PolyN(), PolyN.of(1))
    >>> nf = normalize(f)
    >>> nf.A, nf.Omega[0], nf.omega[0]
    (Fraction(2, 1), Fraction(1, 2), Fraction(1, 1))
    """
    shape = shape_of(f)
    if shape == "other":
        raise UnsupportedShape(
            f"deg a_num={f.a_num.degree}, deg a_den={f.a_den.degree}, "
            f"deg b_num={f.b_num.degree}, deg b_den={f.b_den.degree}"
        )
    if shape == "A":
        t = f.a_den.degree
        A = f.a_num.lead / f.a_den.lead
    else:
        t = f.b_den.degree
        A = f.a_num.lead / f.a_den.lead if not f.a_num.is_zero else Fraction(0)
    if f.b_num.is_zero:
        B, Theta, theta = Fraction(0), (), ()
    else:
        B = f.b_num.lead / f.b_den.lead
        Theta, theta = _monic(f.b_num), _monic(f.b_den)
    return NormalizedFamily(
        shape=shape,
        t=t,
        A=A,
        B=B,
        Omega=_monic(f.a_num),
        omega=_monic(f.a_den),
        Theta=Theta,
        theta=theta,
        source=f,
    )


def _poly_to_list(p: PolyN) -> list[str]:
    return [format_scalar(c) for c in p.coeffs] or ["0"]


def family_to_dict(f: CoefficientFamily) -> dict:
    return {
        "a_num": _poly_to_list(f.a_num),
        "a_den": _poly_to_list(f.a_den),
        "b_num": _poly_to_list(f.b_num),
        "b_den": _poly_to_list(f.b_den),
    }


def family_from_dict(doc: dict) -> CoefficientFamily:
    missing = [k for k in ("a_num", "a_den", "b_num", "b_den") if k not in doc]
    if missing:
        raise ValueError(f"family document lacks {', '.join(missing)}")
    polys = {k: PolyN(tuple(doc[k])) for k in ("a_num", "a_den", "b_num", "b_den")}
    return CoefficientFamily(**polys, n_min=int(doc.get("n_min", 1)))


def family_to_json(f: CoefficientFamily) -> str:
    return json.dumps(family_to_dict(f), sort_keys=True)


def family_from_json(text: str) -> CoefficientFamily:
    return family_from_dict(json.loads(text))
