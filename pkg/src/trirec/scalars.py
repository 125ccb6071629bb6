"""Scalar tower used throughout trirec.

Real rational inputs are kept as :class:`fractions.Fraction` so that every
recurrence step is exact.  Non-real inputs are promoted to ``mpc`` numbers
of a private mpmath context whose working precision is taken from the
``TRIREC_PRECISION_BITS`` environment variable (default 256 bits).  Plain
``float``/``complex`` only appear in float mode.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from numbers import Number

from mpmath.ctx_mp import MPContext

DEFAULT_PRECISION_BITS = 256


def working_precision() -> int:
    raw = os.environ.get("TRIREC_PRECISION_BITS", "")
    if not raw.strip():
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError("TRIREC_PRECISION_BITS must be at least 53")
    return bits


MP = MPContext()
MP.prec = working_precision()

_MP_TYPES = (type(MP.mpf(0)), type(MP.mpc(0)))


def is_mp(v) -> bool:
    return isinstance(v, _MP_TYPES)


def is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


def _fraction_to_mp(v: Fraction):
    return MP.mpf(v.numerator) / v.denominator


def to_mp(v):
    """Lift any supported scalar to the private mpmath context."""
    if is_mp(v):
        return v
    if isinstance(v, (int, Fraction)):
        return _fraction_to_mp(Fraction(v))
    if isinstance(v, complex):
        return MP.mpc(v.real, v.imag)
    return MP.mpf(v)


def _parse_real(text: str) -> Fraction:
    text = text.strip()
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return Fraction(text)


def parse_scalar(value):
    """Parse ``value`` into an exact Fraction or, if non-real, an ``mpc``.

    Strings may be integers, decimals, ``"p/q"`` rationals, or complex
    numbers with an ``i`` (or ``j``) suffix such as ``"1/2+3/4i"``.

    >>> parse_scalar("3/4")
    Fraction(3, 4)
    >>> parse_scalar("0.25")
    Fraction(1, 4)
    >>> parse_scalar("2-0i")
    Fraction(2, 1)
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, complex):
        if value.imag == 0:
            return Fraction(repr(value.real))
        return MP.mpc(to_mp(Fraction(repr(value.real))), to_mp(Fraction(repr(value.imag))))
    if is_mp(value):
        return value
    if not isinstance(value, str):
        raise TypeError(f"cannot interpret {value!r} as a scalar")
    text = value.strip().replace(" ", "")
    if not text:
        raise ValueError("empty scalar string")
    if text[-1] in "ij":
        body = text[:-1]
        split = 0
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "eE":
                split = pos
                break
        real = _parse_real(body[:split]) if split else Fraction(0)
        imag = _parse_real(body[split:])
        if imag == 0:
            return real
        return MP.mpc(_fraction_to_mp(real), _fraction_to_mp(imag))
    return Fraction(text)


def unify(values):
    """Return ``values`` lifted to mpmath if any of them is an mpmath number."""
    values = list(values)
    if any(is_mp(v) for v in values):
        return [to_mp(v) for v in values]
    return [Fraction(v) if isinstance(v, int) else v for v in values]


def is_real(v) -> bool:
    if isinstance(v, (int, Fraction, float)):
        return True
    if isinstance(v, complex):
        return v.imag == 0
    return MP.im(v) == 0


def real_part(v):
    if isinstance(v, (int, Fraction, float)):
        return v
    if isinstance(v, complex):
        return v.real
    return MP.re(v)


def modulus(v):
    """|v|, exact for Fractions."""
    return abs(v)


def is_zero(v) -> bool:
    return v == 0


def to_complex(v) -> complex:
    if isinstance(v, (int, Fraction, float)):
        return complex(float(v))
    return complex(v)


def to_float(v) -> float:
    if isinstance(v, (int, Fraction, float)):
        return float(v)
    if isinstance(v, complex):
        if v.imag != 0:
            raise ValueError("value is not real")
        return v.real
    if MP.im(v) != 0:
        raise ValueError("value is not real")
    return float(MP.re(v))


def exact_sqrt(v):
    """Square root of a nonnegative real, exact when ``v`` is a rational square."""
    if isinstance(v, (int, Fraction)):
        v = Fraction(v)
        if v < 0:
            raise ValueError("negative argument")
        p, q = math.isqrt(v.numerator), math.isqrt(v.denominator)
        if p * p == v.numerator and q * q == v.denominator:
            return Fraction(p, q)
        return MP.sqrt(_fraction_to_mp(v))
    return MP.sqrt(to_mp(v))


def _digits() -> int:
    return max(17, int(MP.prec * 0.30103))


def format_real(v) -> str:
    """Decimal-string rendering; exact rationals render as ``p`` or ``p/q``."""
    if isinstance(v, Fraction) or isinstance(v, int):
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return MP.nstr(v, _digits(), strip_zeros=True)


def format_scalar(v) -> str:
    """Render a scalar as a string; non-real values use an ``i`` suffix."""
    if isinstance(v, complex):
        if v.imag == 0:
            return format_real(v.real)
        return f"{format_real(v.real)}{'+' if v.imag >= 0 else '-'}{format_real(abs(v.imag))}i"
    if is_mp(v) and not is_real(v):
        im = MP.im(v)
        return f"{format_real(MP.re(v))}{'+' if im >= 0 else '-'}{format_real(abs(im))}i"
    if is_mp(v):
        return format_real(MP.re(v))
    return format_real(v)


def is_scalar(v) -> bool:
    return isinstance(v, Number) or is_mp(v)
