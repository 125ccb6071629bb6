"""Which recurrence shape governs a family, its disc of convergence, and
which branch of the boundary argument applies."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ComplexSubleading, UnsupportedShape
from .recurrence_core import CoefficientFamily, NormalizedFamily, normalize, shape_of
from .scalars import MP, exact_sqrt, format_real, format_scalar, is_real, modulus, real_part

__all__ = [
    "Kind",
    "BoundaryVerdict",
    "Subcase",
    "RecurrenceClass",
    "classify",
    "subcase_of",
    "INF",
]

INF = float("inf")


class Kind(str, enum.Enum):
    THM_ONE = "ThmOne"
    THM_TWO = "ThmTwo"
    TWO_TERM = "TwoTerm"
    UNSUPPORTED = "Unsupported"


class BoundaryVerdict(str, enum.Enum):
    DIVERGES = "DivergesPerPaper"
    GAUSS_CONDITIONAL = "GaussConditional"
    UNKNOWN = "Unknown"


class Subcase(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class RecurrenceClass:
    kind: Kind
    disc_radius: object  # Fraction, mpf, INF, or None when unknown
    boundary_verdict: BoundaryVerdict
    subcase: Subcase
    normalized: NormalizedFamily | None = None

    def to_dict(self) -> dict:
        r = self.disc_radius
        if r is None:
            radius = None
        elif r == INF:
            radius = "inf"
        else:
            radius = format_real(r)
        doc = {
            "kind": self.kind.value,
            "disc_radius": radius,
            "boundary_verdict": self.boundary_verdict.value,
            "subcase": self.subcase.value,
        }
        if self.normalized is not None:
            doc["A"] = format_scalar(self.normalized.A)
            doc["B"] = format_scalar(self.normalized.B)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _reciprocal(v):
    if v == 0:
        return INF
    if isinstance(v, Fraction):
        return 1 / v
    return 1 / MP.mpf(v)


def subcase_of(nf: NormalizedFamily, kind: Kind) -> Subcase:
    """Case1 iff the monic numerator's n**(t-1) coefficient is strictly
    smaller than the denominator's (A_n for ThmOne, B_n for ThmTwo)."""
    if kind == Kind.THM_ONE:
        upper, lower = nf.subleading("Omega"), nf.subleading("omega")
    elif kind == Kind.THM_TWO:
        upper, lower = nf.subleading("Theta"), nf.subleading("theta")
    else:
        return Subcase.NOT_APPLICABLE
    if not (is_real(upper) and is_real(lower)):
        raise ComplexSubleading(f"cannot order {upper} and {lower}")
    return Subcase.CASE1 if real_part(upper) < real_part(lower) else Subcase.CASE2


def classify(f: CoefficientFamily) -> RecurrenceClass:
    """Classify ``f`` by degree shape and fill in the disc radius.

    Two-term families (``b_num = 0``) get Gauss's conditional verdict.  An
    A-shape family whose B_n decays faster than 1/n, or a B-shape family
    whose A_n decays faster than 1/n, keeps its theorem kind but the
    boundary verdict is downgraded to Unknown.
    """
    shape = shape_of(f)
    da, dA = f.a_num.degree, f.a_den.degree

    if f.is_two_term:
        if da == dA:
            nf = normalize(f)
            radius = _reciprocal(modulus(nf.A))
        else:
            nf = None
            radius = INF if da < dA else Fraction(0)
        return RecurrenceClass(Kind.TWO_TERM, radius, BoundaryVerdict.GAUSS_CONDITIONAL,
                               Subcase.NOT_APPLICABLE, nf)

    if shape == "other":
        radius = None
        if da < dA and f.b_num.degree < f.b_den.degree:
            radius = INF
        return RecurrenceClass(Kind.UNSUPPORTED, radius, BoundaryVerdict.UNKNOWN,
                               Subcase.NOT_APPLICABLE)

    try:
        nf = normalize(f)
    except UnsupportedShape:
        return RecurrenceClass(Kind.UNSUPPORTED, None, BoundaryVerdict.UNKNOWN,
                               Subcase.NOT_APPLICABLE)

    if shape == "A":
        kind = Kind.THM_ONE
        radius = _reciprocal(modulus(nf.A))
        decays_like_1_over_n = f.b_num.degree == f.b_den.degree - 1
    else:
        kind = Kind.THM_TWO
        radius = _reciprocal(exact_sqrt(modulus(nf.B)))
        decays_like_1_over_n = f.a_num.degree == f.a_den.degree - 1

    verdict = BoundaryVerdict.DIVERGES if decays_like_1_over_n else BoundaryVerdict.UNKNOWN
    try:
        sub = subcase_of(nf, kind)
    except ComplexSubleading:
        sub = Subcase.NOT_APPLICABLE
    return RecurrenceClass(kind, radius, verdict, sub, nf)
