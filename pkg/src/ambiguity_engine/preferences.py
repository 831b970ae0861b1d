"""Preference engines over acts expressed in utility space.

An act is handed to every engine as its payoff vector (one rational per
state). Each preference carries a :class:`UtilityNormalization`; the
utility of a payoff ``v`` is ``scale * v + shift``. Because ``scale > 0``
the normalization never changes a comparison, it only fixes which member of
the affine family of utilities the representation reports.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import List, Sequence, Tuple, Union

from .errors import DimensionMismatch, InvalidPreference
from .geometry import (
    CredalSet, Prior, Vector, _frac, clip_polygon, intersects, subset,
)


@dataclass(frozen=True)
class UtilityNormalization:
    scale: Fraction = Fraction(1)
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "scale", _frac(self.scale))
        object.__setattr__(self, "shift", _frac(self.shift))
        if self.scale <= 0:
            raise InvalidPreference("utility scale must be positive")

    def apply(self, value) -> Fraction:
        return self.scale * value + self.shift

    def relative_to(self, other: "UtilityNormalization") -> Tuple[Fraction, Fraction]:
        """``(a, b)`` with ``u_self = a * u_other + b``."""
        a = self.scale / other.scale
        return a, self.shift - a * other.shift

    def is_positive_affine_of(self, other: "UtilityNormalization") -> bool:
        a, _ = self.relative_to(other)
        return a > 0


class ComparisonResult(enum.Enum):
    FIRST = "FirstStrictlyPreferred"
    SECOND = "SecondStrictlyPreferred"
    INCOMPARABLE = "Incomparable"
    INDIFFERENT = "Indifferent"


@dataclass(frozen=True)
class EvaluationInterval:
    lo: Fraction
    hi: Fraction

    def __iter__(self):
        return iter((self.lo, self.hi))


def _vec(f, n) -> Vector:
    v = f if isinstance(f, Vector) else Vector(f)
    if len(v) != n:
        raise DimensionMismatch(f"act of dimension {len(v)} for a {n}-state preference")
    return v


def constant(value, n: int) -> Vector:
    """The constant act paying ``value`` in each of ``n`` states."""
    return Vector.constant(value, n)


def _as_set(s) -> CredalSet:
    return s if isinstance(s, CredalSet) else CredalSet(s)


@dataclass(frozen=True)
class TfcPreference:
    """Twofold conservative preference: ``f > g`` iff ``min_C u(f) > max_D u(g)``."""

    C: CredalSet
    D: CredalSet
    norm: UtilityNormalization = field(default_factory=UtilityNormalization)

    def __post_init__(self):
        object.__setattr__(self, "C", _as_set(self.C))
        object.__setattr__(self, "D", _as_set(self.D))
        if self.C.dim != self.D.dim:
            raise DimensionMismatch("C and D live over different state spaces")
        if not intersects(self.C, self.D):
            raise InvalidPreference("C and D are disjoint")

    @property
    def dim(self) -> int:
        return self.C.dim

    @cached_property
    def symmetric(self) -> bool:
        return self.C == self.D

    def interval(self, f) -> EvaluationInterval:
        f = _vec(f, self.dim)
        return EvaluationInterval(self.norm.apply(self.C.support_min(f)),
                                  self.norm.apply(self.D.support_max(f)))

    def prefers(self, f, g) -> bool:
        f = _vec(f, self.dim)
        g = _vec(g, self.dim)
        return self.C.support_min(f) > self.D.support_max(g)


@dataclass(frozen=True)
class BewleyPreference:
    """Unanimity: ``f > g`` iff every prior in ``C`` ranks ``f`` strictly higher."""

    C: CredalSet
    norm: UtilityNormalization = field(default_factory=UtilityNormalization)

    def __post_init__(self):
        object.__setattr__(self, "C", _as_set(self.C))

    @property
    def dim(self) -> int:
        return self.C.dim

    def prefers(self, f, g) -> bool:
        f = _vec(f, self.dim)
        return self.C.support_min(f - _vec(g, self.dim)) > 0


@dataclass(frozen=True)
class MaxminPreference:
    """Complete ranking by worst-case expected utility over ``C``."""

    C: CredalSet
    norm: UtilityNormalization = field(default_factory=UtilityNormalization)

    def __post_init__(self):
        object.__setattr__(self, "C", _as_set(self.C))

    @property
    def dim(self) -> int:
        return self.C.dim

    def value(self, f) -> Fraction:
        return self.norm.apply(self.C.support_min(_vec(f, self.dim)))

    def weakly_prefers(self, f, g) -> bool:
        return self.C.support_min(_vec(f, self.dim)) >= self.C.support_min(_vec(g, self.dim))

    def prefers(self, f, g) -> bool:
        return self.C.support_min(_vec(f, self.dim)) > self.C.support_min(_vec(g, self.dim))


@dataclass(frozen=True)
class SeuPreference:
    p: Prior
    norm: UtilityNormalization = field(default_factory=UtilityNormalization)

    def __post_init__(self):
        if not isinstance(self.p, Prior):
            object.__setattr__(self, "p", Prior(self.p))

    @property
    def dim(self) -> int:
        return len(self.p)

    def expectation(self, f) -> Fraction:
        return self.norm.apply(self.p.dot(_vec(f, self.dim)))

    def prefers(self, f, g) -> bool:
        return self.p.dot(_vec(f, self.dim)) > self.p.dot(_vec(g, self.dim))


Preference = Union[TfcPreference, BewleyPreference, MaxminPreference, SeuPreference]


def evaluate_interval(pref: TfcPreference, f) -> EvaluationInterval:
    return pref.interval(f)


def tfc_prefers(pref: TfcPreference, f, g) -> bool:
    return pref.prefers(f, g)


def bewley_prefers(pref: BewleyPreference, f, g) -> bool:
    return pref.prefers(f, g)


def maxmin_prefers(pref: MaxminPreference, f, g) -> bool:
    """Weak comparison: ``min_C u(f) >= min_C u(g)``."""
    return pref.weakly_prefers(f, g)


def seu_prefers(pref: SeuPreference, f, g) -> bool:
    return pref.prefers(f, g)


def compare(pref: Preference, f, g) -> ComparisonResult:
    """Classify a pair of acts under any engine.

    The partial engines never report indifference; the maxmin engine is
    complete and reports Indifferent on ties.
    """
    if pref.prefers(f, g):
        return ComparisonResult.FIRST
    if pref.prefers(g, f):
        return ComparisonResult.SECOND
    if isinstance(pref, MaxminPreference):
        return ComparisonResult.INDIFFERENT
    return ComparisonResult.INCOMPARABLE


def justifiable_negation(pref: TfcPreference, f, g) -> bool:
    """``f >' g`` iff not ``g > f``; defined for symmetric preferences only."""
    if not pref.symmetric:
        raise InvalidPreference("asymmetric preference: the negation is only justifiable when C = D")
    return not pref.prefers(g, f)


def mix(f, g, alpha) -> Vector:
    alpha = _frac(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"mixing weight {alpha} outside [0, 1]")
    f = f if isinstance(f, Vector) else Vector(f)
    g = g if isinstance(g, Vector) else Vector(g)
    if len(f) != len(g):
        raise DimensionMismatch("cannot mix acts of different dimensions")
    beta = 1 - alpha
    return Vector([alpha * a + beta * b for a, b in zip(f, g)])


# -- contour sets for two states ---------------------------------------------

DEFAULT_BOX = ((Fraction(0), Fraction(0)), (Fraction(15, 2), Fraction(6)))


@dataclass(frozen=True)
class ContourPolygons:
    upper: List[tuple]
    lower: List[tuple]
    upper_threshold: Fraction
    lower_threshold: Fraction


def _canonical_start(poly: List[tuple]) -> List[tuple]:
    if not poly:
        return poly
    k = poly.index(min(poly))
    return poly[k:] + poly[:k]


def _drop_collinear(poly: List[tuple]) -> List[tuple]:
    changed = True
    while changed and len(poly) > 2:
        changed = False
        for i in range(len(poly)):
            a, b, c = poly[i - 1], poly[i], poly[(i + 1) % len(poly)]
            if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) == 0:
                del poly[i]
                changed = True
                break
    return poly


def contour_polygons(pref: TfcPreference, g, box=DEFAULT_BOX) -> ContourPolygons:
    """Closures of the strict upper and lower contour sets at ``g``, clipped to ``box``.

    Upper set: ``{u : min_C <p,u> > max_D <p,u(g)>}``; lower set:
    ``{u : max_D <p,u> < min_C <p,u(g)>}``. Both are intersections of
    half-planes, one per vertex of C (resp. D). Polygons are returned
    counterclockwise starting from the lexicographically smallest vertex.
    """
    if pref.dim != 2:
        raise DimensionMismatch("contour polygons are defined for two states only")
    g = _vec(g, 2)
    (x0, y0), (x1, y1) = ((_frac(a), _frac(b)) for a, b in box)
    rect = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    up_level = pref.D.support_max(g)
    low_level = pref.C.support_min(g)
    upper = rect
    for p in pref.C.vertices:
        upper = clip_polygon(upper, p[0], p[1], up_level)
    lower = rect
    for p in pref.D.vertices:
        lower = clip_polygon(lower, -p[0], -p[1], -low_level)
    return ContourPolygons(
        upper=_canonical_start(_drop_collinear(upper)),
        lower=_canonical_start(_drop_collinear(lower)),
        upper_threshold=up_level,
        lower_threshold=low_level,
    )
