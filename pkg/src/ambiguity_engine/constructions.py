"""Closed-form counterexamples built from the geometry of the prior sets.

Each function returns a :class:`Witness` (or ``None`` when the relevant set
inclusion holds and no counterexample exists). Acts come out of
:func:`separating_functional`: a prior ``q`` outside a set ``S`` gives a
functional ``m`` and level ``alpha`` with ``<m,q> < alpha < min_S <m,.>``,
and the act with utility vector ``m`` is then ranked above the constant
``alpha`` by every prior in ``S`` but below it by ``q``.
"""

from fractions import Fraction
from typing import Optional, Tuple

from .geometry import CredalSet, Vector, contains, separating_functional
from .preferences import TfcPreference
from .reports import Witness


def outside_point(inner: CredalSet, outer: CredalSet) -> Optional[Vector]:
    """First vertex of ``inner`` not in ``outer``, or ``None`` if ``inner`` is a subset."""
    for v in inner.vertices:
        if not contains(outer, v):
            return v
    return None


def separate(inner: CredalSet, outer: CredalSet) -> Optional[Tuple[Vector, Fraction]]:
    """Separator of a point of ``inner`` lying outside ``outer``."""
    q = outside_point(inner, outer)
    if q is None:
        return None
    return separating_functional(outer, q)


def spread_direction(pref: TfcPreference) -> Optional[Tuple[Vector, Fraction]]:
    """An act ``f`` with ``max_D f > min_C f``, and that spread.

    Scans ``4 e_i`` then ``-4 e_i``. Exists whenever the preference is not SEU.
    """
    n = pref.dim
    for sign in (4, -4):
        for i in range(n):
            f = Vector([sign if j == i else 0 for j in range(n)])
            spread = pref.D.support_max(f) - pref.C.support_min(f)
            if spread > 0:
                return f, spread
    return None


def monotonicity_witness(pref: TfcPreference) -> Optional[Witness]:
    """``g = f + eps`` dominates ``f`` in every state yet is not preferred to it."""
    found = spread_direction(pref)
    if found is None:
        return None
    f, spread = found
    g = f.shift(spread / 2)
    return Witness("A8", acts=(f, g))


def complementary_witness(pref: TfcPreference, axiom: str) -> Optional[Witness]:
    """Counterexample to complementary caution (``"A10"``) or love (``"A11"``).

    A10 fails iff D is not inside C; A11 fails iff C is not inside D.
    """
    if axiom == "A10":
        sep = separate(pref.D, pref.C)
        if sep is None:
            return None
        m, alpha = sep
        return Witness("A10", acts=(m,), constants=(alpha,))
    sep = separate(pref.C, pref.D)
    if sep is None:
        return None
    m, alpha = sep
    return Witness("A11", acts=(-m,), constants=(-alpha,))
