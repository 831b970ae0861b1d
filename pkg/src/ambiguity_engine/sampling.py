"""Seeded generators for acts, constants, weights and random preferences.

Everything is drawn from rational grids so that audits stay exact. Acts
are either *wide* (independent coordinates over the whole grid) or
*narrow* (a common level plus a little noise). Narrow acts are what make
hypotheses like "f is incomparable to x" fire with useful frequency.
"""

import random
from fractions import Fraction
from typing import List, Optional

from .geometry import CredalSet, Vector
from .preferences import (
    BewleyPreference, MaxminPreference, SeuPreference, TfcPreference,
    UtilityNormalization,
)

GRID_DEN = 64
GRID_MAX = 256
WEIGHT_DEN = 16


def grid_value(rng: random.Random, lo: int = -GRID_MAX, hi: int = GRID_MAX) -> Fraction:
    return Fraction(rng.randint(lo, hi), GRID_DEN)


def wide_act(rng: random.Random, n: int) -> Vector:
    return Vector([grid_value(rng) for _ in range(n)])


def narrow_act(rng: random.Random, n: int, level: Optional[Fraction] = None, spread: int = 16) -> Vector:
    if level is None:
        level = grid_value(rng, -GRID_MAX + spread, GRID_MAX - spread)
    return Vector([level + Fraction(rng.randint(-spread, spread), GRID_DEN) for _ in range(n)])


def random_act(rng: random.Random, n: int) -> Vector:
    return wide_act(rng, n) if rng.random() < 0.5 else narrow_act(rng, n)


def random_weight(rng: random.Random, positive: bool = True) -> Fraction:
    return Fraction(rng.randint(1 if positive else 0, WEIGHT_DEN), WEIGHT_DEN)


def random_prior(rng: random.Random, n: int, den: int = 12) -> Vector:
    while True:
        w = [rng.randint(0, den) for _ in range(n)]
        if sum(w):
            s = sum(w)
            return Vector([Fraction(a, s) for a in w])


def random_credal_set(rng: random.Random, n: int, max_vertices: int = 5) -> CredalSet:
    k = rng.randint(1, max_vertices)
    return CredalSet([random_prior(rng, n) for _ in range(k)])


def _point_inside(rng: random.Random, s: CredalSet) -> Vector:
    """A random grid-weighted convex combination of the vertices of ``s``."""
    w = [rng.randint(0, 4) for _ in s.vertices]
    if not sum(w):
        w[0] = 1
    total = sum(w)
    out = [Fraction(0)] * s.dim
    for wi, v in zip(w, s.vertices):
        out = [a + Fraction(wi, total) * b for a, b in zip(out, v)]
    return Vector(out)


def random_tfc(rng: random.Random, n: Optional[int] = None, shape: Optional[str] = None) -> TfcPreference:
    """A valid TFC preference over 2 to 4 states.

    ``shape`` picks the relation between the sets: "general" (D merely shares
    a point with C), "symmetric", "D-in-C", "C-in-D" or "seu". Random when
    omitted.
    """
    if n is None:
        n = rng.choice((2, 3, 4))
    if shape is None:
        shape = rng.choice(("general", "general", "symmetric", "D-in-C", "C-in-D", "seu"))
    C = random_credal_set(rng, n)
    if shape == "seu":
        p = C.vertices[0]
        return TfcPreference([p], [p])
    if shape == "symmetric":
        return TfcPreference(C, C)
    if shape == "D-in-C":
        pts = [_point_inside(rng, C) for _ in range(rng.randint(1, 5))]
        return TfcPreference(C, pts)
    if shape == "C-in-D":
        pts = [_point_inside(rng, C) for _ in range(rng.randint(1, 5))]
        return TfcPreference(pts, C)
    pts = [_point_inside(rng, C)] + [random_prior(rng, n) for _ in range(rng.randint(0, 4))]
    return TfcPreference(C, pts)


def random_normalization(rng: random.Random) -> UtilityNormalization:
    return UtilityNormalization(Fraction(rng.randint(1, 8), rng.randint(1, 4)), Fraction(rng.randint(-8, 8), 4))


def random_bewley(rng: random.Random, n: Optional[int] = None) -> BewleyPreference:
    if n is None:
        n = rng.choice((2, 3, 4))
    return BewleyPreference(random_credal_set(rng, n))


def random_maxmin(rng: random.Random, n: Optional[int] = None) -> MaxminPreference:
    if n is None:
        n = rng.choice((2, 3, 4))
    return MaxminPreference(random_credal_set(rng, n))


def random_seu(rng: random.Random, n: int) -> SeuPreference:
    return SeuPreference(random_prior(rng, n))


def perturb_set(rng: random.Random, s: CredalSet) -> List[Vector]:
    """Vertex list of ``s`` with one vertex dropped or one new vertex added."""
    verts = list(s.vertices)
    if len(verts) > 1 and rng.random() < 0.5:
        verts.pop(rng.randrange(len(verts)))
        return verts
    return verts + [random_prior(rng, s.dim)]
