"""Exact rational geometry over probability polytopes.

Credal sets are stored by their (irredundant) vertex lists. Every query a
preference engine needs reduces either to a support functional, which is
evaluated vertex by vertex, or to a small linear program solved exactly by
:mod:`ambiguity_engine.lp`.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, List, Sequence, Tuple

from .errors import DimensionMismatch, NotSeparable
from .lp import feasible_point, linprog

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(v):
    return v if type(v) is Fraction else Fraction(v)


class Vector:
    """An immutable vector of rationals indexed by states.

    Used for utility vectors u(f), linear functionals and priors alike.
    Entries may be given as ints, Fractions, or strings such as ``"7/3"``.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        self.coords = tuple(_frac(c) for c in coords)

    @classmethod
    def constant(cls, value, n: int) -> "Vector":
        v = _frac(value)
        return cls([v] * n)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if isinstance(other, Vector):
            return self.coords == other.coords
        if isinstance(other, tuple):
            return self.coords == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Vector(" + ", ".join(str(c) for c in self.coords) + ")"

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def _other(self, other):
        if len(other) != len(self.coords):
            raise DimensionMismatch(f"dimension {len(other)} != {len(self.coords)}")
        return other.coords if isinstance(other, Vector) else tuple(_frac(c) for c in other)

    def __add__(self, other):
        return Vector([a + b for a, b in zip(self.coords, self._other(other))])

    def __sub__(self, other):
        return Vector([a - b for a, b in zip(self.coords, self._other(other))])

    def __neg__(self):
        return Vector([-a for a in self.coords])

    def __mul__(self, scalar):
        s = _frac(scalar)
        return Vector([s * a for a in self.coords])

    __rmul__ = __mul__

    def shift(self, c) -> "Vector":
        c = _frac(c)
        return Vector([a + c for a in self.coords])

    def dot(self, other) -> Fraction:
        return sum((a * b for a, b in zip(self.coords, self._other(other))), _ZERO)

    @property
    def is_constant(self) -> bool:
        return all(c == self.coords[0] for c in self.coords)


Functional = Vector
UtilityVector = Vector


@dataclass(frozen=True)
class StateSpace:
    labels: Tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) < 2:
            raise ValueError("a state space needs at least 2 states")
        if len(set(labels)) != len(labels):
            raise ValueError("state labels must be distinct")

    @property
    def size(self) -> int:
        return len(self.labels)


class Prior(Vector):
    """A probability vector: nonnegative rationals summing to exactly 1."""

    __slots__ = ()

    def __init__(self, coords: Iterable):
        super().__init__(coords)
        if any(c < 0 for c in self.coords):
            raise ValueError(f"prior {self} has a negative coordinate")
        if sum(self.coords) != 1:
            raise ValueError(f"prior does not sum to 1: {self}")

    def __repr__(self):
        return "Prior(" + ", ".join(str(c) for c in self.coords) + ")"


def _as_prior(p) -> Prior:
    return p if isinstance(p, Prior) else Prior(p)


# -- planar helpers (three states are handled in (p1, p2) coordinates) ------

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2d(points) -> List[tuple]:
    """Strict convex hull, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[tuple] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[tuple] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def clip_polygon(poly: Sequence[tuple], a, b, c) -> List[tuple]:
    """Clip a convex polygon to the closed half-plane ``a*x + b*y >= c``."""
    out: List[tuple] = []
    k = len(poly)
    for i in range(k):
        P = poly[i]
        Q = poly[(i + 1) % k]
        fp = a * P[0] + b * P[1] - c
        fq = a * Q[0] + b * Q[1] - c
        if fp >= 0:
            out.append(P)
        if (fp > 0 and fq < 0) or (fp < 0 and fq > 0):
            t = fp / (fp - fq)
            out.append((P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1])))
    dedup: List[tuple] = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _irredundant(points: List[Prior]) -> List[Prior]:
    n = len(points[0])
    if len(points) == 1:
        return points
    if n == 2:
        lo = min(points, key=lambda p: p[0])
        hi = max(points, key=lambda p: p[0])
        return [p for p in points if p == lo or p == hi]
    if n == 3:
        keep = set(_hull2d([(p[0], p[1]) for p in points]))
        return [p for p in points if (p[0], p[1]) in keep]
    return [p for i, p in enumerate(points)
            if not _in_hull(points[:i] + points[i + 1:], p)]


def _in_hull(vertices: Sequence[Vector], q: Vector) -> bool:
    if len(vertices) == 1:
        return vertices[0] == q
    k = len(vertices)
    n = len(q)
    A = [[v[i] for v in vertices] for i in range(n)] + [[_ONE] * k]
    b = list(q) + [_ONE]
    return feasible_point(A, b) is not None


class CredalSet:
    """Convex hull of finitely many priors, stored by irredundant vertices.

    Two credal sets compare equal iff their hulls coincide (an irredundant
    vertex list is unique up to order).
    """

    __slots__ = ("vertices", "dim", "_num", "_den", "_halfspaces")

    def __init__(self, vertices: Iterable):
        pts: List[Prior] = []
        for v in vertices:
            p = _as_prior(v)
            if p not in pts:
                pts.append(p)
        if not pts:
            raise ValueError("a credal set needs at least one vertex")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise DimensionMismatch("vertices of different dimensions")
        self.vertices: Tuple[Prior, ...] = tuple(_irredundant(pts))
        self.dim = n
        den = reduce(lcm, (c.denominator for p in self.vertices for c in p), 1)
        self._den = den
        self._num = tuple(tuple(c.numerator * (den // c.denominator) for c in p)
                          for p in self.vertices)
        self._halfspaces = None

    @classmethod
    def simplex(cls, n: int) -> "CredalSet":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def is_singleton(self) -> bool:
        return len(self.vertices) == 1

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, CredalSet):
            return NotImplemented
        return self.dim == other.dim and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def __repr__(self):
        return "CredalSet[" + ", ".join(str(v) for v in self.vertices) + "]"

    def _values(self, xi) -> Tuple[List[int], int]:
        if len(xi) != self.dim:
            raise DimensionMismatch(f"functional of dimension {len(xi)} on a {self.dim}-state set")
        coords = xi.coords if isinstance(xi, Vector) else [_frac(c) for c in xi]
        d = 1
        for c in coords:
            cd = c.denominator
            if cd != 1:
                d = d * cd // gcd(d, cd)
        xs = [c.numerator * (d // c.denominator) for c in coords]
        vals = [sum(a * b for a, b in zip(row, xs)) for row in self._num]
        return vals, d * self._den

    def support_min(self, xi) -> Fraction:
        vals, den = self._values(xi)
        return Fraction(min(vals), den)

    def support_max(self, xi) -> Fraction:
        vals, den = self._values(xi)
        return Fraction(max(vals), den)

    def support_range(self, xi) -> Tuple[Fraction, Fraction]:
        vals, den = self._values(xi)
        return Fraction(min(vals), den), Fraction(max(vals), den)

    def halfspaces(self) -> List[Tuple[Vector, Fraction]]:
        """Inequalities ``<normal, p> >= offset`` cutting this set out of the simplex.

        Only available for two or three states.
        """
        if self._halfspaces is None:
            self._halfspaces = _derive_halfspaces(self)
        return list(self._halfspaces)


def _check_same(a: CredalSet, b: CredalSet):
    if a.dim != b.dim:
        raise DimensionMismatch(f"{a.dim}-state set vs {b.dim}-state set")


def support_min(s: CredalSet, xi) -> Fraction:
    """Minimum of ``<xi, p>`` over the set (attained at a vertex)."""
    return s.support_min(xi)


def support_max(s: CredalSet, xi) -> Fraction:
    return s.support_max(xi)


def contains(s: CredalSet, q) -> bool:
    if len(q) != s.dim:
        raise DimensionMismatch(f"point of dimension {len(q)} vs {s.dim}-state set")
    q = q if isinstance(q, Vector) else Vector(q)
    if s.dim == 2:
        lo, hi = s.support_range((1, 0))
        return sum(q) == 1 and lo <= q[0] <= hi
    return _in_hull(s.vertices, q)


def intersects(a: CredalSet, b: CredalSet) -> bool:
    _check_same(a, b)
    if a.dim == 2:
        alo, ahi = a.support_range((1, 0))
        blo, bhi = b.support_range((1, 0))
        return alo <= bhi and blo <= ahi
    ka, kb = len(a.vertices), len(b.vertices)
    A = [[v[i] for v in a.vertices] + [-w[i] for w in b.vertices] for i in range(a.dim)]
    A.append([_ONE] * ka + [_ZERO] * kb)
    A.append([_ZERO] * ka + [_ONE] * kb)
    rhs = [_ZERO] * a.dim + [_ONE, _ONE]
    return feasible_point(A, rhs) is not None


def subset(inner: CredalSet, outer: CredalSet) -> bool:
    _check_same(inner, outer)
    return all(contains(outer, v) for v in inner.vertices)


def separating_functional(s: CredalSet, q) -> Tuple[Vector, Fraction]:
    """Functional ``m`` and level ``alpha`` with ``<m,q> < alpha < <m,p>`` on ``s``.

    Among separators with coordinates in [-1, 1] the one maximizing the gap
    ``min_s <m,.> - <m,q>`` is chosen, ties broken lexicographically
    (smallest first coordinate, then second, ...). The result is rescaled
    to a primitive integer vector and ``alpha`` is the midpoint of the gap.
    """
    if len(q) != s.dim:
        raise DimensionMismatch(f"point of dimension {len(q)} vs {s.dim}-state set")
    q = q if isinstance(q, Vector) else Vector(q)
    if contains(s, q):
        raise NotSeparable(f"{q} lies in the set")
    n = s.dim
    # variables: y_i = m_i + 1 in [0, 2], then t = tp - tm
    nv = n + 2
    A_ub, b_ub = [], []
    for v in s.vertices:
        d = [vi - qi for vi, qi in zip(v, q)]
        A_ub.append([-di for di in d] + [_ONE, -_ONE])
        b_ub.append(-sum(d))
    for i in range(n):
        row = [_ZERO] * nv
        row[i] = _ONE
        A_ub.append(row)
        b_ub.append(Fraction(2))
    res = linprog([_ZERO] * n + [-_ONE, _ONE], A_ub, b_ub)
    gap = -res.fun
    if gap <= 0:
        raise NotSeparable(f"{q} lies in the set")
    A_ub.append([_ZERO] * n + [-_ONE, _ONE])
    b_ub.append(-gap)
    A_eq, b_eq = [], []
    for k in range(n):
        obj = [_ZERO] * nv
        obj[k] = _ONE
        res = linprog(obj, A_ub, b_ub, A_eq, b_eq)
        row = [_ZERO] * nv
        row[k] = _ONE
        A_eq.append(row)
        b_eq.append(res.x[k])
    m = [y - 1 for y in b_eq]
    scale = reduce(lcm, (c.denominator for c in m), 1)
    ints = [int(c * scale) for c in m]
    g = reduce(gcd, ints, 0)
    m = Vector([Fraction(c, g) for c in ints])
    lo = s.support_min(m)
    at_q = m.dot(q)
    return m, (at_q + lo) / 2


def _point_distance(b: CredalSet, v: Vector) -> Fraction:
    if b.dim == 2:
        lo, hi = b.support_range((1, 0))
        return max(_ZERO, lo - v[0], v[0] - hi)
    if _in_hull(b.vertices, v):
        return _ZERO
    k = len(b.vertices)
    A_ub, b_ub = [], []
    for i in range(b.dim):
        col = [w[i] for w in b.vertices]
        A_ub.append([-c for c in col] + [-_ONE])
        b_ub.append(-v[i])
        A_ub.append(col + [-_ONE])
        b_ub.append(v[i])
    res = linprog([_ZERO] * k + [_ONE], A_ub, b_ub, [[_ONE] * k + [_ZERO]], [_ONE])
    return res.fun


def hull_distance(a: CredalSet, b: CredalSet) -> Fraction:
    """Directed Hausdorff distance (sup norm) from ``a`` to ``b``.

    Distance to a convex set is a convex function, so the maximum over
    ``a`` is attained at one of its vertices.
    """
    _check_same(a, b)
    return max(_point_distance(b, v) for v in a.vertices)


# -- H-representation ---------------------------------------------------------

def _lift3(normal2, offset) -> Tuple[Vector, Fraction]:
    return Vector([normal2[0], normal2[1], 0]), offset


def _derive_halfspaces(s: CredalSet) -> List[Tuple[Vector, Fraction]]:
    if s.dim == 2:
        lo, hi = s.support_range((1, 0))
        return [(Vector([1, 0]), lo), (Vector([-1, 0]), -hi)]
    if s.dim != 3:
        raise ValueError("halfspace output is only derived for two or three states")
    pts = _hull2d([(p[0], p[1]) for p in s.vertices])
    out = []
    if len(pts) == 1:
        (x, y), = pts
        for normal, off in (((1, 0), x), ((-1, 0), -x), ((0, 1), y), ((0, -1), -y)):
            out.append(_lift3(normal, off))
        return out
    if len(pts) == 2:
        (x0, y0), (x1, y1) = pts
        dx, dy = x1 - x0, y1 - y0
        perp = (-dy, dx)
        level = perp[0] * x0 + perp[1] * y0
        out.append(_lift3(perp, level))
        out.append(_lift3((dy, -dx), -level))
        out.append(_lift3((dx, dy), dx * x0 + dy * y0))
        out.append(_lift3((-dx, -dy), -(dx * x1 + dy * y1)))
        return out
    k = len(pts)
    for i in range(k):
        (x0, y0), (x1, y1) = pts[i], pts[(i + 1) % k]
        dx, dy = x1 - x0, y1 - y0
        normal = (-dy, dx)  # inward for a counterclockwise polygon
        out.append(_lift3(normal, normal[0] * x0 + normal[1] * y0))
    return out


def _lin_solve(A: List[List[Fraction]], b: List[Fraction]):
    """Unique solution of a square system, or None when singular."""
    n = len(A)
    M = [list(r) + [bi] for r, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def polytope_from_halfspaces(constraints: Sequence[Tuple[Sequence, object]], n: int) -> CredalSet:
    """Vertices of ``{p in simplex : <normal, p> >= offset for each constraint}``.

    Raises ValueError if the region is empty.
    """
    cons = [(Vector(nrm), _frac(off)) for nrm, off in constraints]
    if any(len(nrm) != n for nrm, _ in cons):
        raise DimensionMismatch("constraint normal does not match state count")
    if n == 2:
        lo, hi = _ZERO, _ONE
        for nrm, off in cons:
            # nrm0 p + nrm1 (1 - p) >= off
            a = nrm[0] - nrm[1]
            r = off - nrm[1]
            if a > 0:
                lo = max(lo, r / a)
            elif a < 0:
                hi = min(hi, r / a)
            elif r > 0:
                raise ValueError("empty polytope")
        if lo > hi:
            raise ValueError("empty polytope")
        return CredalSet([[lo, 1 - lo], [hi, 1 - hi]])
    if n == 3:
        poly = [(_ZERO, _ZERO), (_ONE, _ZERO), (_ZERO, _ONE)]
        for nrm, off in cons:
            poly = clip_polygon(poly, nrm[0] - nrm[2], nrm[1] - nrm[2], off - nrm[2])
            if not poly:
                raise ValueError("empty polytope")
        return CredalSet([[x, y, 1 - x - y] for x, y in poly])
    # general dimension: enumerate bases of n-1 tight constraints plus sum = 1
    allc = cons + [(Vector([1 if j == i else 0 for j in range(n)]), _ZERO) for i in range(n)]
    pts = []
    for combo in combinations(allc, n - 1):
        A = [list(c[0]) for c in combo] + [[_ONE] * n]
        b = [c[1] for c in combo] + [_ONE]
        sol = _lin_solve(A, b)
        if sol is None:
            continue
        v = Vector(sol)
        if all(nrm.dot(v) >= off for nrm, off in allc) and v not in pts:
            pts.append(v)
    if not pts:
        raise ValueError("empty polytope")
    return CredalSet(pts)
