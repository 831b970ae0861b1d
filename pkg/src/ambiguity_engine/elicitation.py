"""Recover the prior sets of a black-box twofold conservative preference.

The only access to the preference is an oracle answering "is f strictly
preferred to g?". Comparing an act against constants pins down its two
support values: ``f > x`` iff ``min_C <f,p> > x`` and ``x > f`` iff
``x > max_D <f,p>``. Bisecting on the constant level therefore brackets a
support value, and each bracket yields a halfspace that provably contains
the true set. Intersecting those halfspaces gives outer approximations of
C and D.
"""

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, ElicitationError
from .geometry import (
    CredalSet, Vector, _frac, clip_polygon, contains,
    polytope_from_halfspaces, separating_functional,
)
from .preferences import TfcPreference, constant
from .reports import Witness

Oracle = Callable[[Vector, Vector], bool]


class Side(enum.Enum):
    C_MIN = "C-min"
    D_MAX = "D-max"


@dataclass(frozen=True)
class SupportSample:
    """Bracket ``[lo, hi]`` around one support value.

    C side: the oracle prefers the act to ``lo`` but not to ``hi``, so
    ``lo < min_C <= hi``. D side: ``hi`` is preferred to the act and ``lo``
    is not, so ``lo <= max_D < hi``.
    """

    direction: Vector
    side: Side
    lo: Fraction
    hi: Fraction
    queries: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


class CountingOracle:
    """Wraps an oracle and counts the queries made through it."""

    def __init__(self, oracle: Oracle):
        self.oracle = oracle
        self.calls = 0

    def __call__(self, f, g) -> bool:
        self.calls += 1
        return bool(self.oracle(f, g))


def default_bracket(direction: Vector) -> Tuple[Fraction, Fraction]:
    return min(direction) - 1, max(direction) + 1


def query_bound(width, tolerance) -> int:
    """Maximum queries used by one bisection over a bracket of this width."""
    width, tolerance = _frac(width), _frac(tolerance)
    if width <= tolerance:
        return 2
    return math.ceil(math.log2(width / tolerance)) + 2


def _steps(width: Fraction, tol: Fraction) -> int:
    k = 0
    while width > tol:
        width /= 2
        k += 1
    return k


def elicit_support(oracle: Oracle, direction, side: Side, bracket=None,
                   tolerance=Fraction(1, 1024)) -> SupportSample:
    """Bisect on a constant level to bracket a support value of ``direction``."""
    f = direction if isinstance(direction, Vector) else Vector(direction)
    tol = _frac(tolerance)
    if tol <= 0:
        raise ElicitationError("tolerance must be positive")
    lo, hi = (default_bracket(f) if bracket is None
              else (_frac(bracket[0]), _frac(bracket[1])))
    if lo >= hi:
        raise ElicitationError("bracket invalid: empty interval")
    n = len(f)
    fmin, fmax = min(f), max(f)
    queries = 0

    def ask(x):
        nonlocal queries
        queries += 1
        c = constant(x, n)
        return oracle(f, c) if side is Side.C_MIN else oracle(c, f)

    if side is Side.C_MIN:
        if not ask(lo) or ask(hi):
            raise ElicitationError("bracket invalid: the act must beat the low constant and not the high one")
    else:
        if ask(lo) or not ask(hi):
            raise ElicitationError("bracket invalid: the high constant must beat the act and the low one must not")

    for _ in range(_steps(hi - lo, tol)):
        mid = (lo + hi) / 2
        ans = ask(mid)
        if side is Side.C_MIN:
            # constants above every payoff can never be beaten, those below all payoffs always are
            if (ans and mid >= fmax) or (not ans and mid < fmin):
                raise ElicitationError(f"inconsistent oracle at level {mid}")
            if ans:
                lo = mid
            else:
                hi = mid
        else:
            if (ans and mid <= fmin) or (not ans and mid > fmax):
                raise ElicitationError(f"inconsistent oracle at level {mid}")
            if ans:
                hi = mid
            else:
                lo = mid
    return SupportSample(f, side, lo, hi, queries)


# -- direction sets -----------------------------------------------------------

def _rational(x: float, bound: int = 64) -> Fraction:
    return Fraction(x).limit_denominator(bound)


def default_directions(n: int) -> List[Vector]:
    """Signed unit vectors plus evenly spread rational directions.

    Two states: 32 angles on the circle. Three states: 42 angles in the
    plane orthogonal to the all-ones vector (the only plane that matters on
    the simplex). More states: pairwise differences ``e_i - e_j``.
    """
    out: List[Vector] = []

    def add(v):
        v = Vector(v)
        if any(v) and v not in out:
            out.append(v)

    for i in range(n):
        for s in (1, -1):
            add([s if j == i else 0 for j in range(n)])
    if n == 2:
        for k in range(32):
            t = 2 * math.pi * k / 32
            add([_rational(math.cos(t)), _rational(math.sin(t))])
    elif n == 3:
        r2, r6 = math.sqrt(2), math.sqrt(6)
        for k in range(42):
            t = 2 * math.pi * k / 42
            c, s = math.cos(t), math.sin(t)
            add([_rational(c / r2 + s / r6), _rational(-c / r2 + s / r6), _rational(-2 * s / r6)])
    else:
        for i in range(n):
            for j in range(n):
                if i != j:
                    add([1 if k == i else (-1 if k == j else 0) for k in range(n)])
    return out


def _rank(vectors: Sequence[Vector]) -> int:
    rows = [list(v) for v in vectors]
    rank, ncol = 0, len(rows[0]) if rows else 0
    for col in range(ncol):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _check_directions(directions: Sequence[Vector], n: int):
    if any(len(d) != n for d in directions):
        raise DimensionMismatch("direction of the wrong dimension")
    if _rank(directions) < n:
        raise ElicitationError("degenerate directions: they do not span the state space")
    for i in range(n):
        for s in (1, -1):
            ok = any(d[i] * s > 0 and all(d[j] == 0 for j in range(n) if j != i) for d in directions)
            if not ok:
                raise ElicitationError(f"degenerate directions: missing {'+' if s > 0 else '-'}e{i + 1}")


# -- recovery -----------------------------------------------------------------

@dataclass
class RecoveredSets:
    """Outer approximations of C and D certified by oracle answers.

    Halfspaces are stored as ``(normal, offset)`` meaning
    ``<normal, p> >= offset``; the simplex constraints are implicit.
    """

    C_outer: CredalSet
    D_outer: CredalSet
    tolerance: Fraction
    C_halfspaces: List[Tuple[Vector, Fraction]]
    D_halfspaces: List[Tuple[Vector, Fraction]]
    queries: int
    elicitations: int
    query_bound: int
    samples: List[SupportSample] = field(default_factory=list)


class _SideState:
    def __init__(self, oracle, side, tol, n):
        self.oracle = oracle
        self.side = side
        self.tol = tol
        self.n = n
        self.cons: List[Tuple[Vector, Fraction]] = []
        self.samples: List[SupportSample] = []
        self.bound = 0

    def lower_bound(self, eta: Vector) -> Fraction:
        """A certified strict lower bound on ``min_S <eta, p>``."""
        direction = eta if self.side is Side.C_MIN else -eta
        s = elicit_support(self.oracle, direction, self.side, tolerance=self.tol)
        self.samples.append(s)
        self.bound += query_bound(max(direction) - min(direction) + 2, self.tol)
        if self.side is Side.C_MIN:
            return s.lo
        return -s.hi

    def add(self, eta: Vector):
        self.cons.append((eta, self.lower_bound(eta)))


def _polygon(cons) -> List[tuple]:
    one, zero = Fraction(1), Fraction(0)
    poly = [(zero, zero), (one, zero), (zero, one)]
    for nrm, off in cons:
        poly = clip_polygon(poly, nrm[0] - nrm[2], nrm[1] - nrm[2], off - nrm[2])
    return poly


def _unit_l1(v):
    s = abs(v[0]) + abs(v[1])
    return (v[0] / s, v[1] / s)


def _refine(state: _SideState, max_rounds: int, max_directions: int):
    """Cut off corners of the planar outer approximation.

    At each corner, the direction between the two adjacent edge normals is
    probed; the resulting halfspace is kept when it cuts the corner.
    Stops when no probe cuts anything.
    """
    probed = set()
    for _ in range(max_rounds):
        poly = _polygon(state.cons)
        k = len(poly)
        if k < 3:
            return
        new = []
        for i in range(k):
            a, v, b = poly[i - 1], poly[i], poly[(i + 1) % k]
            n_prev = _unit_l1((a[1] - v[1], v[0] - a[0]))
            n_next = _unit_l1((v[1] - b[1], b[0] - v[0]))
            e = (n_prev[0] + n_next[0], n_prev[1] + n_next[1])
            scale = max(abs(e[0]), abs(e[1]))
            if scale == 0:
                continue
            key = (e[0] / scale, e[1] / scale)
            if key in probed:
                continue
            probed.add(key)
            if len(state.cons) >= max_directions:
                return
            eta = Vector([key[0], key[1], 0])
            bound = state.lower_bound(eta)
            if eta[0] * v[0] + eta[1] * v[1] < bound:
                new.append((eta, bound))
        if not new:
            return
        state.cons.extend(new)


def recover_prior_sets(oracle: Oracle, directions: Optional[Sequence] = None,
                       tolerance=Fraction(1, 4096), *, dim: Optional[int] = None,
                       refine: bool = True, max_rounds: int = 24,
                       max_directions: int = 600) -> RecoveredSets:
    """Outer approximations of both prior sets from oracle answers alone.

    Every supplied direction is elicited on both sides. For three states the
    polygons are then refined adaptively at their corners (``refine``);
    without refinement a fixed direction set leaves corner overshoot that no
    tolerance can remove.
    """
    tol = _frac(tolerance)
    if tol <= 0:
        raise ElicitationError("tolerance must be positive")
    if directions is None:
        if dim is None:
            raise ValueError("pass directions or dim")
        directions = default_directions(dim)
    directions = [d if isinstance(d, Vector) else Vector(d) for d in directions]
    n = len(directions[0]) if directions else (dim or 0)
    _check_directions(directions, n)

    counter = CountingOracle(oracle)
    sides = {s: _SideState(counter, s, tol, n) for s in Side}
    for d in directions:
        sides[Side.C_MIN].add(d)
        sides[Side.D_MAX].add(d)
    if refine and n == 3:
        for st in sides.values():
            _refine(st, max_rounds, max_directions)

    c_state, d_state = sides[Side.C_MIN], sides[Side.D_MAX]
    return RecoveredSets(
        C_outer=polytope_from_halfspaces(c_state.cons, n),
        D_outer=polytope_from_halfspaces(d_state.cons, n),
        tolerance=tol,
        C_halfspaces=list(c_state.cons),
        D_halfspaces=list(d_state.cons),
        queries=counter.calls,
        elicitations=len(c_state.samples) + len(d_state.samples),
        query_bound=c_state.bound + d_state.bound,
        samples=c_state.samples + d_state.samples,
    )


# -- uniqueness ---------------------------------------------------------------

@dataclass
class UniquenessReport:
    equivalent: bool
    affine: bool
    same_C: bool
    same_D: bool
    witness: Optional[Witness] = None
    probes: int = 0
    probe_disagreements: int = 0

    def __bool__(self):
        return self.equivalent


def _disagree(rep1: TfcPreference, rep2: TfcPreference, w: Witness) -> bool:
    f = w.acts[0]
    x = constant(w.constants[0], len(f))
    if w.tag == "C":
        return rep1.prefers(f, x) != rep2.prefers(f, x)
    return rep1.prefers(x, f) != rep2.prefers(x, f)


def _set_witness(a: CredalSet, b: CredalSet, side: str) -> Optional[Witness]:
    """Act/constant pair on which a set and its rival disagree, if the sets differ."""
    for big, small in ((a, b), (b, a)):
        for q in big.vertices:
            if contains(small, q):
                continue
            m, alpha = separating_functional(small, q)
            if side == "C":
                return Witness("C", acts=(m,), constants=(alpha,))
            return Witness("D", acts=(-m,), constants=(-alpha,))
    return None


def verify_uniqueness(rep1: TfcPreference, rep2: TfcPreference, probe_budget: int = 200,
                      seed: int = 0) -> UniquenessReport:
    """Decide whether two representations describe the same preference.

    They do iff the utilities are positive affine transforms of each other
    and both prior sets coincide. When they do not, the report carries an
    act and a constant on which the two engines answer differently. The
    probe budget drives an additional randomized agreement check.
    """
    if rep1.dim != rep2.dim:
        raise DimensionMismatch("representations over different state spaces")
    affine = rep2.norm.is_positive_affine_of(rep1.norm)
    same_c = rep1.C == rep2.C
    same_d = rep1.D == rep2.D
    report = UniquenessReport(affine and same_c and same_d, affine, same_c, same_d)
    if not same_c:
        report.witness = _set_witness(rep1.C, rep2.C, "C")
    elif not same_d:
        report.witness = _set_witness(rep1.D, rep2.D, "D")
    if report.witness is not None and not _disagree(rep1, rep2, report.witness):
        raise AssertionError("uniqueness witness failed to separate the engines")

    rng = random.Random(seed)
    n = rep1.dim
    for _ in range(probe_budget):
        f = Vector([Fraction(rng.randint(-256, 256), 64) for _ in range(n)])
        x = constant(Fraction(rng.randint(-256, 256), 64), n)
        report.probes += 1
        if rep1.prefers(f, x) != rep2.prefers(f, x) or rep1.prefers(x, f) != rep2.prefers(x, f):
            report.probe_disagreements += 1
    return report
