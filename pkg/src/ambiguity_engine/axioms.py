"""Sampled, exact audits of the behavioral axioms against any engine.

Every check draws rational act tuples from a seeded generator, tests
whether the axiom's hypothesis holds, and if so checks the conclusion with
exact arithmetic. A violation is stored as a :class:`Witness` that
:func:`replay_witness` can re-run against the same engine.
"""

import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .constructions import complementary_witness, monotonicity_witness
from .elicitation import Side, elicit_support
from .errors import UnsupportedAudit
from .geometry import Vector, subset
from .preferences import (
    BewleyPreference, MaxminPreference, Preference, SeuPreference,
    TfcPreference, constant, mix,
)
from .reports import AuditReport, AxiomId, Witness
from .sampling import (
    GRID_DEN, grid_value, narrow_act, random_act, random_weight, wide_act,
)

MAX_STORED_WITNESSES = 10


def incomparable(pref: Preference, f, g) -> bool:
    return not pref.prefers(f, g) and not pref.prefers(g, f)


def _is_seu(pref: Preference) -> bool:
    if isinstance(pref, SeuPreference):
        return True
    if isinstance(pref, TfcPreference):
        return pref.C.is_singleton and pref.C == pref.D
    return pref.C.is_singleton


def expected_to_hold(pref: Preference, axiom: AxiomId) -> bool:
    """Whether the engine's representation guarantees the axiom."""
    if axiom in (AxiomId.A12, AxiomId.A13):
        raise UnsupportedAudit(f"{axiom.value} needs a pair of preferences")
    if _is_seu(pref):
        return True
    if isinstance(pref, TfcPreference):
        if axiom in (AxiomId.A8, AxiomId.A9):
            return False
        if axiom is AxiomId.A10:
            return subset(pref.D, pref.C)
        if axiom is AxiomId.A11:
            return subset(pref.C, pref.D)
        return True
    if isinstance(pref, BewleyPreference):
        return axiom is not AxiomId.A5
    if isinstance(pref, MaxminPreference):
        return axiom not in (AxiomId.A4, AxiomId.A9, AxiomId.A11)
    raise UnsupportedAudit(f"unknown engine {type(pref).__name__}")


# -- exact boundary data for the openness check ------------------------------

def _dots(vertices, v: Vector) -> List[Fraction]:
    return [sum(a * b for a, b in zip(p, v)) for p in vertices]


def _boundary(pref: Preference, h: Vector, upper: bool):
    """``(vertices, aggregate, offset act, threshold)`` for one contour set.

    Membership of ``phi`` depends only on ``aggregate(<p, phi - offset>)``
    over the vertices compared with the threshold; the two agree exactly on
    the set's boundary.
    """
    n = len(h)
    zero = Vector.constant(0, n)
    if isinstance(pref, TfcPreference):
        if upper:
            return pref.C.vertices, min, zero, max(_dots(pref.D.vertices, h))
        return pref.D.vertices, max, zero, min(_dots(pref.C.vertices, h))
    if isinstance(pref, BewleyPreference):
        return pref.C.vertices, (min if upper else max), h, Fraction(0)
    if isinstance(pref, MaxminPreference):
        return pref.C.vertices, min, zero, min(_dots(pref.C.vertices, h))
    if isinstance(pref, SeuPreference):
        return (pref.p,), min, zero, _dots((pref.p,), h)[0]
    raise UnsupportedAudit(f"unknown engine {type(pref).__name__}")


def _boundary_weights(pref, f, g, h, upper) -> List[Fraction]:
    """Mixing weights in [0, 1] where the mixture sits exactly on the boundary."""
    verts, agg, s, t = _boundary(pref, h, upper)
    at_g = _dots(verts, g - s)
    slope = _dots(verts, f - g)
    cands = {Fraction(0), Fraction(1)}
    for b, a in zip(at_g, slope):
        if a != 0:
            alpha = (t - b) / a
            if 0 <= alpha <= 1:
                cands.add(alpha)
    out = []
    for alpha in sorted(cands):
        if agg(b + alpha * a for b, a in zip(at_g, slope)) == t:
            out.append(alpha)
    return out


def _a2_violated(pref, f, g, h, alpha, upper) -> bool:
    if alpha not in _boundary_weights(pref, f, g, h, upper):
        return False
    phi = mix(f, g, alpha)
    return pref.prefers(phi, h) if upper else pref.prefers(h, phi)


# -- replay -------------------------------------------------------------------

def _replay_a1(pref, w):
    kind = w.tag.split(".", 1)[1]
    P = pref.prefers
    if kind == "irreflexive":
        return P(w.acts[0], w.acts[0])
    if kind == "asymmetric":
        f, g = w.acts
        return P(f, g) and P(g, f)
    if kind == "transitive":
        f, g, h = w.acts
        return P(f, g) and P(g, h) and not P(f, h)
    hi, lo = w.constants
    n = pref.dim
    return not P(constant(hi, n), constant(lo, n))


def _replay_a2(pref, w):
    f, g, h = w.acts
    return _a2_violated(pref, f, g, h, w.weights[0], w.tag.endswith("upper"))


def _replay_a3(pref, w):
    f, g = w.acts
    x = constant(w.constants[0], len(f))
    a = w.weights[0]
    return pref.prefers(f, g) != pref.prefers(mix(f, x, a), mix(g, x, a))


def _replay_a4(pref, w):
    f, g1, g2 = w.acts
    m = mix(g1, g2, Fraction(1, 2))
    if w.tag.endswith("upper"):
        return pref.prefers(g1, f) and pref.prefers(g2, f) and not pref.prefers(m, f)
    return pref.prefers(f, g1) and pref.prefers(f, g2) and not pref.prefers(f, m)


def _replay_a5(pref, w):
    f, g = w.acts
    x = constant(w.constants[0], len(f))
    return incomparable(pref, f, x) and incomparable(pref, g, x) and not incomparable(pref, f, g)


def _replay_a6(pref, w):
    f, g, h = w.acts
    if f != g:
        return False
    return pref.prefers(f, h) != pref.prefers(g, h) or pref.prefers(h, f) != pref.prefers(h, g)


def _replay_a7(pref, w):
    (f,) = w.acts
    hi, lo = w.constants
    n = len(f)
    if not (hi > max(f) and lo < min(f)):
        return False
    return not (pref.prefers(constant(hi, n), f) and pref.prefers(f, constant(lo, n)))


def _replay_a8(pref, w):
    f, g = w.acts
    if not all(b > a for a, b in zip(f, g)):
        return False
    return not pref.prefers(g, f)


def _replay_a9(pref, w):
    f, g, h = w.acts
    a = w.weights[0]
    return pref.prefers(f, g) != pref.prefers(mix(f, h, a), mix(g, h, a))


def _replay_a10(pref, w):
    (f,) = w.acts
    x0 = w.constants[0]
    n = len(f)
    g = Vector.constant(2 * x0, n) - f
    x = constant(x0, n)
    return pref.prefers(f, x) and not pref.prefers(x, g)


def _replay_a11(pref, w):
    (f,) = w.acts
    x0 = w.constants[0]
    n = len(f)
    g = Vector.constant(2 * x0, n) - f
    x = constant(x0, n)
    return pref.prefers(x, f) and not pref.prefers(g, x)


_REPLAY: Dict[str, Callable] = {
    "A1": _replay_a1, "A2": _replay_a2, "A3": _replay_a3, "A4": _replay_a4,
    "A5": _replay_a5, "A6": _replay_a6, "A7": _replay_a7, "A8": _replay_a8,
    "A9": _replay_a9, "A10": _replay_a10, "A11": _replay_a11,
}


def replay_witness(pref: Preference, witness: Witness) -> bool:
    """True iff the witness still exhibits its violation on ``pref``."""
    key = witness.tag.split(".", 1)[0]
    if key not in _REPLAY:
        raise UnsupportedAudit(f"no replay for witness tag {witness.tag!r}")
    return bool(_REPLAY[key](pref, witness))


# -- samplers -----------------------------------------------------------------

class _Audit:
    def __init__(self, pref, axiom, seed, budget):
        self.pref = pref
        self.report = AuditReport(axiom=axiom, seed=seed, samples=0)
        self.rng = random.Random(seed)
        self.n = pref.dim
        self.budget = budget

    def hit(self):
        self.report.instantiated += 1

    def violation(self, w: Witness):
        self.report.violation_count += 1
        if len(self.report.violations) < MAX_STORED_WITNESSES:
            self.report.violations.append(w)

    def probe(self, w: Optional[Witness]):
        """Check a constructed candidate counterexample alongside the samples."""
        if w is None:
            return
        self.report.samples += 1
        self.hit()
        if replay_witness(self.pref, w):
            self.report.constructed += 1
            self.violation(w)

    def __iter__(self):
        for _ in range(self.budget):
            self.report.samples += 1
            yield self.rng


def _audit_a1(a: _Audit):
    P, n = a.pref.prefers, a.n
    a.hit()
    if not P(constant(1, n), constant(0, n)):
        a.violation(Witness("A1.nontrivial", constants=(Fraction(1), Fraction(0))))
    for rng in a:
        f, g = random_act(rng, n), random_act(rng, n)
        h = narrow_act(rng, n) if rng.random() < 0.5 else wide_act(rng, n)
        a.hit()
        if P(f, f):
            a.violation(Witness("A1.irreflexive", acts=(f,)))
        fg, gf = P(f, g), P(g, f)
        if fg and gf:
            a.violation(Witness("A1.asymmetric", acts=(f, g)))
        if fg and P(g, h):
            if not P(f, h):
                a.violation(Witness("A1.transitive", acts=(f, g, h)))


def _audit_a2(a: _Audit):
    for rng in a:
        f, g, h = random_act(rng, a.n), random_act(rng, a.n), random_act(rng, a.n)
        for upper in (True, False):
            for alpha in _boundary_weights(a.pref, f, g, h, upper):
                a.hit()
                phi = mix(f, g, alpha)
                hit = a.pref.prefers(phi, h) if upper else a.pref.prefers(h, phi)
                if hit:
                    a.violation(Witness("A2.upper" if upper else "A2.lower",
                                        acts=(f, g, h), weights=(alpha,)))


def _audit_a3(a: _Audit):
    P = a.pref.prefers
    for rng in a:
        f, g = random_act(rng, a.n), random_act(rng, a.n)
        x = grid_value(rng)
        alpha = random_weight(rng)
        xc = constant(x, a.n)
        a.hit()
        if P(f, g) != P(mix(f, xc, alpha), mix(g, xc, alpha)):
            a.violation(Witness("A3", acts=(f, g), constants=(x,), weights=(alpha,)))


def _audit_a4(a: _Audit):
    P = a.pref.prefers
    half = Fraction(1, 2)
    for rng in a:
        f = random_act(rng, a.n)
        g1, g2 = random_act(rng, a.n), random_act(rng, a.n)
        m = mix(g1, g2, half)
        if P(g1, f) and P(g2, f):
            a.hit()
            if not P(m, f):
                a.violation(Witness("A4.upper", acts=(f, g1, g2)))
        if P(f, g1) and P(f, g2):
            a.hit()
            if not P(f, m):
                a.violation(Witness("A4.lower", acts=(f, g1, g2)))


def _incomparable_level(pref, f: Vector, steps: int = 16) -> Optional[Fraction]:
    """A constant incomparable to ``f``, found by bisecting on the engine's answers."""
    n = len(f)
    lo, hi = min(f) - 1, max(f) + 1
    for _ in range(steps):
        x = (lo + hi) / 2
        xc = constant(x, n)
        if pref.prefers(f, xc):
            lo = x
        elif pref.prefers(xc, f):
            hi = x
        else:
            return x
    return None


def _audit_a5(a: _Audit):
    pref = a.pref
    for rng in a:
        level = grid_value(rng, -128, 128)
        f = narrow_act(rng, a.n, level, rng.choice((16, 64, 128)))
        x = _incomparable_level(pref, f)
        if x is None:
            x = level + Fraction(rng.randint(-8, 8), GRID_DEN)
        g = narrow_act(rng, a.n, x, rng.choice((16, 64, 128))) if rng.random() < 0.8 else wide_act(rng, a.n)
        xc = constant(x, a.n)
        if incomparable(pref, f, xc) and incomparable(pref, g, xc):
            a.hit()
            if not incomparable(pref, f, g):
                a.violation(Witness("A5", acts=(f, g), constants=(x,)))


class OutcomeAdapter:
    """Finite outcome space whose utility index lumps outcomes into classes.

    Outcomes are integers and ``u(o) = floor(o / size) / 16``, so outcomes
    in the same class are indifferent as constant acts while remaining
    distinct outcomes.
    """

    def __init__(self, size: int = 3):
        self.size = size

    def utility(self, o: int) -> Fraction:
        return Fraction(o // self.size, 16)

    def act(self, outcomes) -> Vector:
        return Vector([self.utility(o) for o in outcomes])

    def sample(self, rng: random.Random, n: int) -> List[int]:
        return [rng.randint(-64 * self.size, 64 * self.size) for _ in range(n)]

    def indifferent_twin(self, rng: random.Random, outcomes) -> List[int]:
        return [(o // self.size) * self.size + rng.randrange(self.size) for o in outcomes]


def _audit_a6(a: _Audit):
    P = a.pref.prefers
    adapter = OutcomeAdapter()
    for rng in a:
        fo = adapter.sample(rng, a.n)
        go = adapter.indifferent_twin(rng, fo)
        f, g = adapter.act(fo), adapter.act(go)
        h = random_act(rng, a.n) if rng.random() < 0.5 else narrow_act(rng, a.n, sum(f) / a.n)
        fh, hf = P(f, h), P(h, f)
        if fh or hf:
            a.hit()
            if fh != P(g, h) or hf != P(h, g):
                a.violation(Witness("A6", acts=(f, g, h)))


def _audit_a7(a: _Audit):
    P, n = a.pref.prefers, a.n
    for rng in a:
        f = random_act(rng, n)
        if rng.random() < 0.5:
            hi = max(f) + Fraction(rng.randint(1, 16), GRID_DEN)
            lo = min(f) - Fraction(rng.randint(1, 16), GRID_DEN)
        else:
            hi, lo = grid_value(rng), grid_value(rng)
        if hi > max(f) and lo < min(f):
            a.hit()
            if not (P(constant(hi, n), f) and P(f, constant(lo, n))):
                a.violation(Witness("A7", acts=(f,), constants=(hi, lo)))


def _audit_a8(a: _Audit):
    if isinstance(a.pref, TfcPreference):
        a.probe(monotonicity_witness(a.pref))
    for rng in a:
        f = random_act(rng, a.n)
        g = Vector([c + Fraction(rng.randint(1, 16), GRID_DEN) for c in f])
        a.hit()
        if not a.pref.prefers(g, f):
            a.violation(Witness("A8", acts=(f, g)))


def _audit_a9(a: _Audit):
    P = a.pref.prefers
    for rng in a:
        level = grid_value(rng, -200, 200)
        f, g = narrow_act(rng, a.n, level), narrow_act(rng, a.n, level)
        h = random_act(rng, a.n)
        alpha = random_weight(rng)
        a.hit()
        if P(f, g) != P(mix(f, h, alpha), mix(g, h, alpha)):
            a.violation(Witness("A9", acts=(f, g, h), weights=(alpha,)))


def threshold_constant(pref, f: Vector, side: str, tol=Fraction(1, 1 << 16)) -> Fraction:
    """A constant just past the point where ``pref`` changes its verdict on ``f``.

    ``"below"``: highest probed level still beaten by ``f``. ``"above"``:
    lowest probed level beating ``f``. ``"cut"``: lowest probed level that
    ``f`` fails to beat. Found by bisection on the engine's answers only.
    """
    if side == "above":
        return elicit_support(pref.prefers, f, Side.D_MAX, tolerance=tol).hi
    s = elicit_support(pref.prefers, f, Side.C_MIN, tolerance=tol)
    return s.lo if side == "below" else s.hi


def _complementary(a: _Audit, tag: str):
    if isinstance(a.pref, TfcPreference):
        a.probe(complementary_witness(a.pref, tag))
    check = _replay_a10 if tag == "A10" else _replay_a11
    P = a.pref.prefers
    for rng in a:
        level = grid_value(rng, -200, 200)
        if rng.random() < 0.5:
            f = random_act(rng, a.n)
            x0 = threshold_constant(a.pref, f, "below" if tag == "A10" else "above")
        else:
            f = narrow_act(rng, a.n, level) if rng.random() < 0.7 else wide_act(rng, a.n)
            x0 = level + Fraction(rng.randint(-8, 8), GRID_DEN)
        x = constant(x0, a.n)
        if (P(f, x) if tag == "A10" else P(x, f)):
            a.hit()
            w = Witness(tag, acts=(f,), constants=(x0,))
            if check(a.pref, w):
                a.violation(w)


_AUDITS = {
    AxiomId.A1: _audit_a1, AxiomId.A2: _audit_a2, AxiomId.A3: _audit_a3,
    AxiomId.A4: _audit_a4, AxiomId.A5: _audit_a5, AxiomId.A6: _audit_a6,
    AxiomId.A7: _audit_a7, AxiomId.A8: _audit_a8, AxiomId.A9: _audit_a9,
    AxiomId.A10: lambda a: _complementary(a, "A10"),
    AxiomId.A11: lambda a: _complementary(a, "A11"),
}


def audit_axiom(pref: Preference, axiom, budget: int = 1000, seed: int = 0) -> AuditReport:
    """Audit one axiom on ``budget`` sampled tuples, deterministically in ``seed``.

    A12 and A13 relate two preferences and are audited by
    :func:`audit_extension_axiom` instead.
    """
    if not isinstance(axiom, AxiomId):
        axiom = AxiomId.parse(axiom)
    if budget < 1:
        raise ValueError("sample budget must be at least 1")
    if axiom in (AxiomId.A12, AxiomId.A13):
        raise UnsupportedAudit(f"{axiom.value} needs a TFC/maxmin pair; use verify_extension")
    a = _Audit(pref, axiom, seed, budget)
    _AUDITS[axiom](a)
    return a.report


# -- pair axioms ----------------------------------------------------------------

def _replay_pair(tfc: TfcPreference, maxmin: MaxminPreference, w: Witness) -> bool:
    (f,) = w.acts
    x = constant(w.constants[0], len(f))
    if w.tag == "A12":
        return tfc.prefers(f, x) and not maxmin.weakly_prefers(f, x)
    return not tfc.prefers(f, x) and not maxmin.weakly_prefers(x, f)


def replay_pair_witness(tfc: TfcPreference, maxmin: MaxminPreference, w: Witness) -> bool:
    """Replay a consistency (A12) or caution (A13) witness."""
    return _replay_pair(tfc, maxmin, w)


def audit_extension_axiom(tfc: TfcPreference, maxmin: MaxminPreference, axiom,
                          budget: int = 1000, seed: int = 0) -> AuditReport:
    """Sampled audit of consistency (A12) or caution (A13) between two engines."""
    if not isinstance(axiom, AxiomId):
        axiom = AxiomId.parse(axiom)
    if axiom not in (AxiomId.A12, AxiomId.A13):
        raise UnsupportedAudit(f"{axiom.value} is a single-preference axiom")
    a = _Audit(tfc, axiom, seed, budget)
    tag = axiom.name
    for rng in a:
        if rng.random() < 0.5:
            f = random_act(rng, a.n)
            x0 = threshold_constant(tfc, f, "below" if axiom is AxiomId.A12 else "cut")
        else:
            level = grid_value(rng, -200, 200)
            f = narrow_act(rng, a.n, level) if rng.random() < 0.7 else wide_act(rng, a.n)
            x0 = level + Fraction(rng.randint(-8, 8), GRID_DEN)
        fx = tfc.prefers(f, constant(x0, a.n))
        if fx == (axiom is AxiomId.A12):
            a.hit()
            w = Witness(tag, acts=(f,), constants=(x0,))
            if _replay_pair(tfc, maxmin, w):
                a.violation(w)
    return a.report
