import random
from dataclasses import dataclass
from fractions import Fraction as F

import pytest

from ambiguity_engine import (
    AxiomId, BewleyPreference, MaxminPreference, SeuPreference, TfcPreference,
    UnsupportedAudit, Vector, Witness, audit_axiom, expected_to_hold,
    replay_witness,
)
from ambiguity_engine.axioms import (
    OutcomeAdapter, _boundary_weights, audit_extension_axiom, threshold_constant,
)
from ambiguity_engine.sampling import random_bewley, random_maxmin, random_tfc
from oracles import vertex_max, vertex_min

SINGLE = [a for a in AxiomId if a not in (AxiomId.A12, AxiomId.A13)]


@pytest.fixture
def sym(segment):
    return TfcPreference(segment, segment)


def test_axiom_ids_parse():
    assert AxiomId.parse("A5") is AxiomId.A5
    assert AxiomId.parse("A8-monotonicity") is AxiomId.A8
    assert AxiomId.parse("a13") is AxiomId.A13
    with pytest.raises(ValueError):
        AxiomId.parse("A14")


def test_interval_order_holds_on_the_segment(sym):
    rep = audit_axiom(sym, AxiomId.A5, 1000, seed=0)
    assert rep.passed and rep.violation_count == 0
    assert rep.samples >= 1000 and rep.instantiated > 0


def test_monotonicity_fails_on_the_segment(sym):
    rep = audit_axiom(sym, "A8", 200, seed=0)
    assert rep.verdict == "fail"
    f, g = rep.violations[0].acts
    assert all(b >= a for a, b in zip(f, g)) and not sym.prefers(g, f)
    assert vertex_min(sym.C.vertices, g) <= vertex_max(sym.D.vertices, f)
    assert replay_witness(sym, rep.violations[0])


def test_monotonicity_witness_example(sym):
    w = Witness("A8", acts=(Vector((4, 0)), Vector((F(13, 3), F(1, 3)))))
    assert replay_witness(sym, w)
    assert vertex_min(sym.C.vertices, w.acts[1]) == F(5, 3)
    assert vertex_max(sym.D.vertices, w.acts[0]) == 2


def test_seu_monotonicity_passes():
    rep = audit_axiom(SeuPreference((F(1, 2), F(1, 2))), AxiomId.A8, 500, seed=3)
    assert rep.passed and rep.instantiated == 500


def test_pair_axioms_are_routed_elsewhere(sym):
    with pytest.raises(UnsupportedAudit):
        audit_axiom(sym, AxiomId.A12)
    with pytest.raises(UnsupportedAudit):
        audit_extension_axiom(sym, MaxminPreference(sym.C), AxiomId.A5)


def test_budget_must_be_positive(sym):
    with pytest.raises(ValueError):
        audit_axiom(sym, AxiomId.A1, 0)


@pytest.mark.parametrize("axiom", SINGLE, ids=lambda a: a.name)
def test_audit_is_deterministic(sym, axiom):
    a = audit_axiom(sym, axiom, 60, seed=11)
    b = audit_axiom(sym, axiom, 60, seed=11)
    assert a == b


def _engines(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3, 4))
    return [random_tfc(rng, n), random_bewley(rng, n), random_maxmin(rng, n),
            SeuPreference(random_tfc(rng, n, "seu").C.vertices[0])]


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("axiom", SINGLE, ids=lambda a: a.name)
def test_verdicts_match_the_representation(seed, axiom):
    for pref in _engines(seed):
        rep = audit_axiom(pref, axiom, 80, seed=seed)
        if expected_to_hold(pref, axiom):
            assert rep.passed, (type(pref).__name__, rep.violations[:1])
        for w in rep.violations:
            assert replay_witness(pref, w)
        assert rep.verdict == ("fail" if rep.violations else "pass")


@pytest.mark.parametrize("seed", range(10))
def test_constructed_counterexamples_for_tfc(seed):
    p = random_tfc(random.Random(seed), shape="general")
    if not (p.C.is_singleton and p.C == p.D):
        assert not audit_axiom(p, AxiomId.A8, 5, seed).passed
    for axiom in (AxiomId.A10, AxiomId.A11):
        rep = audit_axiom(p, axiom, 40, seed)
        assert rep.passed == expected_to_hold(p, axiom)


def test_expected_table():
    seg = [(F(1, 3), F(2, 3)), (F(1, 2), F(1, 2))]
    assert not expected_to_hold(BewleyPreference(seg), AxiomId.A5)
    assert expected_to_hold(BewleyPreference(seg), AxiomId.A9)
    m = MaxminPreference(seg)
    assert [a for a in SINGLE if not expected_to_hold(m, a)] == [AxiomId.A4, AxiomId.A9, AxiomId.A11]
    t = TfcPreference(seg, [(F(1, 2), F(1, 2))])
    assert expected_to_hold(t, AxiomId.A10) and not expected_to_hold(t, AxiomId.A11)


# -- the checks catch broken engines --------------------------------------------------

@dataclass(frozen=True)
class ClosedTfc(TfcPreference):
    """Uses a weak inequality, so its contour sets are closed."""

    def prefers(self, f, g):
        return self.C.support_min(Vector(f)) >= self.D.support_max(Vector(g))


class Intransitive:
    """Prefers f to g only when the first coordinate is larger by less than 1."""

    dim = 2

    def prefers(self, f, g):
        d = f[0] - g[0]
        return 0 < d < 1


def test_openness_check_catches_closed_contours(sym):
    rep = audit_axiom(ClosedTfc(sym.C, sym.D), AxiomId.A2, 50, seed=0)
    assert not rep.passed
    assert all(replay_witness(ClosedTfc(sym.C, sym.D), w) for w in rep.violations)
    assert not any(replay_witness(sym, w) for w in rep.violations)


def test_order_check_catches_intransitivity():
    rep = audit_axiom(Intransitive(), AxiomId.A1, 300, seed=0)
    assert any(w.tag == "A1.transitive" for w in rep.violations)


def test_boundary_weights_are_on_the_boundary(sym):
    # independent hand computation: min over C of the mixture equals max over D of h
    rng = random.Random(5)
    found = 0
    for _ in range(200):
        f, g, h = (Vector([F(rng.randint(-64, 64), 16) for _ in range(2)]) for _ in range(3))
        target = vertex_max(sym.D.vertices, h)
        for alpha in _boundary_weights(sym, f, g, h, True):
            phi = [alpha * a + (1 - alpha) * b for a, b in zip(f, g)]
            assert vertex_min(sym.C.vertices, phi) == target
            found += 1
    assert found > 0


def test_outcome_adapter_groups_outcomes():
    ad = OutcomeAdapter()
    assert ad.utility(0) == ad.utility(2) != ad.utility(3)
    rng = random.Random(0)
    out = ad.sample(rng, 4)
    assert ad.act(ad.indifferent_twin(rng, out)) == ad.act(out)


def test_threshold_constant(sym):
    f = Vector((1, 3))
    below = threshold_constant(sym, f, "below")
    above = threshold_constant(sym, f, "above")
    assert sym.prefers(f, Vector((below, below))) and below > 2 - F(1, 1000)
    assert sym.prefers(Vector((above, above)), f) and above < F(7, 3) + F(1, 1000)
