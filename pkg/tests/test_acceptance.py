"""Exit criteria for the package, run at full scale.

Each test records a PASS/FAIL line that is repeated in the terminal summary.
Run alone with ``pytest -m acceptance -s``.
"""

import json
import random
import shutil
import subprocess
import sys
from fractions import Fraction as F

import pytest

from ambiguity_engine import (
    AxiomId, BewleyPreference, MaxminPreference, TfcPreference,
    UtilityNormalization, Vector, audit_axiom, check_weak_rationalizable,
    construct_tfc_only_witness, contour_polygons, default_directions,
    hull_distance, induced_choice, load_scenario, recover_prior_sets,
    replay_witness, seu_collapse_check, verify_conservatism_order,
    verify_extension, verify_uniqueness, ambiguity_attitude, compare_ambiguity,
)
from ambiguity_engine.axioms import replay_pair_witness
from ambiguity_engine.choice import bewley_impossible, tfc_only_witness_law
from ambiguity_engine.cli import main
from ambiguity_engine.elicitation import query_bound
from ambiguity_engine.preferences import DEFAULT_BOX
from ambiguity_engine.sampling import (
    _point_inside, narrow_act, perturb_set, random_act, random_bewley,
    random_credal_set, random_maxmin, random_tfc,
)
from ambiguity_engine.theorems import replay_comparison, replay_conservatism
from criteria import record
from oracles import hull_contains, scipy_hull_distance, vertex_max, vertex_min

pytestmark = pytest.mark.acceptance

NECESSITY = [AxiomId.A1, AxiomId.A2, AxiomId.A3, AxiomId.A4, AxiomId.A5, AxiomId.A6, AxiomId.A7]


def _population(count=200, seed=2024):
    rng = random.Random(seed)
    return [random_tfc(rng) for _ in range(count)]


def _inside(vertices, points):
    return all(hull_contains(vertices, q) for q in points)


def _common_point(rng, tfc):
    """A point of C that also lies in D, found by rejection (the shared point always exists)."""
    for _ in range(200):
        q = _point_inside(rng, tfc.C)
        if hull_contains(tfc.D.vertices, q):
            return q
    for q in tfc.C.vertices:
        if hull_contains(tfc.D.vertices, q):
            return q
    for q in tfc.D.vertices:
        if hull_contains(tfc.C.vertices, q):
            return q
    return None


# -- 1 ----------------------------------------------------------------------------

def test_criterion_1_representation_necessity():
    prefs = _population()
    bad, min_samples, instantiated = [], None, {a: 0 for a in NECESSITY}
    for i, p in enumerate(prefs):
        for axiom in NECESSITY:
            rep = audit_axiom(p, axiom, 1000, seed=i)
            instantiated[axiom] += rep.instantiated
            min_samples = rep.samples if min_samples is None else min(min_samples, rep.samples)
            if rep.violation_count:
                bad.append((i, axiom.name, rep.violations[:1]))
    dims = sorted({p.dim for p in prefs})
    ok = not bad and min_samples >= 1000
    hits = ", ".join(f"{a.name}={instantiated[a]}" for a in NECESSITY)
    record(1, ok, f"{len(prefs)} preferences over {dims} states, {len(bad)} violating audits, "
                  f"min samples {min_samples}, instantiated {hits}")
    assert ok, bad[:3]


# -- 2 ----------------------------------------------------------------------------

def test_criterion_2_collapse():
    prefs = _population() + [random_tfc(random.Random(900 + k), shape="seu") for k in range(10)]
    witness_failures, seu_failures, non_seu, seu = [], [], 0, 0
    for i, p in enumerate(prefs):
        res = seu_collapse_check(p)
        singleton = len(p.C.vertices) == 1 and p.C == p.D
        if res.is_seu != singleton:
            witness_failures.append((i, "verdict"))
            continue
        if singleton:
            seu += 1
            for axiom in (AxiomId.A8, AxiomId.A9):
                rep = audit_axiom(p, axiom, 5000, seed=i)
                if rep.violation_count or rep.samples < 5000:
                    seu_failures.append((i, axiom.name))
        else:
            non_seu += 1
            f, g = res.witness.acts
            dominance = all(b >= a for a, b in zip(f, g))
            # g is not preferred: its worst case does not beat f's best case
            fails = vertex_min(p.C.vertices, g) <= vertex_max(p.D.vertices, f)
            if not (dominance and fails and replay_witness(p, res.witness)):
                witness_failures.append((i, "witness"))
    ok = not witness_failures and not seu_failures
    record(2, ok, f"{non_seu} non-SEU witnesses replayed, {seu} singleton preferences audited on "
                  f"A8/A9 with 5000 samples, {len(witness_failures) + len(seu_failures)} failures")
    assert ok, (witness_failures[:3], seu_failures[:3])


# -- 3 ----------------------------------------------------------------------------

def _bewley_partner(rng, tfc, k):
    if k % 3 == 0:
        pts = [q for q in (_common_point(rng, tfc) for _ in range(rng.randint(1, 3))) if q is not None]
        return BewleyPreference(pts)
    if k % 3 == 1:
        return BewleyPreference(perturb_set(rng, tfc.C))
    return random_bewley(rng, tfc.dim)


def test_criterion_3_conservatism():
    rng = random.Random(3)
    disagreements, unreplayed, included, by_sampling = [], [], 0, 0
    for k in range(200):
        tfc = random_tfc(rng)
        bew = _bewley_partner(rng, tfc, k)
        res = verify_conservatism_order(tfc, bew, 100, seed=k)
        truth = _inside(tfc.C.vertices, bew.C.vertices) and _inside(tfc.D.vertices, bew.C.vertices)
        if res.inclusion != truth or not res.agree:
            disagreements.append(k)
        if res.witness is not None and not replay_conservatism(tfc, bew, res.witness):
            unreplayed.append(k)
        included += truth
        by_sampling += res.sampled_violation
    ok = not disagreements and not unreplayed
    record(3, ok, f"200 pairs, {included} with inclusion, {200 - included} without "
                  f"({by_sampling} also caught by sampling alone), {len(disagreements)} disagreements, "
                  f"{len(unreplayed)} witnesses failed to replay")
    assert ok, (disagreements[:5], unreplayed[:5])


# -- 4 ----------------------------------------------------------------------------

def test_criterion_4_extension():
    rng = random.Random(4)
    disagreements, unreplayed, kinds = [], [], {"same": 0, "rescaled": 0, "near-miss": 0, "random": 0}
    holds = 0
    for k in range(200):
        tfc = random_tfc(rng)
        kind = ("same", "rescaled", "near-miss", "near-miss", "random")[k % 5]
        kinds[kind] += 1
        if kind == "same":
            mm = MaxminPreference(tfc.C)
        elif kind == "rescaled":
            mm = MaxminPreference(list(reversed(tfc.C.vertices)), UtilityNormalization(3, -2))
        elif kind == "near-miss":
            mm = MaxminPreference(perturb_set(rng, tfc.C))
        else:
            mm = random_maxmin(rng, tfc.dim)
        res = verify_extension(tfc, mm, 200, seed=k)
        truth = _inside(mm.C.vertices, tfc.C.vertices) and _inside(tfc.C.vertices, mm.C.vertices)
        audits_pass = res.consistency.passed and res.caution.passed
        if res.holds != truth or audits_pass != truth:
            disagreements.append((k, kind))
        for rep in (res.consistency, res.caution):
            if not all(replay_pair_witness(tfc, mm, w) for w in rep.violations):
                unreplayed.append(k)
        holds += truth
    ok = not disagreements and not unreplayed
    mix = ", ".join(f"{v} {k}" for k, v in kinds.items())
    record(4, ok, f"200 pairs ({mix}), extension holds in {holds}, "
                  f"{len(disagreements)} disagreements, {len(unreplayed)} unreplayed witnesses")
    assert ok, (disagreements[:5], unreplayed[:5])


# -- 5 ----------------------------------------------------------------------------

def test_criterion_5_attitudes():
    rng = random.Random(5)
    att_bad, att_unreplayed = [], []
    for k in range(200):
        p = random_tfc(rng)
        res = ambiguity_attitude(p, 200, seed=k)
        if (res.averse != _inside(p.C.vertices, p.D.vertices)
                or res.loving != _inside(p.D.vertices, p.C.vertices) or not res.agree):
            att_bad.append(k)
        expect_witness = (not res.averse) + (not res.loving)
        if len(res.witnesses) != expect_witness or not all(replay_witness(p, w) for w in res.witnesses):
            att_unreplayed.append(k)

    cmp_bad, cmp_unreplayed, cmp_true = [], [], 0
    for k in range(200):
        p1 = random_tfc(rng)
        if k % 3 == 0:
            p2 = p1
        elif k % 3 == 1:
            q = _common_point(rng, p1)
            p2 = TfcPreference([q], [q])
        else:
            p2 = random_tfc(rng, p1.dim)
        res = compare_ambiguity(p1, p2, 100, seed=k)
        averse = _inside(p1.C.vertices, p2.C.vertices)
        loving = _inside(p1.D.vertices, p2.D.vertices)
        if res.more_averse != averse or res.more_loving != loving or not res.agree:
            cmp_bad.append(k)
        for w, expected in ((res.averse_witness, averse), (res.loving_witness, loving)):
            if (w is None) != expected or (w is not None and not replay_comparison(p1, p2, w)):
                cmp_unreplayed.append(k)
        cmp_true += averse and loving
    ok = not (att_bad or att_unreplayed or cmp_bad or cmp_unreplayed)
    record(5, ok, f"200 attitude instances ({len(att_bad)} disagreements, {len(att_unreplayed)} witness "
                  f"problems), 200 comparisons ({cmp_true} with both inclusions, {len(cmp_bad)} disagreements, "
                  f"{len(cmp_unreplayed)} witness problems)")
    assert ok, (att_bad[:3], att_unreplayed[:3], cmp_bad[:3], cmp_unreplayed[:3])


# -- 6 ----------------------------------------------------------------------------

def _uniqueness_matrix():
    seg = [(F(1, 3), F(2, 3)), (F(1, 2), F(1, 2))]
    tri = [(F(1, 2), F(1, 4), F(1, 4)), (F(1, 4), F(1, 2), F(1, 4)), (F(1, 4), F(1, 4), F(1, 2))]
    quad = [(F(1, 3), F(1, 3), F(1, 3), 0), (0, F(1, 2), F(1, 4), F(1, 4))]
    cases = []
    for verts, extra in ((seg, (F(2, 3), F(1, 3))), (tri, (1, 0, 0)), (quad, (0, 0, 0, 1))):
        base = TfcPreference(verts, verts)
        inner = [sum(F(1, len(verts)) * v[i] for v in verts) for i in range(len(verts[0]))]
        cases += [
            (base, base, True),
            (base, TfcPreference(verts, verts, UtilityNormalization(3, -2)), True),
            (base, TfcPreference(list(reversed(verts)) + [inner], verts, UtilityNormalization(F(1, 2), 5)), True),
            (base, TfcPreference(verts[:1], verts), False),
            (base, TfcPreference(verts + [extra], verts), False),
            (base, TfcPreference(verts, verts + [extra], UtilityNormalization(2, 1)), False),
        ]
    asym = TfcPreference(seg, seg[1:])
    cases += [
        (asym, TfcPreference(seg[1:], seg), False),
        (asym, TfcPreference(seg, seg[1:], UtilityNormalization(7, F(-1, 3))), True),
    ]
    return cases


def test_criterion_6_elicitation():
    tol = F(1, 4096)
    rng = random.Random(6)
    unsound, loose, over_budget, excess_max = [], [], [], F(0)
    for k in range(50):
        n = 2 if k < 25 else 3
        p = random_tfc(rng, n)
        dirs = default_directions(n)
        rec = recover_prior_sets(p.prefers, dirs, tol)
        for true, outer in ((p.C, rec.C_outer), (p.D, rec.D_outer)):
            if hull_distance(true, outer) != 0 or not _inside(outer.vertices, true.vertices):
                unsound.append(k)
            excess = hull_distance(outer, true)
            if abs(float(excess) - scipy_hull_distance(outer.vertices, true.vertices)) > 1e-7:
                loose.append((k, "oracle mismatch"))
            excess_max = max(excess_max, excess)
            if excess > F(1, 256):
                loose.append((k, float(excess)))
        bounds = [query_bound(max(s.direction) - min(s.direction) + 2, tol) for s in rec.samples]
        per_sample = all(s.queries <= b for s, b in zip(rec.samples, bounds))
        # every elicited direction (refinement probes included) counts once per side
        if not per_sample or rec.queries > rec.query_bound or rec.queries > rec.elicitations * max(bounds):
            over_budget.append(k)

    matrix_bad, witness_bad = [], []
    cases = _uniqueness_matrix()
    for i, (r1, r2, expected) in enumerate(cases):
        rep = verify_uniqueness(r1, r2, 200, seed=i)
        if bool(rep) != expected or (expected and rep.probe_disagreements):
            matrix_bad.append(i)
        if not expected:
            f = rep.witness.acts[0]
            x = Vector([rep.witness.constants[0]] * r1.dim)
            differs = r1.prefers(f, x) != r2.prefers(f, x) or r1.prefers(x, f) != r2.prefers(x, f)
            if not differs:
                witness_bad.append(i)
    ok = not (unsound or loose or over_budget or matrix_bad or witness_bad) and len(cases) == 20
    record(6, ok, f"50 generators, {len(unsound)} unsound, worst excess {float(excess_max):.3g} "
                  f"(limit {2 ** -8}), {len(over_budget)} over query bound; uniqueness matrix "
                  f"{len(cases) - len(matrix_bad)}/{len(cases)} correct, {len(witness_bad)} bad witnesses")
    assert ok, (unsound[:3], loose[:3], over_budget[:3], matrix_bad, witness_bad)


# -- 7 ----------------------------------------------------------------------------

def test_criterion_7_contours(scenario_dir):
    sc = load_scenario(scenario_dir / "two_state.json")
    poly = contour_polygons(sc.preference("tfc1"), sc.act("g1"))
    (x0, y0), (x1, y1) = DEFAULT_BOX
    corners = {(x, y) for x in (x0, x1) for y in (y0, y1)}
    upper = set(poly.upper) - corners
    lower = set(poly.lower) - corners
    ok = (upper == {(0, F(14, 3)), (F(7, 3), F(7, 3)), (7, 0)}
          and lower == {(0, 3), (2, 2), (4, 0)}
          and all(isinstance(c, F) for v in poly.upper + poly.lower for c in v))
    fmt = lambda pts: " ".join(f"({x},{y})" for x, y in sorted(pts))
    record(7, ok, f"upper {fmt(upper)}, lower {fmt(lower)}")
    assert ok


# -- 8 ----------------------------------------------------------------------------

def test_criterion_8_choice():
    rng = random.Random(8)
    not_rationalized, chosen_acts = [], 0
    for k in range(50):
        bew = random_bewley(rng)
        n = bew.dim
        menus = []
        for _ in range(30):
            level = F(rng.randint(-64, 64), 64)
            menus.append((narrow_act(rng, n, level), narrow_act(rng, n, level)) if rng.random() < 0.5
                         else (random_act(rng, n), random_act(rng, n)))
        inst = induced_choice(bew, menus, F(rng.randint(-96, 96), 64))
        chosen_acts += sum(c != "x" for c in inst.chosen)
        if not check_weak_rationalizable(inst, TfcPreference(bew.C, bew.C)).ok:
            not_rationalized.append(k)

    law_bad, symbolic_bad, checked = [], [], 0
    for k in range(100):
        p = random_tfc(random.Random(8000 + k), shape="symmetric")
        if p.C.is_singleton:
            continue
        checked += 1
        inst = construct_tfc_only_witness(p)
        (f, g), = inst.menus
        # independent restatement of the three-part law by vertex enumeration
        law = (vertex_min(p.C.vertices, f) > inst.status_quo,
               vertex_min(p.C.vertices, g) <= vertex_max(p.C.vertices, f),
               all(b > a for a, b in zip(f, g)))
        if not (all(law) and all(tfc_only_witness_law(p, inst)) and check_weak_rationalizable(inst, p).ok):
            law_bad.append(k)
        if not bewley_impossible(inst):
            symbolic_bad.append(k)
        # the symbolic certificate means no sampled unanimity preference accepts it
        for _ in range(3):
            if check_weak_rationalizable(inst, BewleyPreference(random_credal_set(rng, p.dim))).ok:
                symbolic_bad.append(k)
    ok = not (not_rationalized or law_bad or symbolic_bad)
    record(8, ok, f"50 Bewley preferences x 30 menus ({chosen_acts} act choices), "
                  f"{len(not_rationalized)} not rationalized; {checked} symmetric witnesses, "
                  f"{len(law_bad)} law failures, {len(symbolic_bad)} certificate failures")
    assert ok, (not_rationalized, law_bad, symbolic_bad)


# -- 9 ----------------------------------------------------------------------------

def _cli():
    exe = shutil.which("ambiguity-engine")
    return [exe] if exe else [sys.executable, "-m", "ambiguity_engine.cli"]


def test_criterion_9_cli(scenario_dir, tmp_path, monkeypatch, capsys):
    suite = str(scenario_dir / "suite.json")
    fixture = str(scenario_dir / "two_state.json")
    runs, codes = [], []
    for i in range(2):
        out = tmp_path / f"jobs{i}.json"
        proc = subprocess.run(_cli() + ["jobs", "--scenario", suite, "--out", str(out)],
                              capture_output=True, check=False)
        codes.append(proc.returncode)
        runs.append(out.read_bytes())
    identical = runs[0] == runs[1]
    jobs = json.loads(runs[0])["jobs"]
    job_codes_ok = all(j["exit_code"] == 0 for j in jobs)

    single = []
    for argv in (["compare", "--pref", "tfc1", "--f", "f1", "--g", "g1"],
                 ["contours", "--pref", "tfc1", "--at", "g1"],
                 ["audit", "--pref", "tfc1", "--axiom", "A5", "--budget", "1000", "--seed", "7"]):
        outs = [subprocess.run(_cli() + [argv[0], "--scenario", fixture] + argv[1:],
                               capture_output=True, check=False) for _ in range(2)]
        single.append(outs[0].returncode == outs[1].returncode == 0 and outs[0].stdout == outs[1].stdout)

    usage = []
    for argv in (["compare", "--scenario", fixture, "--pref", "tfc1"],
                 ["audit", "--scenario", fixture, "--pref", "tfc1", "--axiom", "A1", "--budget", "-3"],
                 ["elicit", "--scenario", fixture, "--pref", "tfc1", "--tolerance", "0"],
                 ["compare", "--scenario", str(tmp_path / "missing.json")],
                 ["nonsense", "--scenario", fixture]):
        usage.append(main(argv) == 1)

    # an engine with closed contour sets breaks openness, which must surface as exit code 2
    def weak(self, f, g):
        return self.C.support_min(Vector(f)) >= self.D.support_max(Vector(g))
    monkeypatch.setattr(TfcPreference, "prefers", weak)
    property_code = main(["audit", "--scenario", fixture, "--pref", "tfc1", "--axiom", "A2", "--budget", "100"])
    monkeypatch.undo()
    capsys.readouterr()

    ok = (identical and codes == [0, 0] and job_codes_ok and all(single) and all(usage)
          and property_code == 2)
    record(9, ok, f"{len(jobs)} jobs byte-identical across runs: {identical}, exit codes {codes}, "
                  f"single commands stable {sum(single)}/{len(single)}, usage errors exit 1 "
                  f"{sum(usage)}/{len(usage)}, property failure exit {property_code}")
    assert ok
