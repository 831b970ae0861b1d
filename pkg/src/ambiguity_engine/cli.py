"""Command-line front end: ``ambiguity-engine <command> --scenario FILE ...``.

Exit codes: 0 success, 2 when a property check fails where theory says it
must hold, 1 on usage, input or IO errors.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Tuple

from .axioms import audit_axiom, expected_to_hold, replay_witness
from .choice import (
    bewley_impossible, check_weak_rationalizable, construct_tfc_only_witness,
    induced_choice, tfc_only_witness_law,
)
from .elicitation import default_directions, recover_prior_sets
from .geometry import hull_distance
from .preferences import (
    DEFAULT_BOX, BewleyPreference, MaxminPreference, TfcPreference, compare,
    contour_polygons,
)
from .reports import AxiomId
from .scenario import Scenario, ScenarioError, load_scenario
from .serialize import RationalParseError, dumps, parse_rational
from .theorems import (
    ambiguity_attitude, compare_ambiguity, seu_collapse_check,
    verify_conservatism_order, verify_extension,
)

OK, PROPERTY_FAILURE, USAGE = 0, 2, 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _need(args, name: str) -> str:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for this command")
    return value


def _tfc(sc: Scenario, args) -> TfcPreference:
    return sc.preference(_need(args, "pref"), TfcPreference)


def _interval_doc(pref, f):
    if isinstance(pref, TfcPreference):
        iv = pref.interval(f)
        return {"lo": iv.lo, "hi": iv.hi}
    return None


def cmd_compare(sc, args):
    pref = sc.preference(_need(args, "pref"))
    f, g = sc.act(_need(args, "f")), sc.act(_need(args, "g"))
    doc = {"result": compare(pref, f, g), "f": f, "g": g}
    if isinstance(pref, TfcPreference):
        doc["intervals"] = {"f": _interval_doc(pref, f), "g": _interval_doc(pref, g)}
    return doc, OK


def cmd_interval(sc, args):
    pref = _tfc(sc, args)
    f = sc.act(_need(args, "f"))
    return {"act": f, "interval": _interval_doc(pref, f)}, OK


def cmd_contours(sc, args):
    pref = _tfc(sc, args)
    g = sc.act(_need(args, "at"))
    box = DEFAULT_BOX
    if args.box:
        x0, y0, x1, y1 = (parse_rational(c) for c in args.box.split(","))
        box = ((x0, y0), (x1, y1))
    poly = contour_polygons(pref, g, box)
    return {
        "at": g,
        "box": [list(box[0]), list(box[1])],
        "upper": [list(p) for p in poly.upper],
        "lower": [list(p) for p in poly.lower],
        "upper_threshold": poly.upper_threshold,
        "lower_threshold": poly.lower_threshold,
    }, OK


def cmd_audit(sc, args):
    pref = sc.preference(_need(args, "pref"))
    axiom = AxiomId.parse(_need(args, "axiom"))
    if axiom in (AxiomId.A12, AxiomId.A13):
        raise UsageError(f"{axiom.value} relates two preferences; use the extension command")
    report = audit_axiom(pref, axiom, args.budget, args.seed)
    expected = expected_to_hold(pref, axiom)
    replays = all(replay_witness(pref, w) for w in report.violations)
    status = OK
    if (expected and not report.passed) or not replays:
        status = PROPERTY_FAILURE
    return {"report": report, "expected_to_hold": expected, "witnesses_replay": replays}, status


def cmd_collapse(sc, args):
    res = seu_collapse_check(_tfc(sc, args), args.budget)
    return {"is_seu": res.is_seu, "witness": res.witness}, OK


def cmd_conservatism(sc, args):
    res = verify_conservatism_order(_tfc(sc, args), sc.preference(_need(args, "bewley"), BewleyPreference),
                                    args.budget, args.seed)
    doc = {
        "inclusion": res.inclusion,
        "behavioral": res.behavioral,
        "sampled_violation": res.sampled_violation,
        "samples": res.samples,
        "witness": res.witness,
        "agree": res.agree,
    }
    return doc, OK if res.agree else PROPERTY_FAILURE


def cmd_extension(sc, args):
    res = verify_extension(_tfc(sc, args), sc.preference(_need(args, "maxmin"), MaxminPreference),
                           args.budget, args.seed)
    doc = {
        "holds": res.holds,
        "affine": res.affine,
        "same_sets": res.same_sets,
        "consistency": res.consistency,
        "caution": res.caution,
        "witness": res.witness,
        "sampled_violation": res.sampled_violation,
        "agree": res.agree,
    }
    return doc, OK if res.agree else PROPERTY_FAILURE


def cmd_attitude(sc, args):
    res = ambiguity_attitude(_tfc(sc, args), args.budget, args.seed)
    doc = {
        "averse": res.averse,
        "loving": res.loving,
        "symmetric": res.symmetric,
        "averse_audit": res.averse_audit,
        "loving_audit": res.loving_audit,
        "agree": res.agree,
    }
    return doc, OK if res.agree else PROPERTY_FAILURE


def cmd_compare_ambiguity(sc, args):
    p1 = _tfc(sc, args)
    p2 = sc.preference(_need(args, "other"), TfcPreference)
    res = compare_ambiguity(p1, p2, args.budget, args.seed)
    doc = {
        "more_averse": res.more_averse,
        "more_loving": res.more_loving,
        "averse_witness": res.averse_witness,
        "loving_witness": res.loving_witness,
        "averse_found_by_sampling": res.averse_sampled,
        "loving_found_by_sampling": res.loving_sampled,
        "samples": res.samples,
        "agree": res.agree,
    }
    return doc, OK if res.agree else PROPERTY_FAILURE


def cmd_choice(sc, args):
    pref = sc.preference(_need(args, "pref"))
    inst = sc.choice(_need(args, "instance"))
    if all(c is None for c in inst.chosen):
        inst = induced_choice(pref, inst.menus, inst.status_quo)
        induced = True
    else:
        induced = False
    check = check_weak_rationalizable(inst, pref)
    doc = {
        "status_quo": inst.status_quo,
        "menus": [list(m) for m in inst.menus],
        "chosen": inst.chosen,
        "induced": induced,
        "rationalizable": check.ok,
        "first_violation": check.first_violation,
    }
    return doc, OK


def cmd_witness(sc, args):
    pref = _tfc(sc, args)
    inst = construct_tfc_only_witness(pref)
    law = tfc_only_witness_law(pref, inst)
    impossible = bewley_impossible(inst)
    doc = {
        "status_quo": inst.status_quo,
        "menus": [list(m) for m in inst.menus],
        "chosen": inst.chosen,
        "law": {"f_beats_x": law[0], "g_not_above_f": law[1], "g_dominates_f": law[2]},
        "rationalized_by_pref": check_weak_rationalizable(inst, pref).ok,
        "bewley_impossible": impossible,
    }
    return doc, OK if all(law) and impossible else PROPERTY_FAILURE


def cmd_elicit(sc, args):
    pref = _tfc(sc, args)
    tol = args.tolerance if args.tolerance is not None else Fraction(1, 4096)
    dirs = default_directions(pref.dim)
    rec = recover_prior_sets(pref.prefers, dirs, tol)
    sound = hull_distance(pref.C, rec.C_outer) == 0 and hull_distance(pref.D, rec.D_outer) == 0
    doc = {
        "tolerance": tol,
        "C_outer": rec.C_outer,
        "D_outer": rec.D_outer,
        "C_halfspaces": [{"normal": nrm, "offset": off} for nrm, off in rec.C_halfspaces],
        "D_halfspaces": [{"normal": nrm, "offset": off} for nrm, off in rec.D_halfspaces],
        "queries": rec.queries,
        "query_bound": rec.query_bound,
        "directions": len(dirs),
        "elicitations": rec.elicitations,
        "sound": sound,
        "excess": {"C": hull_distance(rec.C_outer, pref.C), "D": hull_distance(rec.D_outer, pref.D)},
    }
    return doc, OK if sound and rec.queries <= rec.query_bound else PROPERTY_FAILURE


COMMANDS: Dict[str, Callable[[Scenario, argparse.Namespace], Tuple[dict, int]]] = {
    "compare": cmd_compare,
    "interval": cmd_interval,
    "contours": cmd_contours,
    "audit": cmd_audit,
    "collapse": cmd_collapse,
    "conservatism": cmd_conservatism,
    "extension": cmd_extension,
    "attitude": cmd_attitude,
    "compare-ambiguity": cmd_compare_ambiguity,
    "choice": cmd_choice,
    "witness": cmd_witness,
    "elicit": cmd_elicit,
}


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_rational(text: str) -> Fraction:
    try:
        v = parse_rational(text)
    except RationalParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ambiguity-engine", description="Exact engines and audits for conservative preferences under ambiguity.")
    p.add_argument("command", choices=sorted(COMMANDS) + ["jobs"])
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--out", help="write the result document here instead of stdout")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--budget", type=_positive_int, default=1000)
    p.add_argument("--tolerance", type=_positive_rational)
    for flag in ("pref", "f", "g", "at", "axiom", "bewley", "maxmin", "other", "instance", "box"):
        p.add_argument(f"--{flag}")
    return p


def _options(args) -> dict:
    keys = ("seed", "budget", "tolerance", "pref", "f", "g", "at", "axiom", "bewley", "maxmin", "other", "instance", "box")
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def run_command(command: str, sc: Scenario, args) -> Tuple[dict, int]:
    doc, status = COMMANDS[command](sc, args)
    return {"command": command, "options": _options(args), "seed": args.seed, "result": doc}, status


def _run_jobs(sc: Scenario, args) -> Tuple[dict, int]:
    parser = build_parser()
    results, worst = [], OK
    for job in sc.jobs:
        argv = [job["command"], "--scenario", args.scenario]
        for k, v in job.items():
            if k != "command":
                argv += [f"--{k}", str(v)]
        jargs = parser.parse_args(argv)
        if jargs.command == "jobs":
            raise UsageError("jobs cannot nest")
        doc, status = run_command(jargs.command, sc, jargs)
        doc["exit_code"] = status
        results.append(doc)
        worst = max(worst, status)
    return {"command": "jobs", "seed": args.seed, "jobs": results}, worst


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        sc = load_scenario(args.scenario)
        if args.command == "jobs":
            doc, status = _run_jobs(sc, args)
        else:
            doc, status = run_command(args.command, sc, args)
        text = dumps(doc)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return status
    except (UsageError, ScenarioError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
