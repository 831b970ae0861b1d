"""Load and validate scenario files (UTF-8 JSON).

A scenario names state labels, acts, credal sets, preferences, choice
instances and optional jobs. See ``scenarios/SCHEMA.md`` for the layout.
Every loading error names the entity at fault.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from .choice import ChoiceInstance
from .errors import DimensionMismatch
from .geometry import CredalSet, Prior, StateSpace, Vector
from .preferences import (
    BewleyPreference, MaxminPreference, Preference, SeuPreference,
    TfcPreference, UtilityNormalization,
)
from .serialize import RationalParseError, parse_rational


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    states: StateSpace
    acts: Dict[str, Vector] = field(default_factory=dict)
    sets: Dict[str, CredalSet] = field(default_factory=dict)
    preferences: Dict[str, Preference] = field(default_factory=dict)
    choices: Dict[str, ChoiceInstance] = field(default_factory=dict)
    jobs: List[dict] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.states.size

    def act(self, ref: str) -> Vector:
        """A named act, or an inline comma-separated vector such as ``"1,3"``."""
        if ref in self.acts:
            return self.acts[ref]
        try:
            v = Vector([parse_rational(c) for c in ref.split(",")])
        except RationalParseError:
            raise ScenarioError(f"unknown act {ref!r}") from None
        if len(v) != self.dim:
            raise ScenarioError(f"act {ref!r} has {len(v)} coordinates, expected {self.dim}")
        return v

    def preference(self, ref: str, kind=None) -> Preference:
        if ref not in self.preferences:
            raise ScenarioError(f"unknown preference {ref!r}")
        p = self.preferences[ref]
        if kind is not None and not isinstance(p, kind):
            raise ScenarioError(f"preference {ref!r} is not a {kind.__name__}")
        return p

    def choice(self, ref: str) -> ChoiceInstance:
        if ref not in self.choices:
            raise ScenarioError(f"unknown choice instance {ref!r}")
        return self.choices[ref]


def _vector(raw, n: int, what: str) -> List[Fraction]:
    if not isinstance(raw, list):
        raise ScenarioError(f"{what}: expected a list of rationals")
    try:
        v = [parse_rational(c) for c in raw]
    except RationalParseError as e:
        raise ScenarioError(f"{what}: {e}") from None
    if len(v) != n:
        raise ScenarioError(f"{what}: {len(v)} coordinates, expected {n}")
    return v


def _set(raw, sc: Scenario, what: str) -> CredalSet:
    if isinstance(raw, str):
        if raw not in sc.sets:
            raise ScenarioError(f"{what}: unknown set {raw!r}")
        return sc.sets[raw]
    if not isinstance(raw, list) or not raw:
        raise ScenarioError(f"{what}: expected a set name or a nonempty vertex list")
    try:
        return CredalSet([Prior(_vector(v, sc.dim, what)) for v in raw])
    except (ValueError, DimensionMismatch) as e:
        raise ScenarioError(f"{what}: {e}") from None


def _normalization(raw: dict, what: str) -> UtilityNormalization:
    try:
        return UtilityNormalization(parse_rational(raw.get("scale", "1")), parse_rational(raw.get("shift", "0")))
    except ValueError as e:
        raise ScenarioError(f"{what}: {e}") from None


def _preference(name: str, raw: dict, sc: Scenario) -> Preference:
    kind = raw.get("kind")
    what = f"{kind} {name!r}"
    norm = _normalization(raw, what)
    try:
        if kind == "tfc":
            return TfcPreference(_set(raw.get("C"), sc, what), _set(raw.get("D", raw.get("C")), sc, what), norm)
        if kind == "bewley":
            return BewleyPreference(_set(raw.get("C"), sc, what), norm)
        if kind == "maxmin":
            return MaxminPreference(_set(raw.get("C"), sc, what), norm)
        if kind == "seu":
            return SeuPreference(Prior(_vector(raw.get("prior"), sc.dim, what)), norm)
    except ScenarioError:
        raise
    except ValueError as e:
        raise ScenarioError(f"{what}: {e}") from None
    raise ScenarioError(f"preference {name!r}: unknown kind {kind!r}")


def _choice(name: str, raw: dict, sc: Scenario) -> ChoiceInstance:
    what = f"choice {name!r}"
    try:
        x = parse_rational(raw["status_quo"])
        menus = [(sc.act(f), sc.act(g)) for f, g in raw.get("menus", [])]
        return ChoiceInstance(x, menus, list(raw.get("chosen", [])))
    except KeyError:
        raise ScenarioError(f"{what}: missing status_quo") from None
    except (ValueError, TypeError) as e:
        raise ScenarioError(f"{what}: {e}") from None


def scenario_from_dict(doc: dict) -> Scenario:
    if not isinstance(doc, dict) or not isinstance(doc.get("states"), list):
        raise ScenarioError("scenario must be an object with a 'states' list")
    try:
        sc = Scenario(StateSpace(tuple(doc["states"])))
    except ValueError as e:
        raise ScenarioError(f"states: {e}") from None
    for key in ("acts", "sets", "preferences", "choices"):
        if not isinstance(doc.get(key, {}), dict):
            raise ScenarioError(f"{key}: expected an object mapping names to entries")
    for name, raw in doc.get("acts", {}).items():
        sc.acts[name] = Vector(_vector(raw, sc.dim, f"act {name!r}"))
    for name, raw in doc.get("sets", {}).items():
        sc.sets[name] = _set(raw, sc, f"set {name!r}")
    for name, raw in doc.get("preferences", {}).items():
        sc.preferences[name] = _preference(name, raw, sc)
    for name, raw in doc.get("choices", {}).items():
        sc.choices[name] = _choice(name, raw, sc)
    jobs = doc.get("jobs", [])
    if not isinstance(jobs, list) or not all(isinstance(j, dict) and "command" in j for j in jobs):
        raise ScenarioError("jobs: expected a list of objects with a 'command'")
    sc.jobs = jobs
    return sc


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"cannot read scenario {str(path)!r}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"scenario {str(path)!r} is not valid JSON: {e}") from None
    return scenario_from_dict(doc)
