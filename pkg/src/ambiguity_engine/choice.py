"""Choice from menus ``{f, g, x}`` with a constant status quo ``x``.

A choice function is weakly rationalizable by a relation B when choosing
``x`` means neither act B-beats ``x``, and choosing an act means it
B-beats ``x`` while the other act does not B-beat it. The bulleted
condition for choosing ``f`` is applied verbatim to ``g`` with the roles
swapped.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .constructions import spread_direction
from .errors import InvalidPreference
from .geometry import Vector, _frac
from .preferences import Preference, TfcPreference, constant


@dataclass
class ChoiceInstance:
    """Menus sharing one constant status quo, with the option picked from each.

    ``chosen[i]`` is ``"f"``, ``"g"`` or ``"x"``; ``None`` marks an
    unrecorded choice.
    """

    status_quo: Fraction
    menus: List[Tuple[Vector, Vector]] = field(default_factory=list)
    chosen: List[Optional[str]] = field(default_factory=list)

    def __post_init__(self):
        self.status_quo = _frac(self.status_quo)
        self.menus = [(f if isinstance(f, Vector) else Vector(f), g if isinstance(g, Vector) else Vector(g))
                      for f, g in self.menus]
        if not self.chosen:
            self.chosen = [None] * len(self.menus)
        if len(self.chosen) != len(self.menus):
            raise ValueError("one choice per menu is required")
        for c in self.chosen:
            if c not in (None, "f", "g", "x"):
                raise ValueError(f"choice {c!r} is not in the menu")


def choose(pref: Preference, f, g, x) -> str:
    """Status quo unless an act beats it; an act beating ``x`` that the other does not beat."""
    xc = constant(x, len(f))
    fx, gx = pref.prefers(f, xc), pref.prefers(g, xc)
    if not fx and not gx:
        return "x"
    if fx and not pref.prefers(g, f):
        return "f"
    return "g"


def induced_choice(pref: Preference, menus, status_quo) -> ChoiceInstance:
    inst = ChoiceInstance(status_quo, list(menus))
    if not inst.menus:
        raise ValueError("at least one menu is required")
    inst.chosen = [choose(pref, f, g, inst.status_quo) for f, g in inst.menus]
    return inst


@dataclass
class RationalizabilityResult:
    ok: bool
    first_violation: Optional[int] = None


def record_ok(pref: Preference, f, g, x, chosen: str) -> bool:
    xc = constant(x, len(f))
    P = pref.prefers
    if chosen == "x":
        return not P(f, xc) and not P(g, xc)
    if chosen == "f":
        return P(f, xc) and not P(g, f)
    return P(g, xc) and not P(f, g)


def check_weak_rationalizable(instance: ChoiceInstance, pref: Preference) -> RationalizabilityResult:
    for i, ((f, g), c) in enumerate(zip(instance.menus, instance.chosen)):
        if c is None:
            continue
        if not record_ok(pref, f, g, instance.status_quo, c):
            return RationalizabilityResult(False, i)
    return RationalizabilityResult(True)


def construct_tfc_only_witness(pref: TfcPreference) -> ChoiceInstance:
    """One observed choice that ``pref`` rationalizes but no unanimity preference can.

    ``f`` is chosen from ``{f, f + eps, x}``. No unanimity preference can
    rationalize it, since ``f + eps`` beats ``f`` under every prior.
    """
    if not pref.symmetric:
        raise InvalidPreference("construction needs a symmetric preference")
    if pref.C.is_singleton:
        raise InvalidPreference("preference is SEU")
    found = spread_direction(pref)
    if found is None:
        raise InvalidPreference("preference is SEU")
    f, spread = found
    g = f.shift(spread / 2)
    low = pref.C.support_min(f)
    x = Fraction(low.__floor__())
    if x >= low:
        x = low - 1
    return ChoiceInstance(x, [(f, g)], ["f"])


def tfc_only_witness_law(pref: TfcPreference, instance: ChoiceInstance) -> Tuple[bool, bool, bool]:
    """The three facts behind the construction: ``f > x``, ``g`` not above ``f``, ``g`` dominates ``f``."""
    (f, g), = instance.menus
    x = constant(instance.status_quo, len(f))
    return (pref.prefers(f, x), not pref.prefers(g, f), all(b > a for a, b in zip(f, g)))


def bewley_impossible(instance: ChoiceInstance) -> bool:
    """Symbolic check: every chosen act is strictly dominated in each state by its rival.

    Any unanimity preference then ranks the rival above the chosen act, so the
    record cannot be rationalized, whatever the prior set.
    """
    for (f, g), c in zip(instance.menus, instance.chosen):
        if c == "f" and all(b > a for a, b in zip(f, g)):
            return True
        if c == "g" and all(a > b for a, b in zip(f, g)):
            return True
    return False
