"""Set-inclusion characterizations cross-checked against behavior.

Each check computes a verdict from the prior sets with exact subset tests,
then independently searches the engines' behavior for a counterexample.
When an inclusion fails a counterexample is also constructed from a
separating functional and replayed, so every "false" comes with concrete
acts on which the engines disagree.
"""

import random
from dataclasses import dataclass
from typing import List, Optional

from .axioms import (
    audit_axiom, audit_extension_axiom, replay_pair_witness, replay_witness,
    threshold_constant,
)
from .constructions import monotonicity_witness, separate
from .elicitation import default_directions
from .errors import DimensionMismatch, NormalizationMismatch
from .geometry import Vector, subset
from .preferences import (
    BewleyPreference, MaxminPreference, TfcPreference, constant,
)
from .reports import AuditReport, AxiomId, Witness
from .sampling import random_act


def _same_space(a, b):
    if a.dim != b.dim:
        raise DimensionMismatch("preferences over different state spaces")


def _probe_acts(rng: random.Random, n: int, budget: int) -> List[Vector]:
    """Direction acts first, then random acts, ``budget`` in total."""
    acts = default_directions(n)[:budget]
    while len(acts) < budget:
        acts.append(random_act(rng, n))
    return acts


# -- collapse to expected utility -----------------------------------------------

@dataclass
class CollapseResult:
    is_seu: bool
    witness: Optional[Witness] = None


def seu_collapse_check(pref: TfcPreference, budget: int = 0) -> CollapseResult:
    """Monotone (or independent) iff C and D are one and the same prior.

    Otherwise returns acts ``f`` and ``g = f + eps`` where ``g`` is better
    in every state but not preferred. The construction is a fixed scan over
    coordinate acts, so ``budget`` does not affect the result.
    """
    if pref.C.is_singleton and pref.C == pref.D:
        return CollapseResult(True)
    w = monotonicity_witness(pref)
    if w is None or not replay_witness(pref, w):
        raise AssertionError("monotonicity witness failed to replay")
    return CollapseResult(False, w)


# -- conservatism order ---------------------------------------------------------

@dataclass
class ConservatismResult:
    inclusion: bool
    behavioral: str
    witness: Optional[Witness] = None
    sampled_violation: bool = False
    samples: int = 0

    @property
    def agree(self) -> bool:
        return self.inclusion == (self.behavioral == "pass")


def replay_conservatism(tfc: TfcPreference, bewley: BewleyPreference, w: Witness) -> bool:
    """The TFC engine ranks ``acts[0]`` above ``acts[1]``; the unanimity engine does not."""
    f, g = w.acts
    return tfc.prefers(f, g) and not bewley.prefers(f, g)


def verify_conservatism_order(tfc: TfcPreference, bewley: BewleyPreference,
                              budget: int = 1000, seed: int = 0) -> ConservatismResult:
    """Is every TFC ranking also a unanimous one? Exactly when C* lies in C and in D."""
    _same_space(tfc, bewley)
    if tfc.norm != bewley.norm:
        raise NormalizationMismatch("the two preferences use different utility normalizations")
    n = tfc.dim
    inclusion = subset(bewley.C, tfc.C) and subset(bewley.C, tfc.D)
    rng = random.Random(seed)
    found = None
    samples = 0
    for f in _probe_acts(rng, n, budget):
        # f against a constant just below its worst case, and a constant just above its best case
        lo = constant(threshold_constant(tfc, f, "below"), n)
        hi = constant(threshold_constant(tfc, f, "above"), n)
        g = random_act(rng, n)
        for pair in ((f, lo), (hi, f), (f, g)):
            samples += 1
            w = Witness("T3.pair", acts=pair)
            if replay_conservatism(tfc, bewley, w):
                found = found or w
    witness = found
    constructed = None
    sep = separate(bewley.C, tfc.C)
    if sep is not None:
        m, alpha = sep
        constructed = Witness("T3.C", acts=(m, constant(alpha, n)), constants=(alpha,))
    else:
        sep = separate(bewley.C, tfc.D)
        if sep is not None:
            m, alpha = sep
            constructed = Witness("T3.D", acts=(constant(-alpha, n), -m), constants=(-alpha,))
    violated = found is not None
    if constructed is not None and replay_conservatism(tfc, bewley, constructed):
        witness = constructed
        violated = True
    return ConservatismResult(
        inclusion=inclusion,
        behavioral="fail" if violated else "pass",
        witness=witness,
        sampled_violation=found is not None,
        samples=samples,
    )


# -- extension to maxmin ----------------------------------------------------------

@dataclass
class ExtensionResult:
    holds: bool
    affine: bool
    same_sets: bool
    consistency: AuditReport
    caution: AuditReport
    witness: Optional[Witness] = None

    @property
    def sampled_violation(self) -> bool:
        return self.consistency.sampled_violations + self.caution.sampled_violations > 0

    @property
    def agree(self) -> bool:
        return self.holds == (self.consistency.passed and self.caution.passed)


def verify_extension(tfc: TfcPreference, maxmin: MaxminPreference,
                     budget: int = 1000, seed: int = 0) -> ExtensionResult:
    """Does the maxmin preference complete the TFC one consistently and cautiously?

    Holds iff the utilities agree up to positive affine transformation and
    C equals the maxmin set.
    """
    _same_space(tfc, maxmin)
    affine = maxmin.norm.is_positive_affine_of(tfc.norm)
    same = subset(tfc.C, maxmin.C) and subset(maxmin.C, tfc.C)
    cons = audit_extension_axiom(tfc, maxmin, AxiomId.A12, budget, seed)
    caut = audit_extension_axiom(tfc, maxmin, AxiomId.A13, budget, seed + 1)
    witness = None
    sep = separate(maxmin.C, tfc.C)
    if sep is not None:
        m, alpha = sep
        witness = Witness("A12", acts=(m,), constants=(alpha,))
        report = cons
    else:
        sep = separate(tfc.C, maxmin.C)
        if sep is not None:
            m, alpha = sep
            witness = Witness("A13", acts=(m,), constants=(alpha,))
            report = caut
    if witness is not None:
        if not replay_pair_witness(tfc, maxmin, witness):
            raise AssertionError("extension witness failed to replay")
        report.samples += 1
        report.instantiated += 1
        report.constructed += 1
        report.violation_count += 1
        report.violations.insert(0, witness)
    return ExtensionResult(affine and same, affine, same, cons, caut, witness)


# -- ambiguity attitude -----------------------------------------------------------

@dataclass
class AttitudeResult:
    averse: bool
    loving: bool
    averse_audit: Optional[AuditReport] = None
    loving_audit: Optional[AuditReport] = None

    @property
    def symmetric(self) -> bool:
        return self.averse and self.loving

    @property
    def witnesses(self) -> List[Witness]:
        return [w for r in (self.averse_audit, self.loving_audit) if r for w in r.violations[:1]]

    @property
    def agree(self) -> bool:
        if self.averse_audit is None:
            return True
        return self.averse == self.averse_audit.passed and self.loving == self.loving_audit.passed


def ambiguity_attitude(pref: TfcPreference, budget: int = 1000, seed: int = 0) -> AttitudeResult:
    """Complementary caution holds iff D is inside C; complementary love iff C is inside D.

    With ``budget > 0`` both properties are also audited on sampled
    complementary pairs.
    """
    averse = subset(pref.D, pref.C)
    loving = subset(pref.C, pref.D)
    if budget <= 0:
        return AttitudeResult(averse, loving)
    return AttitudeResult(
        averse, loving,
        audit_axiom(pref, AxiomId.A10, budget, seed),
        audit_axiom(pref, AxiomId.A11, budget, seed + 1),
    )


# -- comparative attitude -----------------------------------------------------------

@dataclass
class ComparisonOfAttitudes:
    more_averse: bool
    more_loving: bool
    averse_witness: Optional[Witness] = None
    loving_witness: Optional[Witness] = None
    averse_sampled: bool = False
    loving_sampled: bool = False
    samples: int = 0

    @property
    def behavioral_averse(self) -> bool:
        return self.averse_witness is None

    @property
    def behavioral_loving(self) -> bool:
        return self.loving_witness is None

    @property
    def agree(self) -> bool:
        return (self.more_averse == self.behavioral_averse
                and self.more_loving == self.behavioral_loving)


def replay_comparison(pref1: TfcPreference, pref2: TfcPreference, w: Witness) -> bool:
    (f,) = w.acts
    x = constant(w.constants[0], len(f))
    if w.tag == "T6.averse":
        return pref1.prefers(f, x) and not pref2.prefers(f, x)
    return pref1.prefers(x, f) and not pref2.prefers(x, f)


def compare_ambiguity(pref1: TfcPreference, pref2: TfcPreference,
                      budget: int = 1000, seed: int = 0) -> ComparisonOfAttitudes:
    """Is ``pref1`` more ambiguity averse / loving than ``pref2``?

    More averse iff C2 is inside C1; more loving iff D2 is inside D1. The
    behavioral side samples acts against constants placed at the
    thresholds of ``pref1``.
    """
    _same_space(pref1, pref2)
    if pref1.norm != pref2.norm:
        raise NormalizationMismatch("the two preferences use different utility normalizations")
    n = pref1.dim
    res = ComparisonOfAttitudes(subset(pref2.C, pref1.C), subset(pref2.D, pref1.D))
    rng = random.Random(seed)
    for f in _probe_acts(rng, n, budget):
        res.samples += 1
        if res.averse_witness is None:
            w = Witness("T6.averse", acts=(f,), constants=(threshold_constant(pref1, f, "below"),))
            if replay_comparison(pref1, pref2, w):
                res.averse_witness, res.averse_sampled = w, True
        if res.loving_witness is None:
            w = Witness("T6.loving", acts=(f,), constants=(threshold_constant(pref1, f, "above"),))
            if replay_comparison(pref1, pref2, w):
                res.loving_witness, res.loving_sampled = w, True
    if res.averse_witness is None:
        sep = separate(pref2.C, pref1.C)
        if sep is not None:
            m, alpha = sep
            w = Witness("T6.averse", acts=(m,), constants=(alpha,))
            if replay_comparison(pref1, pref2, w):
                res.averse_witness = w
    if res.loving_witness is None:
        sep = separate(pref2.D, pref1.D)
        if sep is not None:
            m, alpha = sep
            w = Witness("T6.loving", acts=(-m,), constants=(-alpha,))
            if replay_comparison(pref1, pref2, w):
                res.loving_witness = w
    return res
