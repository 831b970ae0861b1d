"""Exact engines, audits and elicitation for preferences under ambiguity.

Twofold conservative (TFC) preferences rank ``f`` above ``g`` when the
worst expected utility of ``f`` over a prior set ``C`` beats the best
expected utility of ``g`` over a prior set ``D``. Bewley (unanimity),
maxmin and subjective expected utility engines are provided alongside, as
are exact geometry on probability polytopes, property audits, set-inclusion
checks with counterexample construction, and oracle-based recovery of the
prior sets.
"""

from .axioms import audit_axiom, expected_to_hold, replay_witness
from .choice import (
    ChoiceInstance, check_weak_rationalizable, construct_tfc_only_witness,
    induced_choice,
)
from .elicitation import (
    RecoveredSets, Side, SupportSample, default_directions, elicit_support,
    recover_prior_sets, verify_uniqueness,
)
from .errors import (
    DimensionMismatch, ElicitationError, InvalidPreference, NormalizationMismatch,
    NotSeparable, UnsupportedAudit,
)
from .geometry import (
    CredalSet, Functional, Prior, StateSpace, UtilityVector, Vector, contains,
    hull_distance, intersects, separating_functional, subset, support_max,
    support_min,
)
from .preferences import (
    BewleyPreference, ComparisonResult, EvaluationInterval, MaxminPreference,
    SeuPreference, TfcPreference, UtilityNormalization, bewley_prefers, compare,
    constant, contour_polygons, evaluate_interval, justifiable_negation,
    maxmin_prefers, mix, seu_prefers, tfc_prefers,
)
from .reports import AuditReport, AxiomId, Witness
from .scenario import load_scenario
from .theorems import (
    ambiguity_attitude, compare_ambiguity, seu_collapse_check,
    verify_conservatism_order, verify_extension,
)

__version__ = "0.1.0"
