"""Result records shared by the audit, theorem and elicitation layers."""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .geometry import Vector


class AxiomId(enum.Enum):
    A1 = "A1-order"
    A2 = "A2-archimedean"
    A3 = "A3-certainty-independence"
    A4 = "A4-convexity"
    A5 = "A5-interval-order"
    A6 = "A6-equal-utility-monotonicity"
    A7 = "A7-sandwich-monotonicity"
    A8 = "A8-monotonicity"
    A9 = "A9-independence"
    A10 = "A10-complementary-caution"
    A11 = "A11-complementary-love"
    A12 = "A12-consistency"
    A13 = "A13-caution"

    @classmethod
    def parse(cls, text: str) -> "AxiomId":
        key = text.strip()
        for a in cls:
            if key in (a.name, a.value) or key.upper() == a.name:
                return a
        raise ValueError(f"unknown axiom {text!r}")


@dataclass(frozen=True)
class Witness:
    """Concrete acts, constants and weights exhibiting a property violation.

    ``tag`` names the check that failed (e.g. ``"A1.transitivity"``) so the
    witness can be replayed against an engine.
    """

    tag: str
    acts: Tuple[Vector, ...] = ()
    constants: Tuple[Fraction, ...] = ()
    weights: Tuple[Fraction, ...] = ()


@dataclass
class AuditReport:
    axiom: AxiomId
    seed: int
    samples: int
    instantiated: int = 0
    violation_count: int = 0
    violations: List[Witness] = field(default_factory=list)
    constructed: int = 0

    @property
    def sampled_violations(self) -> int:
        """Violations found by sampling, excluding constructed counterexamples."""
        return self.violation_count - self.constructed

    @property
    def verdict(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def passed(self) -> bool:
        return not self.violations
