"""JSON encoding that keeps every rational exact.

A rational is written as ``{"exact": "p/q", "approx": <float>}``; the float
is for humans and plotting tools only, readers use the exact string.
"""

import dataclasses
import enum
import json
from fractions import Fraction
from typing import Any

from .geometry import CredalSet, Vector
from .reports import AuditReport, Witness


class RationalParseError(ValueError):
    pass


def parse_rational(value) -> Fraction:
    """Exact rational from a string ("13/3", "-2", "0.25") or an integer.

    JSON floats are refused since they may already have lost precision.
    """
    if isinstance(value, bool):
        raise RationalParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, dict) and "exact" in value:
        value = value["exact"]
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise RationalParseError(f"not a rational: {value!r}") from None
    raise RationalParseError(f"inexact or non-rational number {value!r}; write it as a string like \"1/3\"")


def rational(q: Fraction) -> dict:
    return {"exact": str(q), "approx": float(q)}


def encode(obj: Any) -> Any:
    """Convert engine results into plain JSON-ready structures."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, Vector):
        return [rational(c) for c in obj]
    if isinstance(obj, CredalSet):
        return {"vertices": [encode(v) for v in obj.vertices]}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Witness):
        return {
            "tag": obj.tag,
            "acts": [encode(a) for a in obj.acts],
            "constants": [rational(c) for c in obj.constants],
            "weights": [rational(w) for w in obj.weights],
        }
    if isinstance(obj, AuditReport):
        return {
            "axiom": obj.axiom.value,
            "seed": obj.seed,
            "samples": obj.samples,
            "instantiated": obj.instantiated,
            "violation_count": obj.violation_count,
            "constructed_violations": obj.constructed,
            "violations": [encode(w) for w in obj.violations],
            "verdict": obj.verdict,
        }
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode_rationals(obj: Any) -> Any:
    """Inverse of :func:`encode` for the rational leaves; other values pass through."""
    if isinstance(obj, dict):
        if set(obj) == {"exact", "approx"}:
            return parse_rational(obj["exact"])
        return {k: decode_rationals(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode_rationals(v) for v in obj]
    return obj


def dumps(doc: Any) -> str:
    return json.dumps(encode(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
