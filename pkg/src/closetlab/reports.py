"""Theorem-driver report type.

Every equivalence/implication driver returns one of three statuses:
``holds`` (hypotheses met, assertion verified), ``hypothesis-not-met``
(nothing asserted), or ``INCONSISTENT`` (hypotheses met but the assertion
failed, which indicates a bug somewhere in the library).
"""

from dataclasses import dataclass, field

HOLDS = "holds"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"
INCONSISTENT = "INCONSISTENT"


@dataclass
class TheoremReport:
    name: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status != INCONSISTENT

    def to_json_dict(self):
        return {"name": self.name, "status": self.status,
                "details": _jsonable(self.details)}


def _jsonable(value):
    """Coerce report payloads (subsets, tuples, ...) to JSON-stable data."""
    from .core import Subset, SubsetFamily

    if isinstance(value, Subset):
        return list(value.names())
    if isinstance(value, SubsetFamily):
        return [list(s.names()) for s in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value
