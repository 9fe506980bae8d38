from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

from .scalar import Ball

CERTIFIED = "CertifiedTrue"
INCONCLUSIVE = "Inconclusive"


@dataclass
class GapReport:
    """Outcome of certifying one claim instance.

    ``margin`` is the slack of the strict inequality behind the claim; the
    status is ``CertifiedTrue`` only when that ball lies strictly above 0.
    """

    claim_id: str
    params: dict[str, Any]
    status: str
    margin: Ball | None
    precision_bits: int
    witness: tuple[str, str] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "params": self.params,
            "status": self.status,
            "witness": list(self.witness) if self.witness else None,
            "margin_midpoint": self.margin.mid_str() if self.margin is not None else None,
            "margin_radius": self.margin.rad_str() if self.margin is not None else None,
            "precision_bits": self.precision_bits,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def status_for(margin: Ball | None, *conditions: bool) -> str:
    ok = margin is not None and margin.is_positive() and all(conditions)
    return CERTIFIED if ok else INCONCLUSIVE


def escalate(check: Callable[[int], GapReport], prec: int, max_prec: int) -> GapReport:
    """Run ``check`` at doubling precision until it certifies or hits the cap."""
    while True:
        rep = check(prec)
        if rep.certified or prec >= max_prec:
            return rep
        prec = min(2 * prec, max_prec)
