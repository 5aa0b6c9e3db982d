"""Place-selection rules and the built-in rule library."""
from __future__ import annotations

from typing import Callable, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from models import Decision


class MwcRule(BaseModel):
    """Mises-Wald-Church rule: decides position n from a_1 ... a_(n-1) alone."""

    model_config = ConfigDict(frozen=True)

    name: str
    decide: Callable[[str], Decision]


class KlRule(BaseModel):
    """Kolmogorov-Loveland rule: from the values read so far, the next (1-based index, include) or None."""

    model_config = ConfigDict(frozen=True)

    name: str
    next: Callable[[str], Optional[Tuple[int, bool]]]


def _when(predicate: Callable[[str], bool]) -> Callable[[str], Decision]:
    return lambda prefix: Decision.SELECT if predicate(prefix) else Decision.SKIP


select_all = MwcRule(name="select_all", decide=lambda prefix: Decision.SELECT)
after_two_ones = MwcRule(name="after_two_ones", decide=_when(lambda prefix: prefix.endswith("11")))
after_zero = MwcRule(name="after_zero", decide=_when(lambda prefix: prefix.endswith("0")))
even_positions = MwcRule(name="even_positions", decide=_when(lambda prefix: len(prefix) % 2 == 1))
ones_majority = MwcRule(
    name="ones_majority", decide=_when(lambda prefix: 2 * prefix.count("1") > len(prefix))
)

RULE_LIBRARY: Dict[str, MwcRule] = {
    rule.name: rule for rule in (select_all, after_two_ones, after_zero, even_positions, ones_majority)
}


def lift_mwc(rule: MwcRule) -> KlRule:
    """The same selection as a KL rule that scans left to right."""

    def next_visit(history: str) -> Optional[Tuple[int, bool]]:
        decision = rule.decide(history)
        if decision is Decision.UNDEFINED:
            return None
        return len(history) + 1, decision is Decision.SELECT

    return KlRule(name=f"lift({rule.name})", next=next_visit)


def reverse_window(n: int) -> KlRule:
    """Read positions n, n-1, ..., 1 and keep them all."""
    if n < 0:
        raise ValueError("window must be >= 0")

    def next_visit(history: str) -> Optional[Tuple[int, bool]]:
        if len(history) >= n:
            return None
        return n - len(history), True

    return KlRule(name=f"reverse_window({n})", next=next_visit)
