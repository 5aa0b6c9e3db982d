"""Selection engines. Positions are 1-based throughout."""
from __future__ import annotations

import logging
from typing import Union

from core.errors import RuleViolationError, SourceIndexError
from models import Decision, KlSelection, KlVisit, MwcSelection
from services.selection.rules import KlRule, MwcRule
from services.sources_service import BitSource, StringSource, take_prefix

logger = logging.getLogger(__name__)


def select_mwc(rule: MwcRule, stream: Union[str, BitSource], limit: int) -> MwcSelection:
    """Scan positions 1..limit; position n is decided from the first n - 1 bits only."""
    bits = take_prefix(stream, limit)
    selected = []
    indices = []
    truncated = False
    for n in range(1, len(bits) + 1):
        decision = rule.decide(bits[: n - 1])
        if decision is Decision.UNDEFINED:
            truncated = True
            break
        if decision is Decision.SELECT:
            indices.append(n)
            selected.append(bits[n - 1])
    logger.debug(f"{rule.name}: selected {len(indices)} of {len(bits)} positions")
    return MwcSelection(bits="".join(selected), indices=indices, truncated=truncated)


def select_kl(rule: KlRule, source: Union[str, BitSource], limit: int) -> KlSelection:
    """Visit at most ``limit`` positions chosen by the rule; no position is read twice."""
    if isinstance(source, str):
        source = StringSource(source)
    history = ""
    visited = set()
    visits = []
    selected = []
    while len(visits) < limit:
        choice = rule.next(history)
        if choice is None:
            break
        index, include = choice
        if index in visited:
            raise RuleViolationError(f"{rule.name} asked for position {index} a second time")
        if index < 1:
            raise SourceIndexError(f"{rule.name} asked for position {index}; positions start at 1")
        value = source.read_at(index - 1)
        visited.add(index)
        history += value
        visits.append(KlVisit(index=index, value=int(value), included=bool(include)))
        if include:
            selected.append(value)
    return KlSelection(bits="".join(selected), visits=visits)
