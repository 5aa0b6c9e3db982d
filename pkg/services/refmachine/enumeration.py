"""Pruned enumeration of reference-machine programs.

Programs are explored as a binary tree of prefixes. A prefix is extended only
while the machine asks for more input (or, in the plain discipline, when REST
has looked at the end of the tape); halted, invalid and exhausted prefixes
close their whole subtree, since every extension behaves the same up to that
point. The tree is split at a fixed depth across the worker pool and results
are merged in canonical (length, lexicographic) order, so tables never depend
on scheduling.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Tuple

from clients.worker_pool import map_ordered
from core.errors import BudgetInfeasibleError, InvariantViolation
from models import RunMode, RunStatus
from services.bitcore import is_prefix_free, to_index
from services.refmachine.machine import run

logger = logging.getLogger(__name__)

MAX_ENUMERATION_LEN = 26
SPLIT_DEPTH = 4


class ProgramRecord(NamedTuple):
    code: str
    output: str
    steps: int


@dataclass
class ProgramTable:
    condition: str
    mode: RunMode
    step_budget: int
    max_len: int
    phase_limit: Optional[int]
    programs: List[ProgramRecord]
    exhausted: int = 0
    invalid: int = 0
    shortest: Dict[str, ProgramRecord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for record in self.programs:
            self.shortest.setdefault(record.output, record)

    def kraft_numerator(self) -> int:
        """Sum of 2**(max_len - l(p)) over halting programs."""
        return sum(1 << (self.max_len - len(record.code)) for record in self.programs)


@dataclass
class _Partial:
    programs: List[ProgramRecord] = field(default_factory=list)
    frontier: List[str] = field(default_factory=list)
    exhausted: int = 0
    invalid: int = 0


class _Explorer:
    def __init__(
        self,
        condition: str,
        budget: int,
        max_len: int,
        mode: RunMode,
        max_output_bits: int,
        phase_limit: Optional[int],
    ):
        self.condition = condition
        self.budget = budget
        self.max_len = max_len
        self.mode = mode
        self.max_output_bits = max_output_bits
        self.phase_limit = phase_limit

    def budget_for(self, prefix: str) -> int:
        if self.phase_limit is None:
            return self.budget
        # Dovetailing: input k gets its j-th step in phase j + k.
        return min(self.budget, self.phase_limit - (to_index(prefix) + 1))

    def visit(self, prefix: str, partial: _Partial) -> bool:
        """Classify one prefix; return True when its children must be explored."""
        budget = self.budget_for(prefix)
        if budget < 1:
            return False
        outcome = run(prefix, self.condition, budget, self.mode, self.max_output_bits)
        if outcome.status is RunStatus.HALTED:
            if outcome.bits_consumed == len(prefix):
                partial.programs.append(ProgramRecord(prefix, outcome.output, outcome.steps_used))
            return outcome.saw_end
        if outcome.needs_input:
            return True
        if outcome.status is RunStatus.BUDGET_EXHAUSTED:
            partial.exhausted += 1
        else:
            partial.invalid += 1
        return False

    def explore(self, root: str, stop_depth: Optional[int] = None) -> _Partial:
        partial = _Partial()
        stack = [root]
        while stack:
            prefix = stack.pop()
            if stop_depth is not None and len(prefix) == stop_depth and prefix != root:
                partial.frontier.append(prefix)
                continue
            if self.visit(prefix, partial) and len(prefix) < self.max_len:
                stack.append(prefix + "1")
                stack.append(prefix + "0")
        return partial


def _canonical(record: ProgramRecord) -> Tuple[int, str]:
    return len(record.code), record.code


@lru_cache(maxsize=256)
def enumerate_programs(
    condition: str = "",
    budget: int = 100_000,
    max_len: int = 12,
    mode: RunMode = RunMode.PREFIX,
    max_output_bits: int = 65_536,
    phase_limit: Optional[int] = None,
) -> ProgramTable:
    """All programs of length <= max_len that halt within budget, having read exactly themselves."""
    if max_len < 0 or max_len > MAX_ENUMERATION_LEN:
        raise BudgetInfeasibleError(f"max_len must be in 0..{MAX_ENUMERATION_LEN}, got {max_len}")
    if budget < 1:
        raise BudgetInfeasibleError("step budget must be >= 1")

    explorer = _Explorer(condition, budget, max_len, mode, max_output_bits, phase_limit)
    head = explorer.explore("", stop_depth=SPLIT_DEPTH)
    parts = map_ordered(explorer.explore, sorted(head.frontier))

    programs = list(head.programs)
    exhausted, invalid = head.exhausted, head.invalid
    for part in parts:
        programs.extend(part.programs)
        exhausted += part.exhausted
        invalid += part.invalid
    programs.sort(key=_canonical)

    table = ProgramTable(
        condition=condition,
        mode=mode,
        step_budget=budget,
        max_len=max_len,
        phase_limit=phase_limit,
        programs=programs,
        exhausted=exhausted,
        invalid=invalid,
    )
    if mode is RunMode.PREFIX:
        _check_prefix_table(table)
    if exhausted and phase_limit is None:
        logger.warning(f"{exhausted} programs of length <= {max_len} were still running after {budget} steps")
    logger.debug(
        f"Enumerated {len(programs)} halting programs (mode={mode.value}, max_len={max_len}, "
        f"budget={budget}, exhausted={exhausted}, invalid={invalid})"
    )
    return table


def _check_prefix_table(table: ProgramTable) -> None:
    codes = [record.code for record in table.programs]
    if not is_prefix_free(codes):
        raise InvariantViolation("halting programs are not prefix-free")
    if table.kraft_numerator() > (1 << table.max_len):
        raise InvariantViolation("Kraft mass of halting programs exceeds 1")
