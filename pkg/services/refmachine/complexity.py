"""Certified upper bounds on C and K over the reference machine."""
from __future__ import annotations

import logging
from typing import List, Optional

from core.config import settings
from core.errors import InvariantViolation
from models import ComplexityEstimate, ComplexityKind, OscillationPoint, PrefixProgram, RunMode
from services.bitcore import encode_sd2, from_index, to_index, validate_bits
from services.refmachine.enumeration import enumerate_programs
from services.refmachine.machine import HALT, LIT, MACHINE_VERSION, REST, run

logger = logging.getLogger(__name__)

C_LITERAL = len(REST)

_MODES = {ComplexityKind.C: RunMode.PLAIN, ComplexityKind.K: RunMode.PREFIX}


def literal_program(x: str, kind: ComplexityKind = ComplexityKind.C) -> str:
    """The structural fallback description of x."""
    if kind is ComplexityKind.C:
        return REST + x
    return LIT + encode_sd2(x) + HALT


def complexity_upper(
    x: str,
    condition: str = "",
    budget: Optional[int] = None,
    max_len: Optional[int] = None,
    kind: ComplexityKind = ComplexityKind.C,
) -> ComplexityEstimate:
    """
    Upper bound on C(x|condition) or K(x|condition).

    The value is the length of the first program in (length, lex) order among
    all programs of length <= max_len that halt within budget with output x,
    or the literal fallback when that is shorter or nothing was found.
    """
    validate_bits(x)
    validate_bits(condition)
    budget = settings.step_budget if budget is None else budget
    max_len = settings.max_len if max_len is None else max_len

    table = enumerate_programs(condition, budget, max_len, _MODES[kind], settings.max_output_bits)
    fallback = literal_program(x, kind)
    found = table.shortest.get(x)

    use_fallback = found is None or (len(fallback), to_index(fallback)) < (
        len(found.code),
        to_index(found.code),
    )
    witness = fallback if use_fallback else found.code
    return ComplexityEstimate(
        kind=kind,
        value=len(witness),
        conditional_on=condition or None,
        step_budget=budget,
        max_program_length=max_len,
        witness=PrefixProgram(code=witness, condition=condition),
        fallback=use_fallback,
        machine_version=MACHINE_VERSION,
    )


def plain_complexity_upper(x: str, condition: str = "", **kwargs) -> ComplexityEstimate:
    return complexity_upper(x, condition, kind=ComplexityKind.C, **kwargs)


def prefix_complexity_upper(x: str, condition: str = "", **kwargs) -> ComplexityEstimate:
    return complexity_upper(x, condition, kind=ComplexityKind.K, **kwargs)


def length_condition(n: int) -> str:
    """The condition tape carrying n."""
    return from_index(n)


def oscillation_profile(
    prefix: str, budget: Optional[int] = None, max_len: Optional[int] = None
) -> List[OscillationPoint]:
    """Lower bounds n - C_upper(w_1:n | n) on the deficiency of every prefix."""
    validate_bits(prefix)
    points = []
    for n in range(1, len(prefix) + 1):
        estimate = plain_complexity_upper(prefix[:n], length_condition(n), budget=budget, max_len=max_len)
        points.append(OscillationPoint(n=n, deficiency=n - estimate.value, complexity_upper=estimate.value))
    logger.debug(f"Oscillation profile over {len(prefix)} prefixes, max deficiency "
                 f"{max((p.deficiency for p in points), default=0)}")
    return points


def measure_literal_constant(max_n: int = 8) -> int:
    """Largest l(fallback) - l(x) over all x up to max_n, checked by running each fallback."""
    constant = 0
    for index in range(to_index("1" * max_n) + 1):
        x = from_index(index)
        program = literal_program(x)
        outcome = run(program, budget=len(program) + 2, mode=RunMode.PLAIN)
        if outcome.output != x:
            raise InvariantViolation(f"literal fallback does not reproduce {x!r}")
        constant = max(constant, len(program) - len(x))
    return constant
