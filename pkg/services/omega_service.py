"""Dovetailed lower bounds on the halting probability of the reference machine.

Everything here is relative to the restricted universe Omega_L: programs of
length at most L that halt within a finite step budget. Inside it the halting
set reconstruction is carried out literally and checked against exhaustive
enumeration.
"""
from __future__ import annotations

import logging
from typing import List, Optional

from core.config import settings
from core.errors import InsufficientApproximationError
from models import (
    ComplexityEstimate,
    ContributingProgram,
    DyadicRational,
    OmegaApproximation,
    OmegaTracePoint,
    RunMode,
)
from services.bitcore import to_index
from services.refmachine import MACHINE_VERSION, enumerate_programs, plain_complexity_upper

logger = logging.getLogger(__name__)


def dovetail_omega(max_len: int, phases: int) -> OmegaApproximation:
    """
    Run the triangular schedule for ``phases`` phases.

    Input k (the k-th string in canonical order, k = index + 1) executes its
    j-th step in phase j + k, so a program halting after s steps contributes
    2**-l(p) at phase k + s.
    """
    if phases < 0:
        raise ValueError("phases must be >= 0")
    if phases == 0:
        return OmegaApproximation(
            value=DyadicRational.zero(),
            contributing=[],
            max_len=max_len,
            phases=0,
            machine_version=MACHINE_VERSION,
        )

    table = enumerate_programs(
        "", max(phases, 1), max_len, RunMode.PREFIX, settings.max_output_bits, phase_limit=phases
    )
    contributing = sorted(
        (
            ContributingProgram(
                code=record.code, steps=record.steps, phase=to_index(record.code) + 1 + record.steps
            )
            for record in table.programs
        ),
        key=lambda program: (program.phase, len(program.code), program.code),
    )

    trace: List[OmegaTracePoint] = []
    value = DyadicRational.zero()
    for count, program in enumerate(contributing, start=1):
        value = value + DyadicRational.power_of_half(len(program.code))
        point = OmegaTracePoint(
            phase=program.phase, numerator_hex=value.numerator_hex, exponent=value.exponent, halted=count
        )
        if trace and trace[-1].phase == program.phase:
            trace[-1] = point
        else:
            trace.append(point)

    logger.info(
        f"Dovetailed L={max_len} for {phases} phases: {len(contributing)} halted, "
        f"{table.exhausted} still running, value={value.numerator_hex}/2^{value.exponent}"
    )
    return OmegaApproximation(
        value=value,
        contributing=contributing,
        max_len=max_len,
        phases=phases,
        exhausted=table.exhausted,
        trace=trace,
        machine_version=MACHINE_VERSION,
    )


def value_at_phase(approx: OmegaApproximation, phase: int) -> DyadicRational:
    """The approximation as it stood after ``phase`` phases."""
    value = DyadicRational.zero()
    for point in approx.trace:
        if point.phase > phase:
            break
        value = DyadicRational(numerator=int(point.numerator_hex, 16), exponent=point.exponent)
    return value


def reference_omega(max_len: int, budget: Optional[int] = None) -> DyadicRational:
    """Omega_L: exact mass of programs of length <= L halting within ``budget`` steps."""
    budget = settings.step_budget if budget is None else budget
    table = enumerate_programs("", budget, max_len, RunMode.PREFIX, settings.max_output_bits)
    value = DyadicRational.zero()
    for record in table.programs:
        value = value + DyadicRational.power_of_half(len(record.code))
    return value


def omega_bits(value: DyadicRational, n: int) -> str:
    return value.leading_bits(n)


def halting_set_from_omega(approx: OmegaApproximation, n: int) -> List[str]:
    """
    Decide halting for every program of length <= n from the first n bits of Omega_L.

    Once the approximation reaches Omega_{1:n}, any program of length <= n that
    has not contributed never halts: its 2**-l(p) >= 2**-n would push Omega_L
    past Omega_{1:n} + 2**-n.
    """
    if n < 0 or n > approx.max_len:
        raise ValueError(f"n must be in 0..{approx.max_len}")
    if n == 0:
        return []
    universe_budget = max(settings.step_budget, approx.phases)
    target = reference_omega(approx.max_len, universe_budget).truncate(n)
    if approx.value < target:
        raise InsufficientApproximationError(
            f"approximation {approx.value.numerator_hex}/2^{approx.value.exponent} is below "
            f"Omega_1:{n} = 0.{target.leading_bits(n)} after {approx.phases} phases"
        )
    return sorted(
        (program.code for program in approx.contributing if len(program.code) <= n),
        key=lambda code: (len(code), code),
    )


def probe_omega_compressibility(approx: OmegaApproximation, n: int, max_len: int = 12) -> ComplexityEstimate:
    """Upper bound on C of the first n bits of the approximation (reported, never certifies randomness)."""
    return plain_complexity_upper(omega_bits(approx.value, n), max_len=max_len)


def omega_trace_lines(approx: OmegaApproximation) -> List[str]:
    return [f"{p.phase} {p.numerator_hex} {p.exponent} {p.halted}" for p in approx.trace]
