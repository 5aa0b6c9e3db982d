"""Integral-test lower bound for randomness with respect to a recursive measure."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from core.errors import ZeroMassError
from services.bitcore import validate_bits
from services.measures import RecursiveMeasure
from services.refmachine import prefix_complexity_upper


def _log2(value: Fraction) -> float:
    return math.log2(value.numerator) - math.log2(value.denominator)


def integral_test_lower(
    prefix: str,
    measure: RecursiveMeasure,
    budget: Optional[int] = None,
    max_len: Optional[int] = None,
) -> float:
    """
    max over nonempty prefixes x of -K_upper(x) - log2 mu(x).

    K_upper only overestimates K, so this never exceeds the true score.
    """
    validate_bits(prefix)
    if not prefix:
        raise ValueError("prefix must be nonempty")
    if measure.cylinder_mass(prefix) == 0:
        raise ZeroMassError(f"{measure.name} gives measure zero to {prefix[:32]!r}")
    best = -math.inf
    for n in range(1, len(prefix) + 1):
        x = prefix[:n]
        k = prefix_complexity_upper(x, budget=budget, max_len=max_len).value
        best = max(best, -k - _log2(measure.cylinder_mass(x)))
    return best
