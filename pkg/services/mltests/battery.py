"""Named batteries of finite tests producing certified TestRecords."""
from __future__ import annotations

import logging
from typing import Dict, List, Optional

from models import TestRecord
from services.bitcore import validate_bits
from services.mltests.finite import FINITE_TESTS, FiniteTest, universal_finite_test
from utils.digest import certificate_hash

logger = logging.getLogger(__name__)

BATTERIES: Dict[str, List[str]] = {
    "default": ["leading_zeros", "frequency", "odd_positions"],
    "full": ["leading_zeros", "frequency", "odd_positions", "universal"],
}


def _resolve(name: str, budget: Optional[int], max_len: Optional[int]) -> FiniteTest:
    if name == "universal":
        return universal_finite_test(budget=budget, max_len=max_len)
    return FINITE_TESTS[name]


def run_battery(
    x: str, battery: str = "default", budget: Optional[int] = None, max_len: Optional[int] = None
) -> List[TestRecord]:
    validate_bits(x)
    if battery not in BATTERIES:
        raise ValueError(f"unknown battery {battery!r}; expected one of {sorted(BATTERIES)}")
    records = []
    for name in BATTERIES[battery]:
        level = _resolve(name, budget, max_len).level(x)
        records.append(
            TestRecord(
                name=name,
                n=len(x),
                level=level,
                significance=2.0**-level,
                certificate=certificate_hash(name, len(x), level, x),
            )
        )
    logger.info(f"Battery {battery} on {len(x)} bits: " + ", ".join(f"{r.name}={r.level}" for r in records))
    return records
