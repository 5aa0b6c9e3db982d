"""Sequential Martin-Lof tests evaluated on finite prefixes of a stream."""
from __future__ import annotations

import logging
from typing import Callable, Union

from pydantic import BaseModel, ConfigDict

from models import SequentialResult
from services.sources_service import BitSource, take_prefix

logger = logging.getLogger(__name__)


class SequentialTest(BaseModel):
    """gamma maps a prefix to a level; the test's value on a sequence is the sup over its prefixes."""

    model_config = ConfigDict(frozen=True)

    name: str
    gamma: Callable[[str], int]


def _even_positions_zero(prefix: str) -> bool:
    # positions 2, 4, 6, ... (1-based) are prefix[1::2]
    return "1" not in prefix[1::2]


def sequential_even_ones(prefix: str) -> int:
    """gamma(x) = l(x) when every even position of x holds 0, else 0."""
    return len(prefix) if _even_positions_zero(prefix) else 0


def sequential_even_ones_calibrated(prefix: str) -> int:
    """gamma(x) = number of even positions checked, when all of them hold 0."""
    return len(prefix) // 2 if _even_positions_zero(prefix) else 0


SEQUENTIAL_TESTS = {
    "even_ones": SequentialTest(name="even_ones", gamma=sequential_even_ones),
    "even_ones_calibrated": SequentialTest(name="even_ones_calibrated", gamma=sequential_even_ones_calibrated),
}


def run_sequential(test: SequentialTest, stream: Union[str, BitSource], horizon: int) -> SequentialResult:
    """Evaluate gamma on every prefix up to ``horizon`` and track the running supremum."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    bits = take_prefix(stream, horizon)
    running = []
    sup = 0
    for n in range(1, len(bits) + 1):
        sup = max(sup, test.gamma(bits[:n]))
        running.append(sup)

    climbing = len(running) >= 2 and running[-1] > running[-2]
    rejected = sup > 0 and climbing
    if rejected:
        verdict = f"rejected: level >= {sup} at horizon {len(bits)} and still climbing"
    else:
        verdict = f"level {sup} stable at horizon {len(bits)}"
    logger.debug(f"{test.name}: {verdict}")
    return SequentialResult(
        name=test.name, horizon=len(bits), sup=sup, running_sup=running, rejected=rejected, verdict=verdict
    )
