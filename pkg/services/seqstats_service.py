"""Quantitative statistics of long finite strings: ones counts, blocks and runs.

The bounds take a deficiency function delta(n) and an additive constant c.
Both constants are existential in the theory; here c is a calibration
parameter (``RunConfig.calibration_c``) chosen so the Monte-Carlo checks pass
at their stated rates.
"""
from __future__ import annotations

import logging
import math
from typing import Callable, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from clients.worker_pool import map_ordered
from core.config import settings
from models import Bits, McRecord
from services.refmachine import prefix_complexity_upper
from services.sources_service import prng_bits
from utils.bitpack import array_to_bits, bits_to_array

logger = logging.getLogger(__name__)


class DeficiencyFunction(BaseModel):
    """delta(n) in base-2 logs, rounded up; 0 wherever the formula is undefined or negative."""

    model_config = ConfigDict(frozen=True)

    name: Literal["log", "sqrt", "loglog", "constant"]
    constant: int = 0

    def __call__(self, n: int) -> int:
        if self.name == "constant":
            return self.constant
        if n < 1:
            return 0
        if self.name == "log":
            return (n - 1).bit_length()
        if self.name == "sqrt":
            return math.isqrt(n - 1) + 1
        if n <= 2:
            return 0
        return max(math.ceil(math.log2(math.log2(n))), 0)


LOG = DeficiencyFunction(name="log")
SQRT = DeficiencyFunction(name="sqrt")
LOGLOG = DeficiencyFunction(name="loglog")
ZERO = DeficiencyFunction(name="constant", constant=0)

Deficiency = Union[DeficiencyFunction, Callable[[int], float]]


class BlockQuery(BaseModel):
    model_config = ConfigDict(frozen=True)

    y: Bits

    @property
    def l(self) -> int:
        return len(self.y)

    @property
    def p(self) -> float:
        return 2.0**-self.l


def _calibrated(c: Optional[float]) -> float:
    return settings.calibration_c if c is None else c


def count_ones(x: str) -> int:
    return x.count("1")


def count_block_wrap(x: str, y: str) -> int:
    """Occurrences of y in x, overlapping, with x read as a cycle (start positions 0..n-1)."""
    if not y:
        raise ValueError("block must be nonempty")
    if len(y) > len(x):
        raise ValueError(f"block of length {len(y)} is longer than the string ({len(x)})")
    cyclic = x + x[: len(y) - 1]
    return sum(1 for i in range(len(x)) if cyclic.startswith(y, i))


def block_counts(x: str, l: int) -> np.ndarray:
    """Wraparound counts of every block of length l, indexed by the block's binary value."""
    if l < 1 or l > len(x):
        raise ValueError(f"block length must be in 1..{len(x)}")
    arr = bits_to_array(x).astype(np.int64)
    cyclic = np.concatenate([arr, arr[: l - 1]])
    n = len(arr)
    values = np.zeros(n, dtype=np.int64)
    for k in range(l):
        values = (values << 1) | cyclic[k : k + n]
    return np.bincount(values, minlength=1 << l)


def ones_bound(n: int, delta: Deficiency = LOG, c: Optional[float] = None) -> float:
    """sqrt((delta(n) + c) n ln 2): the allowed |#ones(x) - n/2| for C(x|n) >= n - delta(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.sqrt((delta(n) + _calibrated(c)) * n * math.log(2))


def chernoff_tail(n: int, p: float, m: float) -> float:
    """2 exp(-m^2 / 4npq) bound on Pr(|s_n - np| >= m)."""
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2 * math.exp(-(m**2) / (4 * n * p * (1 - p)))


def block_bound(
    n: int,
    query: Union[BlockQuery, str],
    k_y_upper: int,
    delta: Deficiency = LOG,
    c: Optional[float] = None,
) -> float:
    """sqrt(alpha n p) with alpha = (K(y|n) + log l + delta(n) + c)(1 - p) l 4 ln 2."""
    if isinstance(query, str):
        query = BlockQuery(y=query)
    l, p = query.l, query.p
    if l < 1 or (1 << l) > n:
        raise ValueError(f"block length {l} must satisfy 1 <= l <= log2 n for n = {n}")
    alpha = (k_y_upper + math.log2(l) + delta(n) + _calibrated(c)) * (1 - p) * l * 4 * math.log(2)
    return math.sqrt(alpha * n * p)


def longest_run(x: str, bit: str = "0") -> int:
    """Longest run of ``bit`` in x, without wraparound."""
    if bit not in ("0", "1"):
        raise ValueError("bit must be '0' or '1'")
    other = "1" if bit == "0" else "0"
    return max(len(run) for run in x.split(other))


def all_blocks_present(x: str, l: int) -> List[str]:
    """Blocks of length l that never occur in x (wraparound), in lexicographic order."""
    counts = block_counts(x, l)
    return [format(int(value), f"0{l}b") for value in np.flatnonzero(counts == 0)]


def default_block_length(n: int) -> int:
    """floor(log2 n - 2 log2 log2 n), at least 1."""
    if n < 4:
        return 1
    return max(int(math.floor(math.log2(n) - 2 * math.log2(math.log2(n)))), 1)


# ---------------------------------------------------------------------------
# Monte-Carlo drivers; trial t uses seed + t so every record is replayable alone
# ---------------------------------------------------------------------------


def _seeds(seed: int, trials: int) -> List[int]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return [seed + t for t in range(trials)]


def _summarize(statistic: str, records: List[McRecord]) -> List[McRecord]:
    passed = sum(record.satisfied for record in records)
    logger.info(f"{statistic}: {passed}/{len(records)} trials within bound")
    return records


def monte_carlo_ones(
    n: int, trials: int, seed: int = 0, delta: Deficiency = LOG, c: Optional[float] = None
) -> List[McRecord]:
    bound = ones_bound(n, delta, c)

    def trial(trial_seed: int) -> McRecord:
        deviation = abs(int(prng_bits(trial_seed, n).sum()) - n / 2)
        return McRecord(
            seed=trial_seed, n=n, statistic="ones", value=deviation, bound=bound, satisfied=deviation <= bound
        )

    return _summarize("ones", map_ordered(trial, _seeds(seed, trials)))


def monte_carlo_blocks(
    n: int,
    y: str,
    trials: int,
    seed: int = 0,
    k_y_upper: Optional[int] = None,
    delta: Deficiency = LOG,
    c: Optional[float] = None,
    budget: Optional[int] = None,
    max_len: Optional[int] = None,
) -> List[McRecord]:
    """|#y(x) - np| against block_bound; K(y) defaults to the enumerated upper bound on the reference machine."""
    if k_y_upper is None:
        k_y_upper = prefix_complexity_upper(y, budget=budget, max_len=max_len).value
    query = BlockQuery(y=y)
    bound = block_bound(n, query, k_y_upper, delta, c)
    target = int(y, 2)

    def trial(trial_seed: int) -> McRecord:
        x = array_to_bits(prng_bits(trial_seed, n))
        deviation = abs(int(block_counts(x, query.l)[target]) - n * query.p)
        return McRecord(
            seed=trial_seed,
            n=n,
            statistic=f"block:{y}",
            value=deviation,
            bound=bound,
            satisfied=deviation <= bound,
        )

    return _summarize(f"block:{y}", map_ordered(trial, _seeds(seed, trials)))


def chernoff_empirical(
    n: int, p: float, m_grid: List[float], samples: int = 10_000, seed: int = 0
) -> List[McRecord]:
    """Empirical Pr(|s_n - np| >= m) from binomial samples, one record per m."""
    rng = np.random.Generator(np.random.PCG64(seed))
    deviations = np.abs(rng.binomial(n, p, size=samples) - n * p)
    records = []
    for m in m_grid:
        frequency = float(np.mean(deviations >= m))
        bound = chernoff_tail(n, p, m)
        records.append(
            McRecord(seed=seed, n=n, statistic=f"chernoff:m={m}", value=frequency, bound=bound,
                     satisfied=frequency <= bound)
        )
    return records


def longest_run_trials(n: int, trials: int, seed: int = 0, bit: str = "0") -> List[McRecord]:
    """Longest run per trial against the lower guarantee log2 n - log2 log2 n - 2."""
    bound = math.log2(n) - math.log2(math.log2(n)) - 2

    def trial(trial_seed: int) -> McRecord:
        run = longest_run(array_to_bits(prng_bits(trial_seed, n)), bit)
        return McRecord(seed=trial_seed, n=n, statistic=f"longest_run:{bit}", value=run, bound=bound,
                        satisfied=run >= bound)

    return _summarize(f"longest_run:{bit}", map_ordered(trial, _seeds(seed, trials)))


def all_blocks_trials(n: int, trials: int, seed: int = 0, l: Optional[int] = None) -> List[McRecord]:
    """Number of missing blocks of length l per trial; satisfied when none is missing."""
    l = default_block_length(n) if l is None else l

    def trial(trial_seed: int) -> McRecord:
        missing = len(all_blocks_present(array_to_bits(prng_bits(trial_seed, n)), l))
        return McRecord(seed=trial_seed, n=n, statistic=f"all_blocks:l={l}", value=missing, bound=0,
                        satisfied=missing == 0)

    return _summarize(f"all_blocks:l={l}", map_ordered(trial, _seeds(seed, trials)))
