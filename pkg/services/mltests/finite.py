"""Finite Martin-Lof tests under the uniform distribution L_n.

Every test reports an integer level m (the largest rejected critical region)
and must satisfy #{x : l(x) = n, level(x) >= m} <= 2**(n - m).
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Set

from pydantic import BaseModel, ConfigDict

from models import AxiomRow
from services.bitcore import strings_of_length
from services.refmachine import length_condition, plain_complexity_upper


class FiniteTest(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    evaluator: Callable[[str], int]
    distribution: str = "uniform"

    def level(self, x: str) -> int:
        return self.evaluator(x)


def leading_zeros_test(x: str) -> int:
    """Reject at level m iff x starts with m zeros."""
    return len(x) - len(x.lstrip("0"))


@lru_cache(maxsize=4096)
def frequency_tail(n: int, t: int) -> int:
    """#{x : l(x) = n, |2 #ones(x) - n| > t} for t >= 0, by exact binomial sums."""
    k_max = (n - t - 1) // 2
    total = 0
    term = 1
    for k in range(k_max + 1):
        total += term
        term = term * (n - k) // (k + 1)
    return 2 * total


def frequency_threshold(n: int, m: int) -> int:
    """g(n, m): the least t with #{x : |2 f_n - n| > t} <= 2**(n - m)."""
    for t in range(n + 1):
        if frequency_tail(n, t) << m <= 1 << n:
            return t
    return n


def frequency_threshold_table(n: int) -> List[int]:
    return [frequency_threshold(n, m) for m in range(n + 2)]


def frequency_test(x: str) -> int:
    """Largest m with |2 #ones(x) - n| > g(n, m)."""
    n = len(x)
    deviation = abs(2 * x.count("1") - n)
    if deviation == 0:
        return 0
    # |d| > g(n, m) exactly when tail(|d| - 1) * 2**m <= 2**n
    tail = frequency_tail(n, deviation - 1)
    return max(n - (tail - 1).bit_length(), 0)


def odd_positions_test(x: str) -> int:
    """max{i : x_1 = x_3 = ... = x_(2i-1) = 1}, 0 when x_1 = 0."""
    level = 0
    for bit in x[::2]:
        if bit != "1":
            break
        level += 1
    return level


def universal_test_lower(x: str, budget: Optional[int] = None, max_len: Optional[int] = None) -> int:
    """n - C_upper(x | n) - 1: a lower bound on the universal test, valid at any fixed budget."""
    n = len(x)
    estimate = plain_complexity_upper(x, length_condition(n), budget=budget, max_len=max_len)
    return max(n - estimate.value - 1, 0)


def universal_finite_test(budget: Optional[int] = None, max_len: Optional[int] = None) -> FiniteTest:
    return FiniteTest(
        name="universal",
        evaluator=lambda x: universal_test_lower(x, budget=budget, max_len=max_len),
    )


FINITE_TESTS: Dict[str, FiniteTest] = {
    "leading_zeros": FiniteTest(name="leading_zeros", evaluator=leading_zeros_test),
    "frequency": FiniteTest(name="frequency", evaluator=frequency_test),
    "odd_positions": FiniteTest(name="odd_positions", evaluator=odd_positions_test),
}


def check_axiom(test: FiniteTest, n_max: int, n_min: int = 0) -> List[AxiomRow]:
    """Count #{x : level(x) >= m} for every n in range and every m up to n + 1."""
    rows = []
    for n in range(n_min, n_max + 1):
        histogram = Counter(test.level(x) for x in strings_of_length(n))
        for m in range(n + 2):
            count = sum(c for level, c in histogram.items() if level >= m)
            rows.append(
                AxiomRow(
                    test=test.name,
                    n=n,
                    m=m,
                    count=count,
                    bound=(1 << (n - m)) if m <= n else 0,
                    ok=count << m <= 1 << n,
                )
            )
    return rows


def critical_region(test: FiniteTest, n: int, m: int) -> Set[str]:
    """V_m restricted to length n."""
    return {x for x in strings_of_length(n) if test.level(x) >= m}


def dominance_constant(
    test: FiniteTest, n_max: int, budget: Optional[int] = None, max_len: Optional[int] = None
) -> int:
    """max over 1 <= l(x) <= n_max of level(x) - universal_test_lower(x); measured, not assumed."""
    return max(
        test.level(x) - universal_test_lower(x, budget=budget, max_len=max_len)
        for n in range(1, n_max + 1)
        for x in strings_of_length(n)
    )
