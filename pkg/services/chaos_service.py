"""The doubling map on bit expansions.

A micro state is the binary expansion of a point of [0, 1), held as a bit
source plus an offset. One step of w -> 2w mod 1 drops the leading bit, so the
coarse observable (which half of [0, 1) the point is in) at time t is bit
t + 1 of the initial expansion. No floating point is involved.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from models import DyadicRational, Observable, PredictorReport
from services.bitcore import strings_of_length
from services.measures import RecursiveMeasure
from services.sources_service import BitSource, PeriodicSource

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MicroState:
    source: BitSource
    offset: int = 0

    def bits(self, count: int) -> str:
        """The first ``count`` bits of this state's expansion."""
        cursor = self.source.clone()
        cursor.seek(self.offset)
        return cursor.read(count)


def step(state: MicroState) -> MicroState:
    return MicroState(state.source, state.offset + 1)


def observe(state: MicroState) -> Observable:
    return Observable.GAMMA1 if state.bits(1) == "1" else Observable.GAMMA0


def orbit_observables(state: MicroState, steps: int) -> str:
    """Observables at times 0..steps-1, written 0 for Gamma0 and 1 for Gamma1."""
    return state.bits(steps)


def state_value(state: MicroState, k: int) -> DyadicRational:
    """The state truncated to k bits."""
    return DyadicRational.from_bits(state.bits(k))


def from_dyadic(value: DyadicRational) -> MicroState:
    """Dyadic rationals take the expansion with an all-zeros tail."""
    return MicroState(PeriodicSource("0", prefix=value.leading_bits(value.exponent)))


def from_fraction(value: Fraction) -> MicroState:
    """Any rational in [0, 1) as a pre-period plus a repeating pattern."""
    value = Fraction(value)
    if not 0 <= value < 1:
        raise ValueError("state must lie in [0, 1)")
    q = value.denominator
    remainder = value.numerator
    seen: Dict[int, int] = {}
    digits = []
    while remainder not in seen:
        seen[remainder] = len(digits)
        remainder *= 2
        digits.append(str(remainder // q))
        remainder %= q
    start = seen[remainder]
    return MicroState(PeriodicSource("".join(digits[start:]), prefix="".join(digits[:start])))


# ---------------------------------------------------------------------------
# Predictors
# ---------------------------------------------------------------------------


class Predictor:
    """Guesses the next observable from the history seen so far."""

    name = "predictor"

    def reset(self) -> None:
        pass

    def predict(self) -> str:
        raise NotImplementedError

    def update(self, bit: str) -> None:
        pass


class ConstantPredictor(Predictor):
    def __init__(self, bit: str = "0"):
        self.bit = bit
        self.name = f"constant({bit})"

    def predict(self) -> str:
        return self.bit


class CopyLastPredictor(Predictor):
    name = "copy_last"

    def reset(self) -> None:
        self.last = "0"

    def predict(self) -> str:
        return self.last

    def update(self, bit: str) -> None:
        self.last = bit


class MajorityPredictor(Predictor):
    """Most frequent symbol so far; ties go to 0."""

    name = "majority"

    def reset(self) -> None:
        self.ones = 0
        self.seen = 0

    def predict(self) -> str:
        return "1" if 2 * self.ones > self.seen else "0"

    def update(self, bit: str) -> None:
        self.ones += bit == "1"
        self.seen += 1


class MarkovPredictor(Predictor):
    """k-th order counter: majority continuation of the last k symbols."""

    def __init__(self, k: int = 2):
        if k < 1:
            raise ValueError("order must be >= 1")
        self.k = k
        self.name = f"markov({k})"

    def reset(self) -> None:
        self.history = ""
        self.counts: Dict[str, Counter] = {}

    def predict(self) -> str:
        counts = self.counts.get(self.history[-self.k :])
        if not counts or len(self.history) < self.k:
            return "0"
        return "1" if counts["1"] > counts["0"] else "0"

    def update(self, bit: str) -> None:
        if len(self.history) >= self.k:
            self.counts.setdefault(self.history[-self.k :], Counter())[bit] += 1
        self.history = (self.history + bit)[-self.k :]


def make_predictor(name: str) -> Predictor:
    """``constant0``, ``constant1``, ``copy_last``, ``majority`` or ``markovK``."""
    if name in ("constant0", "constant1"):
        return ConstantPredictor(name[-1])
    if name == "copy_last":
        return CopyLastPredictor()
    if name == "majority":
        return MajorityPredictor()
    if name.startswith("markov") and name[len("markov") :].isdigit():
        return MarkovPredictor(int(name[len("markov") :]))
    raise ValueError(f"unknown predictor {name!r}")


def evaluate_predictor(predictor: Predictor, state: MicroState, steps: int) -> float:
    """Fraction of correct guesses for observables 2..steps+1, each made from the history before it."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    orbit = orbit_observables(state, steps + 1)
    predictor.reset()
    predictor.update(orbit[0])
    correct = 0
    for bit in orbit[1:]:
        correct += predictor.predict() == bit
        predictor.update(bit)
    return correct / steps


def predictor_report(predictor: Predictor, state: MicroState, steps: int) -> PredictorReport:
    accuracy = evaluate_predictor(predictor, state, steps)
    logger.info(f"{predictor.name}: accuracy {accuracy:.4f} over {steps} steps")
    return PredictorReport(predictor=predictor.name, steps=steps, accuracy=accuracy)


def check_invariance(measure: RecursiveMeasure, max_len: int = 12) -> List[str]:
    """Cylinders x with mu(T^-1 Gamma_x) != mu(Gamma_x); T^-1 Gamma_x is Gamma_0x union Gamma_1x."""
    return [
        x
        for length in range(max_len + 1)
        for x in strings_of_length(length)
        if measure.cylinder_mass("0" + x) + measure.cylinder_mass("1" + x) != measure.cylinder_mass(x)
    ]
