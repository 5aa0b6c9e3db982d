"""Bayesian mixture prediction over a finite class of recursive measures."""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from core.config import settings
from core.errors import ZeroMassError
from models import RunMode, SquaredErrorTrace
from services.measures import RecursiveMeasure
from services.refmachine import enumerate_programs

logger = logging.getLogger(__name__)


class ModelClass(BaseModel):
    """(measure, prior weight) pairs; weights exact, positive, summing to at most 1."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    members: List[Tuple[RecursiveMeasure, Fraction]]

    @model_validator(mode="after")
    def _check_weights(self) -> ModelClass:
        if not self.members:
            raise ValueError("a model class needs at least one measure")
        if any(weight <= 0 for _, weight in self.members):
            raise ValueError("prior weights must be positive")
        if sum(weight for _, weight in self.members) > 1:
            raise ValueError("prior weights must sum to at most 1")
        return self

    @classmethod
    def uniform(cls, *measures: RecursiveMeasure) -> ModelClass:
        weight = Fraction(1, len(measures))
        return cls(members=[(measure, weight) for measure in measures])

    def weight_of(self, measure: RecursiveMeasure) -> Fraction:
        for member, weight in self.members:
            if member is measure:
                return weight
        raise ValueError(f"{measure.name} is not in the model class")

    def mass(self, x: str) -> Fraction:
        return sum((weight * measure.cylinder_mass(x) for measure, weight in self.members), Fraction(0))


def mixture_next(model_class: ModelClass, x: str) -> Fraction:
    """Probability that the bit after x is 0 under the mixture."""
    mass = model_class.mass(x)
    if mass == 0:
        raise ZeroMassError(f"the mixture gives measure zero to {x[:32]!r}")
    return model_class.mass(x + "0") / mass


def posterior_weights(model_class: ModelClass, x: str) -> List[Fraction]:
    mass = model_class.mass(x)
    if mass == 0:
        raise ZeroMassError(f"the mixture gives measure zero to {x[:32]!r}")
    return [weight * measure.cylinder_mass(x) / mass for measure, weight in model_class.members]


def squared_error_trace(
    model_class: ModelClass, truth: RecursiveMeasure, seed: int, horizon: int
) -> SquaredErrorTrace:
    """
    Cumulative sum of (mixture(0|x) - truth(0|x))**2 along a path sampled from ``truth``.

    The posterior is tracked in float64; the reported reference is ln(1 / w_truth).
    """
    reference = math.log(1 / model_class.weight_of(truth))
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random(horizon)
    weights = np.array([float(weight) for _, weight in model_class.members])
    measures = [measure for measure, _ in model_class.members]

    x = ""
    total = 0.0
    cumulative = []
    for t in range(horizon):
        alive = weights > 0
        predictions = np.array(
            [float(measure.conditional_zero(x)) if live else 0.0 for measure, live in zip(measures, alive)]
        )
        mixture = float(np.dot(weights, predictions) / weights.sum())
        true_zero = float(truth.conditional_zero(x))
        total += (mixture - true_zero) ** 2
        cumulative.append(total)

        bit = "0" if draws[t] < true_zero else "1"
        weights = weights * (predictions if bit == "0" else 1 - predictions) * alive
        weights /= weights.sum()
        x += bit

    logger.debug(f"seed {seed}: cumulative squared error {total:.4f} (reference {reference:.4f})")
    return SquaredErrorTrace(seed=seed, horizon=horizon, cumulative=cumulative, reference=reference)


def universal_mass_lower(x: str, budget: Optional[int] = None, max_len: Optional[int] = None) -> Fraction:
    """Sum of 2**-l(p) over enumerated prefix programs whose output extends x (a lower bound)."""
    budget = settings.step_budget if budget is None else budget
    max_len = settings.max_len if max_len is None else max_len
    table = enumerate_programs("", budget, max_len, RunMode.PREFIX, settings.max_output_bits)
    return sum(
        (Fraction(1, 1 << len(record.code)) for record in table.programs if record.output.startswith(x)),
        Fraction(0),
    )
