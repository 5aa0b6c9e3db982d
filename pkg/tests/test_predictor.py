import math
from fractions import Fraction

import pytest
from pydantic import ValidationError

from services.measures import BernoulliMeasure, PointMassMeasure, UniformMeasure
from services.predictor_service import (
    ModelClass,
    mixture_next,
    posterior_weights,
    squared_error_trace,
    universal_mass_lower,
)
from services.refmachine import enumerate_programs
from models import RunMode
from tests.conftest import BUDGET, SMALL_LEN


def test_uniform_alone_predicts_one_half():
    model_class = ModelClass.uniform(UniformMeasure())
    for x in ("", "0", "0110", "1111111"):
        assert mixture_next(model_class, x) == Fraction(1, 2)


def test_mixture_learns_the_point_mass():
    model_class = ModelClass.uniform(UniformMeasure(), PointMassMeasure("0"))
    assert mixture_next(model_class, "") == Fraction(3, 4)
    previous = Fraction(0)
    for k in range(12):
        current = mixture_next(model_class, "0" * k)
        assert current > previous
        previous = current
    assert posterior_weights(model_class, "1") == [Fraction(1), Fraction(0)]


def test_sole_model_has_no_error():
    truth = BernoulliMeasure(Fraction(1, 3))
    trace = squared_error_trace(ModelClass(members=[(truth, Fraction(1))]), truth, seed=4, horizon=200)
    assert trace.final == 0.0
    assert trace.reference == 0.0


def test_trace_is_nondecreasing_and_settles():
    truth = UniformMeasure()
    model_class = ModelClass.uniform(truth, BernoulliMeasure(Fraction(1, 4)))
    trace = squared_error_trace(model_class, truth, seed=0, horizon=2000)
    assert all(a <= b for a, b in zip(trace.cumulative, trace.cumulative[1:]))
    # doubling the horizon adds almost nothing once the posterior has concentrated
    assert trace.cumulative[-1] - trace.cumulative[999] < 0.01


@pytest.mark.slow
def test_mean_error_stays_below_the_prior_bound():
    truth = UniformMeasure()
    model_class = ModelClass.uniform(truth, BernoulliMeasure(Fraction(1, 4)), PointMassMeasure("1"))
    finals = [squared_error_trace(model_class, truth, seed=seed, horizon=10_000).final for seed in range(20)]
    assert sum(finals) / len(finals) < math.log(3) + 1


@pytest.mark.slow
def test_biased_coin_error_stays_below_the_prior_bound():
    truth = BernoulliMeasure(Fraction(3, 4))
    model_class = ModelClass.uniform(UniformMeasure(), truth)
    traces = [squared_error_trace(model_class, truth, seed=seed, horizon=10_000) for seed in range(20)]
    assert all(trace.reference == pytest.approx(math.log(2)) for trace in traces)
    assert sum(trace.final for trace in traces) / len(traces) < math.log(2) + 1.0


def test_weights_are_validated():
    with pytest.raises(ValidationError):
        ModelClass(members=[(UniformMeasure(), Fraction(-1, 2))])
    with pytest.raises(ValidationError):
        ModelClass(members=[(UniformMeasure(), Fraction(2, 3)), (PointMassMeasure(), Fraction(2, 3))])
    with pytest.raises(ValidationError):
        ModelClass(members=[])


def test_weight_of_unknown_measure():
    with pytest.raises(ValueError):
        ModelClass.uniform(UniformMeasure()).weight_of(UniformMeasure())


def test_universal_mass_of_empty_string_is_the_kraft_sum():
    table = enumerate_programs("", BUDGET, SMALL_LEN, RunMode.PREFIX, 65_536)
    expected = Fraction(table.kraft_numerator(), 1 << SMALL_LEN)
    assert universal_mass_lower("", budget=BUDGET, max_len=SMALL_LEN) == expected
    assert 0 < universal_mass_lower("0", budget=BUDGET, max_len=SMALL_LEN) < expected
