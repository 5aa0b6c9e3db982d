import math
from fractions import Fraction

import pytest

from core.errors import ZeroMassError
from services.bitcore import strings_of_length
from services.measures import (
    BernoulliMeasure,
    PointMassMeasure,
    UniformMeasure,
    check_additivity,
    parse_measure,
)
from services.mltests import (
    FINITE_TESTS,
    SEQUENTIAL_TESTS,
    check_axiom,
    critical_region,
    dominance_constant,
    frequency_test,
    frequency_threshold_table,
    integral_test_lower,
    leading_zeros_test,
    odd_positions_test,
    run_battery,
    run_sequential,
    sequential_even_ones,
    sequential_even_ones_calibrated,
    universal_finite_test,
    universal_test_lower,
)
from services.sources_service import PeriodicSource, prng_stream
from tests.conftest import BUDGET, MEDIUM_LEN, SMALL_LEN


@pytest.mark.parametrize(
    "x, level", [("01111", 0), ("10011", 1), ("11011", 1), ("10100", 2), ("11111", 3)]
)
def test_odd_positions_examples(x, level):
    assert odd_positions_test(x) == level


def test_leading_zeros():
    assert leading_zeros_test("0001") == 3
    assert leading_zeros_test("") == 0
    assert leading_zeros_test("1000") == 0


def test_frequency_threshold_table_golden():
    assert frequency_threshold_table(8) == [0, 2, 4, 4, 6, 6, 6, 6, 8, 8]


def test_frequency_levels():
    assert frequency_test("") == 0
    assert frequency_test("0101") == 0
    for n in (4, 8, 16, 40):
        assert frequency_test("0" * n) == n - 1
        assert frequency_test("1" * n) == n - 1


@pytest.mark.parametrize("name", sorted(FINITE_TESTS))
def test_counting_axiom_holds_exhaustively(name):
    rows = check_axiom(FINITE_TESTS[name], 16)
    assert all(row.ok for row in rows)
    assert {row.n for row in rows} == set(range(17))


def test_counting_axiom_for_the_universal_lower_bound():
    rows = check_axiom(universal_finite_test(budget=BUDGET, max_len=SMALL_LEN), 12)
    assert all(row.ok for row in rows)


@pytest.mark.slow
def test_counting_axiom_for_the_universal_lower_bound_to_16():
    rows = check_axiom(universal_finite_test(budget=BUDGET, max_len=SMALL_LEN), 16, n_min=13)
    assert all(row.ok for row in rows)


def test_universal_lower_bound_on_zeros():
    assert universal_test_lower("0" * 12, budget=BUDGET, max_len=SMALL_LEN) == 3


def test_critical_regions_are_nested():
    test = FINITE_TESTS["frequency"]
    regions = [critical_region(test, 8, m) for m in range(10)]
    assert all(later <= earlier for earlier, later in zip(regions, regions[1:]))
    assert regions[0] == set(strings_of_length(8))
    assert regions[7] == {"0" * 8, "1" * 8}


def test_dominance_constant_is_finite():
    constant = dominance_constant(FINITE_TESTS["leading_zeros"], 8, budget=BUDGET, max_len=SMALL_LEN)
    assert 0 <= constant <= 8


def test_even_ones_gamma():
    assert sequential_even_ones("1010") == 4
    assert sequential_even_ones("1110") == 0
    assert sequential_even_ones_calibrated("1010") == 2
    assert sequential_even_ones_calibrated("1") == 0


def test_even_ones_count_bound_for_the_plain_gamma():
    for n in range(1, 13):
        for m in range(1, n + 2):
            count = sum(1 for x in strings_of_length(n) if sequential_even_ones(x) >= m)
            assert count <= 2 ** ((n + 1) // 2)


def test_calibrated_even_ones_satisfies_the_measure_axiom():
    for n in range(1, 15):
        for m in range(n + 2):
            count = sum(1 for x in strings_of_length(n) if sequential_even_ones_calibrated(x) >= m)
            assert count * 2**m <= 2**n


def test_sequential_rejects_a_stream_with_zero_even_positions():
    result = run_sequential(SEQUENTIAL_TESTS["even_ones"], PeriodicSource("10"), 50)
    assert result.rejected
    assert result.sup == 50
    assert result.running_sup == list(range(1, 51))
    assert "rejected" in result.verdict


def test_sequential_level_settles_on_a_random_stream():
    result = run_sequential(SEQUENTIAL_TESTS["even_ones"], prng_stream(5, 200), 200)
    assert not result.rejected
    assert result.sup < 40


def test_integral_test_sees_structure_under_lambda():
    assert integral_test_lower("0" * 16, UniformMeasure(), budget=BUDGET, max_len=MEDIUM_LEN) >= 3


def test_integral_test_under_the_point_mass_is_never_positive():
    score = integral_test_lower("0" * 8, PointMassMeasure("0"), budget=BUDGET, max_len=SMALL_LEN)
    assert score <= 0


def test_integral_test_needs_positive_mass():
    with pytest.raises(ZeroMassError):
        integral_test_lower("01", PointMassMeasure("0"), budget=BUDGET, max_len=SMALL_LEN)


def test_measures_are_additive():
    for measure in (UniformMeasure(), BernoulliMeasure(Fraction(1, 3)), PointMassMeasure("1")):
        assert check_additivity(measure, 8)
    assert parse_measure("bernoulli:3/4").p == Fraction(3, 4)
    with pytest.raises(ValueError):
        parse_measure("gauss")


def test_battery_records():
    records = run_battery("0" * 16)
    assert [r.name for r in records] == ["leading_zeros", "frequency", "odd_positions"]
    assert records[0].level == 16
    assert records[1].level == 15
    assert records[1].significance == 2.0**-15
    assert len(records[0].certificate) == 64
    assert run_battery("0" * 16)[0].certificate == records[0].certificate


def test_full_battery_adds_the_universal_test():
    records = run_battery("0" * 12, "full", budget=BUDGET, max_len=SMALL_LEN)
    assert records[-1].name == "universal"
    assert records[-1].level == 3


@pytest.mark.slow
def test_prng_streams_pass_the_default_battery():
    for seed in range(10):
        for record in run_battery(prng_stream(seed, 1 << 16)):
            assert record.level < 20, (seed, record)
            assert not math.isnan(record.significance)


@pytest.mark.parametrize("p, x", [(Fraction(1), "0"), (Fraction(1), "110"), (Fraction(0), "01")])
def test_degenerate_coins_reject_null_cylinders(p, x):
    coin = BernoulliMeasure(p)
    assert coin.cylinder_mass(x) == 0
    with pytest.raises(ZeroMassError):
        coin.conditional_zero(x)


def test_degenerate_coins_on_possible_cylinders():
    assert BernoulliMeasure(Fraction(1)).conditional_zero("111") == 0
    assert BernoulliMeasure(Fraction(0)).conditional_zero("00") == 1
    assert UniformMeasure().conditional_zero("0101") == Fraction(1, 2)
