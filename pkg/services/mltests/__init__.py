from services.mltests.battery import BATTERIES, run_battery
from services.mltests.finite import (
    FINITE_TESTS,
    FiniteTest,
    check_axiom,
    critical_region,
    dominance_constant,
    frequency_tail,
    frequency_test,
    frequency_threshold,
    frequency_threshold_table,
    leading_zeros_test,
    odd_positions_test,
    universal_finite_test,
    universal_test_lower,
)
from services.mltests.integral import integral_test_lower
from services.mltests.sequential import (
    SEQUENTIAL_TESTS,
    SequentialTest,
    run_sequential,
    sequential_even_ones,
    sequential_even_ones_calibrated,
)

__all__ = [
    "BATTERIES",
    "FINITE_TESTS",
    "SEQUENTIAL_TESTS",
    "FiniteTest",
    "SequentialTest",
    "check_axiom",
    "critical_region",
    "dominance_constant",
    "frequency_tail",
    "frequency_test",
    "frequency_threshold",
    "frequency_threshold_table",
    "integral_test_lower",
    "leading_zeros_test",
    "odd_positions_test",
    "run_battery",
    "run_sequential",
    "sequential_even_ones",
    "sequential_even_ones_calibrated",
    "universal_finite_test",
    "universal_test_lower",
]
