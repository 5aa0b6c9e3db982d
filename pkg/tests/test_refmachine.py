import logging

import pytest

from core.errors import BudgetInfeasibleError, UnknownCodecError
from models import ComplexityKind, RunMode, RunStatus
from services.bitcore import encode_sd2, from_index, is_prefix_free, strings_of_length
from services.refmachine import (
    C_LITERAL,
    ECHO_01,
    LOOP_FOREVER,
    complexity_upper,
    compressor_bound,
    enumerate_programs,
    length_condition,
    literal_program,
    measure_literal_constant,
    oscillation_profile,
    plain_complexity_upper,
    prefix_complexity_upper,
    run,
)
from services.sources_service import prng_stream
from tests.conftest import BUDGET, MEDIUM_LEN, SMALL_LEN

DOUBLING_16 = "010" + "10" * 4 + "00"


def test_echo_program_halts_with_its_literal():
    outcome = run(ECHO_01, budget=100)
    assert outcome.status is RunStatus.HALTED
    assert outcome.output == "01"
    assert outcome.bits_consumed == len(ECHO_01)


def test_loop_exhausts_any_budget():
    outcome = run(LOOP_FOREVER, budget=50)
    assert outcome.status is RunStatus.BUDGET_EXHAUSTED
    assert outcome.steps_used == 50


def test_budget_must_be_positive():
    with pytest.raises(BudgetInfeasibleError):
        run(ECHO_01, budget=0)


def test_reading_past_the_program_needs_input():
    outcome = run("0", budget=10)
    assert outcome.status is RunStatus.INVALID
    assert outcome.needs_input


def test_rest_only_exists_in_plain_mode():
    prefix = run("111111" + "0110", budget=100, mode=RunMode.PREFIX)
    assert prefix.status is RunStatus.INVALID
    assert not prefix.needs_input

    plain = run("111111" + "0110", budget=100, mode=RunMode.PLAIN)
    assert plain.halted
    assert plain.output == "0110"
    assert plain.saw_end


def test_step_accounting_and_budget_monotonicity():
    # 13 bits read, 6 instructions executed
    assert run(DOUBLING_16, budget=19).output == "0" * 16
    assert run(DOUBLING_16, budget=18).status is RunStatus.BUDGET_EXHAUSTED
    for budget in range(19, 40):
        assert run(DOUBLING_16, budget=budget).output == "0" * 16


def test_condition_instructions():
    assert run("1110" + "00", condition="101", budget=100).output == "101"
    assert run("11110" + "1" + "00", condition=from_index(5), budget=100).output == "11111"


def test_output_limit_makes_the_run_invalid():
    assert run(DOUBLING_16, budget=100, max_output_bits=8).status is RunStatus.INVALID


def test_prefix_table_is_prefix_free_with_kraft_mass_at_most_one():
    table = enumerate_programs("", BUDGET, 12, RunMode.PREFIX)
    assert is_prefix_free(record.code for record in table.programs)
    assert table.kraft_numerator() <= 1 << 12
    assert ECHO_01 in {record.code for record in table.programs}


def test_enumeration_records_only_exact_halting_programs():
    table = enumerate_programs("", BUDGET, SMALL_LEN, RunMode.PLAIN)
    for record in table.programs[:200]:
        outcome = run(record.code, budget=BUDGET, mode=RunMode.PLAIN)
        assert outcome.halted
        assert outcome.output == record.output
        assert outcome.bits_consumed == len(record.code)


def test_zeros_are_compressible():
    estimate = prefix_complexity_upper("0" * 16, budget=BUDGET, max_len=MEDIUM_LEN)
    assert estimate.value <= 13
    assert not estimate.fallback
    assert run(estimate.witness.code, budget=BUDGET).output == "0" * 16


def test_zeros_given_their_length_cost_a_constant():
    for n in (8, 20, 100):
        estimate = plain_complexity_upper("0" * n, length_condition(n), budget=BUDGET, max_len=8)
        assert estimate.value <= 8
        assert estimate.conditional_on == from_index(n)
        replay = run(estimate.witness.code, from_index(n), budget=BUDGET, mode=RunMode.PLAIN)
        assert replay.output == "0" * n


def test_literal_fallback_caps_every_estimate():
    x = prng_stream(11, 40)
    plain = plain_complexity_upper(x, budget=BUDGET, max_len=SMALL_LEN)
    assert plain.fallback
    assert plain.value == len(x) + C_LITERAL
    prefix = prefix_complexity_upper(x, budget=BUDGET, max_len=SMALL_LEN)
    assert prefix.fallback
    assert prefix.value == 3 + len(encode_sd2(x)) + 2
    assert prefix.witness.code == literal_program(x, ComplexityKind.K)


def test_plain_complexity_never_exceeds_length_plus_constant():
    for n in range(7):
        for x in strings_of_length(n):
            assert plain_complexity_upper(x, budget=BUDGET, max_len=8).value <= n + C_LITERAL


def test_estimates_do_not_grow_with_more_search():
    for n in range(1, 7):
        for x in strings_of_length(n):
            small = complexity_upper(x, budget=BUDGET, max_len=8).value
            large = complexity_upper(x, budget=BUDGET, max_len=SMALL_LEN).value
            assert large <= small


def test_counting_law():
    for n in range(13):
        values = [plain_complexity_upper(x, budget=BUDGET, max_len=12).value for x in strings_of_length(n)]
        for m in range(n + 1):
            assert sum(1 for value in values if value < n - m) < 2 ** (n - m)


def test_literal_constant_is_measured():
    assert measure_literal_constant() == C_LITERAL == 6


def test_oscillation_profile_covers_every_prefix():
    points = oscillation_profile("0" * 12, budget=BUDGET, max_len=8)
    assert [p.n for p in points] == list(range(1, 13))
    assert all(p.deficiency == p.n - p.complexity_upper for p in points)
    assert points[-1].deficiency >= 4


@pytest.mark.parametrize("codec", ["rle", "zlib", "bz2", "lzma"])
def test_compressor_bounds_round_trip(codec):
    x = prng_stream(3, 500)
    estimate = compressor_bound(x, codec)
    assert estimate.value == estimate.header_bits + estimate.payload_bits
    assert estimate.original_length == 500


def test_run_length_codec_compresses_runs():
    assert compressor_bound("0" * 64, "rle").value < 64
    assert compressor_bound("", "rle").payload_bits == 0


def test_unknown_codec():
    with pytest.raises(UnknownCodecError):
        compressor_bound("01", "gzip9")


def test_exhausted_programs_are_reported(caplog):
    enumerate_programs.cache_clear()
    with caplog.at_level(logging.WARNING, logger="services.refmachine.enumeration"):
        table = enumerate_programs("", 3, 6, RunMode.PREFIX, 65_536)
    assert table.exhausted > 0
    assert "still running" in caplog.text
