import pytest

from core.errors import RuleViolationError, SourceIndexError
from models import Decision
from services.bitcore import strings_of_length
from services.selection import (
    RULE_LIBRARY,
    KlRule,
    MwcRule,
    after_two_ones,
    even_positions,
    frequency_profile,
    lift_mwc,
    parse_rule,
    reverse_window,
    select_all,
    select_kl,
    select_mwc,
    stability_report,
    ville_stream,
)
from services.sources_service import ChampernowneSource, ConstantSource, StringSource, prng_stream


def test_select_all_is_the_identity():
    x = prng_stream(1, 64)
    selection = select_mwc(select_all, x, 64)
    assert selection.bits == x
    assert selection.indices == list(range(1, 65))


def test_after_two_ones():
    selection = select_mwc(after_two_ones, "110110", 6)
    assert selection.indices == [3, 6]
    assert selection.bits == "00"


def test_rules_never_see_the_bit_they_decide():
    seen = []

    def spy(prefix):
        seen.append(prefix)
        return Decision.SELECT

    select_mwc(MwcRule(name="spy", decide=spy), "1011", 4)
    assert seen == ["", "1", "10", "101"]


def test_selection_commutes_with_truncation():
    x = prng_stream(2, 200)
    for rule in RULE_LIBRARY.values():
        full = select_mwc(rule, x, 200)
        short = select_mwc(rule, x, 120)
        assert short.indices == [i for i in full.indices if i <= 120]


def test_lifted_rules_select_the_same_bits():
    for seed in range(100):
        x = prng_stream(seed, 40)
        for rule in RULE_LIBRARY.values():
            mwc = select_mwc(rule, x, len(x))
            kl = select_kl(lift_mwc(rule), x, len(x))
            assert kl.bits == mwc.bits
            assert [v.index for v in kl.visits if v.included] == mwc.indices


@pytest.mark.slow
def test_lifting_is_exact_on_all_short_strings():
    for n in range(13):
        for x in strings_of_length(n):
            for rule in RULE_LIBRARY.values():
                assert select_kl(lift_mwc(rule), x, n).bits == select_mwc(rule, x, n).bits


def test_reverse_window_permutes():
    selection = select_kl(reverse_window(4), "0011", 10)
    assert selection.bits == "1100"
    assert [v.index for v in selection.visits] == [4, 3, 2, 1]


def test_revisiting_a_position_is_a_violation():
    revisit = KlRule(name="revisit", next=lambda history: (1, True))
    with pytest.raises(RuleViolationError):
        select_kl(revisit, ConstantSource("1"), 5)


def test_reading_outside_the_source():
    with pytest.raises(SourceIndexError):
        select_kl(reverse_window(5), StringSource("0011"), 5)
    with pytest.raises(SourceIndexError):
        select_kl(KlRule(name="zero", next=lambda history: (0, True)), "01", 1)


def test_rule_expressions():
    assert select_mwc(parse_rule("suffix(11)"), "110110", 6).indices == [3, 6]
    x = prng_stream(3, 100)
    assert select_mwc(parse_rule("len%2==1"), x, 100) == select_mwc(even_positions, x, 100)
    combined = parse_rule("!(suffix(0) | zeros>ones) & all")
    assert combined.decide("01") == Decision.SELECT
    assert combined.decide("10") == Decision.SKIP


def test_until_truncates():
    selection = select_mwc(parse_rule("all until 3"), "10101", 5)
    assert selection.indices == [1, 2, 3]
    assert selection.truncated


@pytest.mark.parametrize("text", ["suffix(12)", "all &", "len%0==0", "(all", "all until x", "any"])
def test_bad_rule_expressions(text):
    with pytest.raises(ValueError):
        parse_rule(text)


def test_frequency_of_the_all_ones_stream():
    profile = frequency_profile(ConstantSource("1"), 100)
    assert all(profile.ratio(n) == 1 for n in range(1, 101))


def test_champernowne_frequencies_settle_near_one_half():
    report = stability_report(frequency_profile(ChampernowneSource(2), 100_000), 0.5, 0.05)
    assert abs(report.final_ratio - 0.5) < 0.05


def test_ville_stream_stays_above_one_half():
    report = stability_report(frequency_profile(ville_stream(), 1000))
    assert report.ville
    assert report.final_ratio == 0.5
    assert not stability_report(frequency_profile("0111", 4)).ville


def test_stability_report_fields():
    report = stability_report(frequency_profile("1100", 4), 0.5, 0.2)
    # ratios 1, 1, 2/3, 1/2
    assert report.max_excursion == 0.5
    assert report.last_exceedance == 2
    assert report.last_crossing == 4
