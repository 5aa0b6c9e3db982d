"""Mises-Wald-Church and Kolmogorov-Loveland place selection."""
from .dsl import parse_rule
from .engines import select_kl, select_mwc
from .frequency import frequency_profile, stability_report, ville_stream
from .rules import (
    RULE_LIBRARY,
    KlRule,
    MwcRule,
    after_two_ones,
    after_zero,
    even_positions,
    lift_mwc,
    ones_majority,
    reverse_window,
    select_all,
)

__all__ = [
    "RULE_LIBRARY",
    "KlRule",
    "MwcRule",
    "after_two_ones",
    "after_zero",
    "even_positions",
    "frequency_profile",
    "lift_mwc",
    "ones_majority",
    "parse_rule",
    "reverse_window",
    "select_all",
    "select_kl",
    "select_mwc",
    "stability_report",
    "ville_stream",
]
