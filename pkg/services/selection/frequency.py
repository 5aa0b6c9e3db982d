"""Relative-frequency profiles and their stability."""
from __future__ import annotations

from typing import Union

import numpy as np

from models import FrequencyProfile, StabilityReport
from services.sources_service import BitSource, PeriodicSource, take_prefix
from utils.bitpack import bits_to_array


def frequency_profile(seq: Union[str, BitSource], horizon: int) -> FrequencyProfile:
    bits = take_prefix(seq, horizon)
    if not bits:
        return FrequencyProfile(ones=[])
    return FrequencyProfile(ones=np.cumsum(bits_to_array(bits), dtype=np.int64).tolist())


def stability_report(profile: FrequencyProfile, p: float = 0.5, eps: float = 0.05) -> StabilityReport:
    """Excursions of f_n / n around p up to the horizon, plus the Ville flag (f_n / n >= 1/2 for all n)."""
    if profile.horizon == 0:
        raise ValueError("empty profile")
    n = np.arange(1, profile.horizon + 1)
    ones = np.asarray(profile.ones, dtype=np.int64)
    ratios = ones / n
    offsets = ratios - p
    excursions = np.abs(offsets)

    signs = np.sign(offsets)
    crossings = np.flatnonzero((signs[1:] != signs[:-1]) | (signs[1:] == 0)) + 2
    exceedances = np.flatnonzero(excursions > eps) + 1
    return StabilityReport(
        horizon=profile.horizon,
        p=p,
        eps=eps,
        final_ratio=float(ratios[-1]),
        max_excursion=float(excursions.max()),
        last_crossing=int(crossings[-1]) if len(crossings) else None,
        last_exceedance=int(exceedances[-1]) if len(exceedances) else None,
        ville=bool(np.all(2 * ones >= n)),
    )


def ville_stream() -> PeriodicSource:
    """1 0 1 0 ...: f_n / n >= 1/2 at every n."""
    return PeriodicSource("10")
