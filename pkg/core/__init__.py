"""Core module for configuration and errors."""
from .config import RunConfig, get_settings, load_run_config, settings
from .errors import (
    BudgetInfeasibleError,
    InsufficientApproximationError,
    InvariantViolation,
    LengthMismatchError,
    MalformedPrefixError,
    NonTransitiveWitnessError,
    RandlabError,
    RuleViolationError,
    SourceIndexError,
    UnknownCodecError,
    ZeroMassError,
)

__all__ = [
    "RunConfig",
    "get_settings",
    "load_run_config",
    "settings",
    "RandlabError",
    "MalformedPrefixError",
    "BudgetInfeasibleError",
    "UnknownCodecError",
    "InsufficientApproximationError",
    "RuleViolationError",
    "SourceIndexError",
    "ZeroMassError",
    "NonTransitiveWitnessError",
    "LengthMismatchError",
    "InvariantViolation",
]
