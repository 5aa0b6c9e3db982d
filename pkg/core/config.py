"""Run configuration using pydantic-settings."""
from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional

from pydantic import PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict


class RunConfig(BaseSettings):
    """Settings loaded from defaults, a flat key=value file and RANDLAB_* variables."""

    model_config = SettingsConfigDict(
        env_prefix="RANDLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Reference machine budgets
    max_len: PositiveInt = 20
    step_budget: PositiveInt = 100_000
    max_output_bits: PositiveInt = 65_536

    # Test battery and Monte-Carlo
    battery: Literal["default", "full"] = "default"
    seed: int = 0
    trials: PositiveInt = 100
    axiom_max_n: PositiveInt = 16

    # Calibration constants for the finite-string bounds (c, c1)
    calibration_c: float = 1.0
    calibration_c1: float = 8.0

    # Execution
    workers: PositiveInt = 1
    log_level: str = "INFO"
    deterministic: bool = False

    # Paths and formats
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    artifact_path: Optional[Path] = None
    bit_format: Literal["ascii", "packed"] = "ascii"

    def to_env_text(self) -> str:
        """Render the config as the flat key=value file it can be loaded from."""
        lines = []
        for name, value in self.model_dump().items():
            if value is None:
                continue
            lines.append(f"{self.model_config['env_prefix']}{name.upper()}={value}")
        return "\n".join(lines) + "\n"


def load_run_config(path: Optional[Path] = None, **overrides) -> RunConfig:
    """Load a config file (if any) and apply flag overrides on top."""
    if path is not None and not Path(path).is_file():
        raise ValueError(f"config file {path} not found")
    config = RunConfig(_env_file=path) if path is not None else RunConfig()
    updates = {key: value for key, value in overrides.items() if value is not None}
    if updates:
        config = RunConfig.model_validate({**config.model_dump(), **updates})
    return config


@lru_cache()
def get_settings() -> RunConfig:
    """Get cached settings instance."""
    return RunConfig()


settings = get_settings()
