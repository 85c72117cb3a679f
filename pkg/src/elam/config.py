"""Configuration management for elam."""

import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from dotenv import load_dotenv

# Load .env file if it exists
load_dotenv()


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


@dataclass
class Config:
    """Configuration settings for elam."""

    # Step budget shared by evaluation, beta-delta reduction, normalization and subtyping
    fuel: int = field(default_factory=lambda: _env_int("ELAM_FUEL", 10000))

    # Seeded chooser defaults
    seed: int = field(default_factory=lambda: _env_int("ELAM_SEED", 0))
    max_choice_depth: int = field(default_factory=lambda: _env_int("ELAM_MAX_CHOICE_DEPTH", 3))

    # Membership oracle bounds
    oracle_max_value_size: int = field(
        default_factory=lambda: _env_int("ELAM_ORACLE_MAX_VALUE_SIZE", 4)
    )
    oracle_max_trail_depth: int = field(
        default_factory=lambda: _env_int("ELAM_ORACLE_MAX_TRAIL_DEPTH", 1)
    )
    oracle_max_exists_width: int = field(
        default_factory=lambda: _env_int("ELAM_ORACLE_MAX_EXISTS_WIDTH", 10000)
    )

    # Deeply nested list terms recurse once per cons cell
    recursion_limit: int = field(default_factory=lambda: _env_int("ELAM_RECURSION_LIMIT", 20000))

    log_level: str = field(default_factory=lambda: os.getenv("ELAM_LOG_LEVEL", "WARNING"))

    def validate(self) -> None:
        """Validate that all numeric settings are usable."""
        for name in (
            "fuel",
            "max_choice_depth",
            "oracle_max_value_size",
            "oracle_max_trail_depth",
            "oracle_max_exists_width",
            "recursion_limit",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"Setting '{name}' must be at least 1, got {getattr(self, name)}")
        if logging.getLevelName(self.log_level.upper()) == f"Level {self.log_level.upper()}":
            raise ValueError(f"Unknown log level: {self.log_level}")

    def budget(self):
        """Build the oracle enumeration budget from the configured bounds."""
        from .oracle import EnumBudget

        return EnumBudget(
            max_value_size=self.oracle_max_value_size,
            max_trail_depth=self.oracle_max_trail_depth,
            max_exists_width=self.oracle_max_exists_width,
        )

    def apply_runtime_limits(self) -> None:
        """Raise the interpreter recursion limit to the configured value."""
        if sys.getrecursionlimit() < self.recursion_limit:
            sys.setrecursionlimit(self.recursion_limit)

    @classmethod
    def load(cls) -> "Config":
        """Load configuration from environment."""
        return cls()


# Global config instance
_config: Optional[Config] = None


def get_config() -> Config:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = Config.load()
    return _config
