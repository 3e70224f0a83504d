"""Runtime settings."""

import os
from dataclasses import dataclass
from typing import Mapping, Optional

DEBUG_ENV = "CABLE_CONE_DEBUG"
_TRUTHY = {"1", "true", "yes", "on"}


@dataclass
class AppSettings:
    debug: bool = False

    # Standardization
    max_standardize_passes: int = 64

    # Local equivalence
    search_ceiling: int = 20000
    exponent_bound: int = 6

    # Sweeps
    jobs: int = 1

    # Extra towers added on both sides of the default window
    window_padding: int = 0

    @staticmethod
    def from_env(env: Optional[Mapping[str, str]] = None) -> "AppSettings":
        if env is None:
            env = os.environ

        debug = env.get(DEBUG_ENV, "").strip().lower() in _TRUTHY
        return AppSettings(debug=debug)
