"""Configuration module for the numerical settings of a run.

The variables are set using environment variables, with default values provided.
Environment variables can be set in the shell before running the command, or in a `.env` file
in the working directory.
"""

import logging
import os
from typing import Any

from dotenv import load_dotenv

from q1dh._compat import get_level_names_mapping
from q1dh.quadrature import ToleranceSpec

load_dotenv()


class Config:
    """Configuration class for the quadrature and logging settings.

    Values are read when the instance is created, so a changed environment is picked up
    by a new instance.
    """

    def __init__(self) -> None:
        # Upper bound on integrand evaluations for a single integral.
        self.max_evaluations = int(os.getenv("Q1D_MAX_EVALS", "1000000"))

        # Default absolute and relative quadrature tolerances.
        # Both must be strictly positive.
        self.tolerance_absolute = float(os.getenv("Q1D_TOL_ABS", "1e-12"))
        self.tolerance_relative = float(os.getenv("Q1D_TOL_REL", "1e-10"))

        # Level of the CLI logger, one of the standard logging level names.
        self.log_level = os.getenv("Q1D_LOG_LEVEL", "INFO").upper()

        # Optional identifier copied into JSON reports.
        # Left unset, reports stay byte-identical between runs.
        self.run_id = os.getenv("Q1D_RUN_ID")

        if self.max_evaluations < 1:
            msg = "Q1D_MAX_EVALS must be at least 1"
            raise ValueError(msg)

        if self.tolerance_absolute <= 0 or self.tolerance_relative <= 0:
            msg = "Q1D_TOL_ABS and Q1D_TOL_REL must be greater than 0"
            raise ValueError(msg)

        if self.log_level not in get_level_names_mapping():
            msg = f"Q1D_LOG_LEVEL must be a logging level name, got '{self.log_level}'"
            raise ValueError(msg)

    def tolerance(self, absolute: float | None = None, relative: float | None = None) -> ToleranceSpec:
        """Return the quadrature tolerance, with optional overrides of the configured values."""
        return ToleranceSpec(
            absolute=self.tolerance_absolute if absolute is None else absolute,
            relative=self.tolerance_relative if relative is None else relative,
            max_evaluations=self.max_evaluations,
        )

    def dump(self) -> dict[str, Any]:
        """Dump the configuration as a dictionary."""
        return {key: value for key, value in vars(self).items() if not key.startswith("_")}
