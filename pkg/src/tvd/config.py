"""Tolerance configuration used by every detector.

Two thresholds with a deliberate gap between them drive all verdicts:
``tau_zero`` decides when a quantity counts as exactly zero and
``tau_violation`` decides when it counts as a established violation.
Values falling between the two land in a hysteresis band and never
produce a Violation verdict.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class Tolerances:
    tau_zero: float = 1e-9
    tau_violation: float = 1e-6
    tau_eig: float = 1e-8
    gap_tol: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("tau_zero", "tau_violation", "tau_eig", "gap_tol"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0.0):
                raise ConfigError(f"{name} must be a positive number, got {value!r}")
        if self.tau_zero >= self.tau_violation:
            raise ConfigError(
                f"tau_zero ({self.tau_zero}) must be below tau_violation "
                f"({self.tau_violation})"
            )

    def replace(self, **overrides: float) -> "Tolerances":
        return dataclasses.replace(self, **overrides)


DEFAULT_TOLERANCES = Tolerances()
