"""
Exception hierarchy shared by the engine, the config loader and the CLI.

The CLI maps these onto its exit codes, so anything raised from the engine
should be one of these rather than a bare ValueError.
"""

from __future__ import annotations

from typing import Iterable, List, Tuple


class BoostPetError(Exception):
    """Base class for every error the tool reports to the user."""


class ConfigError(BoostPetError):
    """Invalid configuration. Carries every problem found, not just the first."""

    def __init__(self, problems: Iterable[str]):
        self.problems: List[str] = list(problems)
        super().__init__("; ".join(self.problems) or "invalid configuration")


class DomainError(BoostPetError, ValueError):
    """Input outside the mathematical domain of an operation (e.g. m <= 0)."""


class OutOfRangeError(BoostPetError, ValueError):
    """Modulation index not covered by a device table."""

    def __init__(self, table: str, m: float, span: Tuple[float, float]):
        self.table = table
        self.m = m
        self.span = span
        super().__init__(
            f"m={m:g} is outside the {table} device table (supported span {span[0]:g} < m <= {span[1]:g})"
        )


class FeasibilityError(BoostPetError):
    """A topology cannot operate at the requested modulation index."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class EmptySweepError(BoostPetError):
    """No grid point of a sweep (or ranking window) was feasible."""
