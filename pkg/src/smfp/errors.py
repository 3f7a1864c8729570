"""Exception types raised across the package."""

from __future__ import annotations


class SMFPError(Exception):
    """Base class for all package errors."""


class NonIntegralAtP(SMFPError, ValueError):
    """A rational coefficient has the prime in its denominator."""

    def __init__(self, message: str, key=None):
        super().__init__(message)
        self.key = key


class WeightMismatch(SMFPError, ValueError):
    pass


class InsufficientPrecision(SMFPError, ValueError):
    pass


class ParseError(SMFPError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotThetaDecomposable(SMFPError, ValueError):
    pass


class OddCharacteristic(SMFPError, ValueError):
    pass


class WeightInfeasible(SMFPError, ValueError):
    pass


class ScaleModulusClash(SMFPError, ValueError):
    pass


class NoSolution(SMFPError, ValueError):
    pass


class DomainMismatch(SMFPError, ValueError):
    pass
