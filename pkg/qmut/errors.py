"""Exception hierarchy shared by the library, the CLI and the app pages."""

from __future__ import annotations

from typing import Optional


class QuiverError(Exception):
    """Base class for every error raised by qmut."""


class QuiverArgumentError(QuiverError, ValueError):
    """Invalid argument: vertex index, sequence text, caps, empty inputs."""


class NumericRangeError(QuiverError, ArithmeticError):
    """A weight left the representable range."""

    def __init__(self, message: str, entry: str, step: Optional[int] = None):
        self.detail = message
        self.entry = entry
        self.step = step
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)

    def at_step(self, step: int) -> "NumericRangeError":
        return NumericRangeError(self.detail, self.entry, step)


class ContractViolation(QuiverError):
    """An operation was called outside its precondition."""


class CertificateError(QuiverError, AssertionError):
    """A guaranteed inequality failed while building a certificate."""


class StepBudgetExceeded(QuiverError):
    """A blowup ran out of its step budget before reaching its target."""

    def __init__(self, message: str, steps: int, achieved_norm: float):
        self.steps = steps
        self.achieved_norm = achieved_norm
        super().__init__(message)


class InvalidConfigurationError(QuiverError, ValueError):
    """Geometric data off the hyperboloid or sphere, or unrealizable."""


class ExportError(QuiverError, OSError):
    """Writing an export failed."""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"Could not write {path}: {reason}")
