"""
Exception hierarchy shared by all services
"""

from typing import List, Sequence, Tuple


class PolarFadeError(Exception):
    """Base class for every error raised by the library"""


class InvalidLengthError(PolarFadeError, ValueError):
    """A vector length is not a power of two or does not match the code"""


class DomainError(PolarFadeError, ValueError):
    """A channel or code parameter lies outside its admissible range"""


class InvalidArgumentError(PolarFadeError, ValueError):
    """Arguments are individually valid but inconsistent with each other"""


class PreconditionError(PolarFadeError):
    """An operation was called on data that lacks required state"""


class ConstraintError(PolarFadeError):
    """A derived quantity violates a model constraint (e.g. the input mean)"""


class ConfigError(PolarFadeError, ValueError):
    """
    Experiment configuration is invalid
    Every issue is a (location, message) pair, location being a dotted field path
    """

    def __init__(self, issues: Sequence[Tuple[str, str]]):
        self.issues: List[Tuple[str, str]] = list(issues)
        lines = [f"{loc or '<root>'}: {msg}" for loc, msg in self.issues]
        super().__init__("invalid configuration\n  " + "\n  ".join(lines))

    @property
    def locations(self) -> List[str]:
        return [loc for loc, _ in self.issues]


__all__ = [
    "PolarFadeError",
    "InvalidLengthError",
    "DomainError",
    "InvalidArgumentError",
    "PreconditionError",
    "ConstraintError",
    "ConfigError",
]
