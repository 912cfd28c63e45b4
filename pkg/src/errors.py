"""Exception types raised by the race engine."""

from typing import Optional


class RaceError(Exception):
    """Base class for computation failures that are not argument errors"""


class ZeroCountError(RaceError):
    """Zero count for a character falls outside the admissible window"""

    def __init__(self, label: str, found: int, lower: float, upper: float):
        self.label = label
        self.found = found
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"Zero count {found} for {label} outside window [{lower:.1f}, {upper:.1f}]"
        )


class ZeroFileError(RaceError):
    """Malformed or inconsistent zero file"""

    def __init__(self, path: str, message: str, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = f"{path}:{line}" if line is not None else path
        super().__init__(f"{location}: {message}")


class InsufficientZeroDataError(RaceError):
    """Zero data does not reach the required height"""


class PrecisionError(RaceError):
    """Requested error target cannot be reached"""


class MethodPreconditionError(RaceError):
    """Density method requested outside its range of validity"""
