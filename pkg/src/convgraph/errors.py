"""Exception hierarchy.

Two broad families matter for the CLI exit codes: DataError (bad or
insufficient input, exit 2) and NumericalError (a computation failed or
produced garbage, exit 3). Usage errors are handled by the CLI itself.
"""

from __future__ import annotations


class ConvGraphError(Exception):
    """Base class for all package errors."""


class DataError(ConvGraphError):
    """Input data is malformed, inconsistent or insufficient."""


class NumericalError(ConvGraphError):
    """A numerical routine failed or met a degenerate input."""


class ParseError(DataError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateId(DataError):
    def __init__(self, message_id: str):
        super().__init__(f"duplicate message id {message_id!r}")
        self.message_id = message_id


class InsufficientData(DataError):
    def __init__(self, label: str, requested: int, available: int):
        super().__init__(
            f"need {requested} messages labeled {label!r} but only "
            f"{available} are usable"
        )
        self.label = label
        self.requested = requested
        self.available = available


class TargetNotFound(DataError):
    def __init__(self, message_id: str):
        super().__init__(f"targeted message {message_id!r} not in stream")
        self.message_id = message_id


class UndefinedMeasure(DataError):
    def __init__(self, name: str):
        super().__init__(f"unknown topological measure {name!r}")
        self.name = name


class EmptyVocabulary(DataError):
    """No tokens survive min_count filtering."""


class LengthMismatch(DataError):
    """Paired vectors have different lengths."""


class DatasetTooSmall(DataError):
    """Fewer than the minimum items per class for the split plan."""


class SingleClassTraining(DataError):
    """Training data contains only one class."""


class IdentityMismatch(DataError):
    """Two representations do not describe the same items."""


class IoError(DataError):
    """A result file could not be read or written."""


class SpectralError(NumericalError):
    """Eigendecomposition or a derived spectral quantity failed."""


class DegenerateMatrix(NumericalError):
    """A factorization target is all-zero or otherwise unusable."""


class NonFiniteFeature(NumericalError):
    """A feature matrix contains NaN or infinity."""
