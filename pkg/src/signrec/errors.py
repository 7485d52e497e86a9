"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SignRecError(Exception):
    """Base class for all errors raised by this package."""


class WrongArity(SignRecError):
    """A hand does not have exactly 21 joints, or a point is not a 3-vector."""


class NonFiniteCoordinate(SignRecError):
    """A landmark coordinate is NaN or infinite."""

    def __init__(self, joint: int, message: str | None = None):
        self.joint = joint
        super().__init__(message or f"non-finite coordinate at joint {joint}")


class EmptySequence(SignRecError):
    """A landmark sequence has no frames."""


class ParseError(SignRecError):
    """A file could not be parsed at all (bad JSON, bad number, ...)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(SignRecError):
    """A file parsed but a record does not match the expected schema."""

    def __init__(self, message: str, record: int | str | None = None):
        self.record = record
        if record is not None:
            message = f"record {record}: {message}"
        super().__init__(message)


class DegenerateFrame(SignRecError):
    """The palm geometry cannot support a hand coordinate frame."""


class ZeroPalmVector(DegenerateFrame):
    """Wrist-to-hinge vector has (near-)zero length."""


class CollinearPalm(DegenerateFrame):
    """Wrist and the two palm hinges are (near-)collinear."""


class NotNormalized(SignRecError):
    """A confidence vector does not sum to 1 within tolerance."""


class NegativeProbability(SignRecError):
    """A confidence vector has a negative entry."""


class LengthMismatch(SignRecError):
    """A feature block does not have its declared length."""


class NonFiniteActivation(SignRecError):
    """A classifier produced non-finite logits (non-finite inputs)."""


class DimensionMismatch(SignRecError):
    """Model and input dimensions do not agree."""


class EmptyClass(SignRecError):
    """A training set has a class with no examples."""


class DivergenceDetected(SignRecError):
    """Training loss became non-finite."""


class EmptyEvalSet(SignRecError):
    """evaluate() was called with no samples."""


class ClassTooSmall(SignRecError):
    """A class has too few videos to be split into train and test."""


class InvalidSpec(SignRecError):
    """A synthetic dataset specification is inconsistent."""


class ConfigError(SignRecError):
    """A pipeline configuration file or value is invalid."""
