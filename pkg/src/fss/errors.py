"""Exception hierarchy shared across the package."""

from __future__ import annotations


class FSSError(Exception):
    """Base class for every error raised by this package."""


class InputError(FSSError):
    """Bad user input: unreadable file, schema violation, bad literal."""


class ParseError(InputError):
    pass


class CycleSyntaxError(InputError):
    pass


class PipelineError(FSSError):
    """A failure inside the decomposition pipeline."""


class MixedFields(PipelineError):
    pass


class DivisionByZero(PipelineError, ZeroDivisionError):
    pass


class ShapeMismatch(PipelineError):
    pass


class ClosureOverflow(PipelineError):
    pass


class InconsistentDims(PipelineError):
    pass


class FieldTooSmall(PipelineError):
    pass


class NotAHomomorphism(PipelineError):
    pass


class RadicalNotNilpotent(PipelineError):
    pass


class NonSplitSimple(PipelineError):
    pass


class ImageNotFull(PipelineError):
    pass


class NoIdealIdentity(PipelineError):
    pass


class NotNilpotentDefect(PipelineError):
    pass


class LiftDiverged(PipelineError):
    pass


class DegenerateBasePoint(PipelineError):
    pass


class SectionSingular(PipelineError):
    pass


class MaxDepthExceeded(PipelineError):
    pass


class TermBlowup(PipelineError):
    pass


class GroupTooLarge(PipelineError):
    pass


class TooLargeToEnumerate(PipelineError):
    pass


class Mismatch(FSSError):
    """A recorded report disagrees with a fresh recomputation."""
