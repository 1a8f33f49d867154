"""Exception hierarchy shared across the package."""

from __future__ import annotations


class GirylabError(ValueError):
    """Base class for all domain errors raised by this package."""


class SpaceMismatchError(GirylabError):
    """Two values that must live on the same measurable space do not."""


class NotMeasurableError(GirylabError):
    """A set is outside the sigma-algebra, or a map fails measurability."""


class InvariantError(GirylabError):
    """A structural invariant was violated at construction time."""


class RejectionError(GirylabError):
    """A functional failed the measure-side admissibility checks.

    Carries a JSON-able ``witness`` naming the violated identity and the
    offending values, so rejections are reproducible and reportable.
    """

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class ActionSquareError(GirylabError):
    """A sequence-space action failed one of the monoid generator squares."""

    def __init__(self, message: str, generator: str, witness: dict):
        super().__init__(message)
        self.generator = generator
        self.witness = witness


class IngestionError(GirylabError):
    """Malformed JSON input; the message names the first violated invariant."""
