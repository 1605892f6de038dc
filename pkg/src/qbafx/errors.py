"""Exception hierarchy shared by every qbafx module."""


class QbafError(Exception):
    """Base class for all qbafx errors."""


class ValidationError(QbafError, ValueError):
    """A framework or report set violates a structural invariant."""


class DuplicateArgumentId(ValidationError):
    pass


class BadArgumentId(ValidationError):
    pass


class UnknownEndpoint(ValidationError):
    pass


class PolarityConflict(ValidationError):
    pass


class SelfLoop(ValidationError):
    pass


class BadBaseScore(ValidationError):
    pass


class DomainMismatch(ValidationError):
    pass


class UnknownArgument(ValidationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownEdge(ValidationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class IdCollision(ValidationError):
    pass


class InconsistentSource(ValidationError):
    """A source reports two different values for the same object."""


class TopicEqualsTarget(ValidationError):
    pass


class TargetMismatch(ValidationError):
    """An attribution report does not fit the framework it is rendered on."""


class ParseError(QbafError, ValueError):
    """Malformed input text. ``line`` and ``field`` locate the problem when known."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class TooLargeForExact(QbafError):
    """Exact Shapley enumeration refused because the player set is too large."""

    def __init__(self, players, cap):
        self.players = players
        self.cap = cap
        super().__init__(
            f"{players} players exceed the exact-enumeration cap of {cap}; "
            "use shapley_sampled instead"
        )


class NonConvergence(QbafError):
    """The fixed-point iteration hit its iteration cap.

    Carries the sup-norm change of the last iteration, the last iterate and a
    free-form ``context`` naming which solve failed (e.g. a coalition).
    """

    def __init__(self, tolerance, max_iterations, last_delta, last_iterate=None, context=None):
        self.tolerance = tolerance
        self.max_iterations = max_iterations
        self.last_delta = last_delta
        self.last_iterate = last_iterate
        self.context = context
        msg = (
            f"no convergence within {max_iterations} iterations: "
            f"last sup-norm delta {last_delta:.3e} > tolerance {tolerance:.3e}"
        )
        if context:
            msg += f" [{context}]"
        super().__init__(msg)

    def with_context(self, context):
        """Return a copy labelled with ``context`` (prepended to any existing label)."""
        label = context if not self.context else f"{context}; {self.context}"
        return NonConvergence(
            self.tolerance, self.max_iterations, self.last_delta, self.last_iterate, label
        )
