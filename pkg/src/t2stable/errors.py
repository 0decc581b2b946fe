"""Exception types raised across the package."""


class T2Error(Exception):
    """Base class for all library errors."""


class InputError(T2Error):
    """Malformed user input (files, literals, references)."""


class NonAdmissibleRelations(T2Error):
    """A relation has a term of length < 2."""


class BoundTooSmall(T2Error):
    """Some path of the nilpotency-bound length survives modulo the relations."""


class AlgebraMismatch(T2Error):
    """Modules over different algebras were combined."""


class NotAModuleMap(T2Error):
    """A matrix fails the intertwining identity."""


class FieldTooSmallForSplit(T2Error):
    """Deterministic idempotent search failed to decide decomposability."""


class NotGorenstein(T2Error):
    """Injective dimension exceeded the cap on some side."""


class NotFrobeniusClosed(T2Error):
    """An explicit generator list is not closed under (co)syzygies."""

    def __init__(self, message, generator=None, witness=None):
        super().__init__(message)
        self.generator = generator
        self.witness = witness


class NoAdmissibleMono(T2Error):
    """No mono from a member into a projective with member cokernel exists."""


class NotSurjective(T2Error):
    pass


class NotInjective(T2Error):
    pass


class NotMember(T2Error):
    """A module is not an object of the Frobenius context."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ContextMismatch(T2Error):
    pass


class NotGorensteinContext(T2Error):
    pass


class StabilizationFailed(T2Error):
    """The left cocycle never became a member within the allowed number of syzygies."""


class LiftFailed(T2Error):
    """A lifting or extension problem that should be solvable had no solution."""
