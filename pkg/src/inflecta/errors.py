"""Exception hierarchy shared by all inflecta modules."""


class InflectaError(Exception):
    """Base class; the CLI maps subclasses of this to exit status 1."""


class MalformedCode(InflectaError, ValueError):
    pass


class NotSpherical(InflectaError):
    """The signed Gauss code has no realization on the sphere."""


class BadOuterFace(InflectaError, ValueError):
    pass


class InconsistentColoring(InflectaError):
    """A candidate cycle does not separate the faces into two classes."""


class Infeasible(InflectaError):
    pass


class Degenerate(InflectaError):
    """A sampled curve violates the genericity assumptions."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ConventionFailure(InflectaError):
    pass


class AmbiguousBitangent(InflectaError):
    pass


class IdentityViolation(InflectaError):
    def __init__(self, identity, message):
        super().__init__(f"{identity}: {message}")
        self.identity = identity
