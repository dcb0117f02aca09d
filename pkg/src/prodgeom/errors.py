"""Exception types shared across the package."""


class ProdgeomError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ProdgeomError):
    """A point lies outside the domain of a function or operation."""


class ZeroGradientError(DomainError):
    """A first partial derivative that must be nonzero vanished at the point."""


class SpecError(ProdgeomError):
    """An operation received a function spec of the wrong kind."""


class ParseError(ProdgeomError):
    """Malformed spec text: bad JSON, unknown fields, wrong field types."""


class ValidationError(ProdgeomError):
    """A parameter violates its declared constraint."""


class NumericalError(ProdgeomError):
    """A numerical procedure failed (overflow, stencil left the domain)."""


class HicksUndefined(ProdgeomError):
    """The Hicks elasticity denominator vanishes at this point and pair."""


class AllenUndefined(ProdgeomError):
    """The bordered Hessian is singular, so Allen elasticity is undefined."""
