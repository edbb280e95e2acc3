"""Exception hierarchy shared by all modules."""


class NormalFieldError(ValueError):
    """Base class for every error raised by this package."""


class ParameterDomainError(NormalFieldError):
    """Ellipsoid defining constants are non-finite or out of range."""


class DomainError(NormalFieldError):
    """Evaluation point or argument outside the supported domain."""


class PoleSingularityError(DomainError):
    """A longitude derivative was supplied exactly at a pole."""


class IllConditionedTransformError(DomainError):
    """The second-order coordinate transform is numerically singular."""


class DegenerateFieldError(DomainError):
    """The gravity vector vanishes."""


class GraphDegenerateError(DomainError):
    """The equipotential surface is not a graph over the (X, Y) plane."""


class AxisError(DomainError):
    """Quantity undefined on the rotation axis (east direction, parallel radius)."""


class SingularityError(DomainError):
    """Evaluation at a point-mass position."""


class OracleEvaluationError(NormalFieldError):
    """A finite-difference oracle saw a non-finite field value."""


class ParseError(NormalFieldError):
    """Malformed configuration or model file."""
