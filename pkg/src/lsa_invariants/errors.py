"""Exception hierarchy shared by every module of the package."""


class InvariantError(Exception):
    """Base class for all errors raised by :mod:`lsa_invariants`."""


class NonSquareError(InvariantError, ValueError):
    pass


class SizeCapExceeded(InvariantError, ValueError):
    """A symbolic computation was requested above its configured size cap."""


class DimensionMismatch(InvariantError, ValueError):
    pass


class ContextEqualsTarget(InvariantError, ValueError):
    """The context column ``n`` must differ from the target column ``j``."""


class DimensionTooSmall(InvariantError, ValueError):
    pass


class NotBottlenecked(InvariantError, ValueError):
    """Low-rank minors need an attention dimension strictly below ``d``."""


class DegreeMismatch(InvariantError, ValueError):
    pass


class IndexOutOfRange(InvariantError, ValueError):
    pass


class DependentLineVectors(InvariantError, ValueError):
    pass


class VariableMismatch(InvariantError, ValueError):
    """An invariant mentions variables that do not belong to the shape."""


class UnknownExample(InvariantError, KeyError):
    pass


class ParseError(InvariantError, ValueError):
    pass
