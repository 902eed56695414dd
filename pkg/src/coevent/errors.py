"""Exception hierarchy shared by every module of the package."""


class CoeventError(Exception):
    """Base class for all errors raised by :mod:`coevent`."""


class LabelMismatch(CoeventError, ValueError):
    """Two objects that must share a label set do not."""


class SpaceMismatch(CoeventError, ValueError):
    """Two objects that must live on the same atom space do not."""


class UnknownLabel(CoeventError, KeyError):
    pass


class UndefinedConditional(CoeventError, ZeroDivisionError):
    """Conditioning on a co~event of certainty zero."""


class UndefinedPosterior(CoeventError, ZeroDivisionError):
    """The Bayes normaliser (certainty of the match co~event) is zero."""


class EmptySupport(CoeventError, ValueError):
    """No label with positive believability has a positive match probability."""


class SchemaError(CoeventError, ValueError):
    """A scenario document has missing, extra or mistyped fields."""


class ValidationError(CoeventError, ValueError):
    """A scenario document is well-formed but its values are inconsistent."""
