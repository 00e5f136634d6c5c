"""Exception hierarchy shared by all odoinv modules.

Every error raised on a user-facing code path derives from OdoError, so the
service layer and CLI can map any failure to a structured response whose
``error`` field is the class name.
"""


class OdoError(Exception):
    """Base class for all odoinv errors."""


# --- spec parsing ---------------------------------------------------------

class UnknownGroupKind(OdoError):
    pass


class NotDivisible(OdoError):
    pass


class NotStrictlyIncreasing(OdoError):
    pass


class BadDepth(OdoError):
    pass


# --- exact linear algebra -------------------------------------------------

class ImageNotContained(OdoError):
    pass


class DomainMismatch(OdoError):
    pass


class IllDefinedHomomorphism(OdoError):
    pass


# --- colimits ---------------------------------------------------------------

class NotStabilized(OdoError):
    pass


# --- odometer / homology / K-theory ----------------------------------------

class LevelOutOfRange(OdoError):
    pass


class TailRequired(OdoError):
    pass


class WrongGroupKind(OdoError):
    pass


class BudgetExceeded(OdoError):
    pass


# --- full groups ------------------------------------------------------------

class NotPartition(OdoError):
    pass


class LevelMismatch(OdoError):
    pass


class LevelTooSmall(OdoError):
    pass
