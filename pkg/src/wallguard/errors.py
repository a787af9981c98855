"""Exception hierarchy for the wallguard package."""


class WallguardError(Exception):
    """Base class for all wallguard errors."""


# -- corpus ---------------------------------------------------------------

class MalformedXml(WallguardError):
    """The corpus input is not well-formed XML in the expected schema."""


class UnknownClass(WallguardError):
    """A message carries a class attribute outside the five known labels."""


class DuplicateId(WallguardError):
    """An id collides with one that already exists."""


class CorpusTooSmall(WallguardError):
    """The corpus has too few labeled documents to split."""


# -- classifiers ----------------------------------------------------------

class EmptyTrainingSet(WallguardError):
    """Training was attempted on an empty document list."""


class NonPositiveAlpha(WallguardError):
    """The smoothing constant must be strictly positive."""


class NonPositiveLambda(WallguardError):
    """The SVM regularization strength must be strictly positive."""


class EmptyTestSet(WallguardError):
    """Evaluation was attempted on an empty test set."""


class VersionMismatch(WallguardError):
    """A model file was written by an incompatible format version."""


class CorruptModel(WallguardError):
    """A model file is truncated or structurally invalid."""


# -- policy / service -----------------------------------------------------

class InvalidPolicy(WallguardError):
    """A policy configuration violates its invariants."""


class WallNotFound(WallguardError):
    """No wall with the requested id exists."""


class MessageNotFound(WallguardError):
    """No stored message with the requested id exists."""


class NotPending(WallguardError):
    """A manager decision was attempted on a message that is not pending."""


class UserNotFound(WallguardError):
    """No profile exists for the requested user id."""


class NotPublished(WallguardError):
    """Deletion was attempted on a message that is not published."""


class CorruptEventLog(WallguardError):
    """The event log has an undecodable record before its final line."""
