"""Exception types shared across the toolkit.

Every domain error derives from FicdetectError so callers (CLI, service)
can distinguish expected failures from bugs.
"""


class FicdetectError(Exception):
    """Base class for all domain errors."""


# -- corpus ---------------------------------------------------------------

class MissingStartMarker(FicdetectError):
    """A Gutenberg header was detected but no '*** START OF' marker found."""


class NoSentences(FicdetectError):
    """Text contains no full stop, so no excerpt can be cut from it."""


class EmptyInput(FicdetectError):
    """An operation that needs at least one element got none."""


class BalanceFailed(FicdetectError):
    """Length balancing could not bring the two classes within tolerance."""


class EmptyAfterFiltering(FicdetectError):
    """Outlier removal deleted every excerpt of one class."""


# -- features -------------------------------------------------------------

class EmptyVocabulary(FicdetectError):
    """No token survived tokenization of the training documents."""


# -- models ---------------------------------------------------------------

class SingleClassTraining(FicdetectError):
    """Training data contains only one label."""


class NonFiniteLoss(FicdetectError):
    """Training diverged; carries the epoch at which loss became non-finite."""

    def __init__(self, epoch: int, loss: float):
        super().__init__(f"non-finite loss {loss!r} at epoch {epoch}")
        self.epoch = epoch
        self.loss = loss


class VersionMismatch(FicdetectError):
    """Model file was written with an unsupported format version."""


class CorruptFile(FicdetectError):
    """Model file failed its checksum or structural validation."""


# -- text generation ------------------------------------------------------

class TransportError(FicdetectError):
    """Network-level failure talking to the generation endpoint."""

    def __init__(self, message: str, retryable: bool = True, status: int | None = None):
        super().__init__(message)
        self.retryable = retryable
        self.status = status


class AuthError(FicdetectError):
    """The endpoint rejected our credentials; retrying cannot help."""


class RefusalOrEmpty(FicdetectError):
    """The model returned an empty or placeholder response."""


class InsufficientOutput(FicdetectError):
    """Repeated generation requests did not yield enough usable text."""


# -- evaluation -----------------------------------------------------------

class TooSmall(FicdetectError):
    """A requested split would be empty."""


# -- judges ---------------------------------------------------------------

class InsufficientItems(FicdetectError):
    """Dataset cannot supply enough items of each label for the quiz."""


class IncompleteAnswers(FicdetectError):
    """A response sheet is missing answers; carries the missing item ids."""

    def __init__(self, missing: list[str]):
        super().__init__(f"missing answers for {len(missing)} item(s): {', '.join(missing)}")
        self.missing = missing


class ZeroVariance(FicdetectError):
    """All scores identical; the t statistic is undefined."""


class TooFewScores(FicdetectError):
    """A t-test needs at least two scores."""
