"""Domain error types shared across the toolkit.

Everything raised on purpose by this package derives from MissionError, so
the command line can map domain failures to exit code 1 with a stable
"<ErrorName>: <detail>" line on stderr.  Genuine usage errors (bad flags,
out-of-range arguments) stay ValueError/SystemExit and are not wrapped.
"""


class MissionError(Exception):
    """Base class for all domain errors raised by this package."""


class DegenerateKernel(MissionError):
    """Transition kernel whose decay rate has magnitude 1.

    The closed forms divide by (1 - rate); the two fully deterministic
    kernels (never-leave-state and always-alternate) are out of scope.
    """


class InsufficientData(MissionError):
    """Outcome log has no observed transition out of one of the two states."""


class SealedLedger(MissionError):
    """Append attempted on a ledger that is sealed or no longer live."""


class TimestampRegression(MissionError):
    """Append attempted with a timestamp earlier than the previous entry's."""


class MalformedFile(MissionError):
    """A ledger, scenario, or prediction file violates its documented format."""


class TamperedLedger(MissionError):
    """Replay refused because the ledger hash chain does not verify."""

    def __init__(self, broken_at: int):
        super().__init__(f"hash chain broken at entry {broken_at}")
        self.broken_at = broken_at


class InvalidScenario(MissionError):
    """Mission scenario failed semantic validation."""


class IoError(MissionError):
    """Filesystem failure while writing a dataset or ledger."""


class LengthMismatch(MissionError):
    """Paired label/prediction sequences differ in length."""


class EmptyInput(MissionError):
    """Metric requested over zero samples."""


class EmptyMatrix(MissionError):
    """Confusion matrix with all four counts zero."""


class SingleClass(MissionError):
    """Ranking metric requested but only one class is present."""


class BadFoldCount(MissionError):
    """Fold count outside 2 <= k <= n."""
