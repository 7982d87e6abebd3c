"""Exception hierarchy shared by every mts1 module."""


class MTSError(Exception):
    """Base class for all errors raised by mts1."""


# -- model ---------------------------------------------------------------

class NonMonotonicTimestamp(MTSError, ValueError):
    pass


class RangeViolation(MTSError, ValueError):
    pass


class EmptySeries(MTSError, ValueError):
    pass


# -- codec ---------------------------------------------------------------

class HeaderError(MTSError):
    pass


class BadMagic(HeaderError):
    pass


class UnsupportedVersion(HeaderError):
    pass


class MalformedHeader(HeaderError):
    pass


class FrameError(MTSError):
    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class TruncatedFrame(FrameError):
    pass


class MalformedFrame(FrameError):
    pass


class SequenceGap(MTSError):
    """Raised when frame sequence numbers skip.

    ``prefix`` holds the records decoded before the gap, so callers can keep
    the recoverable part of the stream.
    """

    def __init__(self, expected: int, got: int, offset: int, prefix):
        super().__init__(
            f"sequence gap at byte {offset}: expected seq {expected}, got {got} "
            f"({len(prefix.records)} records recovered)"
        )
        self.expected = expected
        self.got = got
        self.offset = offset
        self.prefix = prefix


class NoFullFrameAhead(MTSError):
    pass


class AccuracyViolation(MTSError):
    pass


# -- baselines / metrics -------------------------------------------------

class EncodingFailure(MTSError):
    pass


class UnknownFormat(MTSError, ValueError):
    pass


class DivisionByZeroBaseline(MTSError, ZeroDivisionError):
    pass


class EmptyInput(MTSError, ValueError):
    pass


# -- simkit --------------------------------------------------------------

class SpillCorruption(MTSError):
    pass


class GraphError(MTSError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DisconnectedGraph(GraphError):
    pass
