"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class BSCommError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    #: short name printed by the CLI diagnostic
    kind = "BSCommError"

    def __init__(self, message):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.kind}: {self.message}"


class WordSyntaxError(BSCommError):
    kind = "WordSyntaxError"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ContextMismatch(BSCommError):
    kind = "ContextMismatch"


class NotInHn(BSCommError):
    """Matrix is not the image of a group element."""

    kind = "NotInHn"


class InfiniteIndex(BSCommError):
    kind = "InfiniteIndex"


class NotIsomorphic(BSCommError):
    kind = "NotIsomorphic"


class Inconsistent(BSCommError):
    """Generator images admit no conjugating matrix."""

    kind = "Inconsistent"


class InternalError(BSCommError):
    """A proven contract failed; indicates a bug rather than bad input."""

    kind = "InternalError"
