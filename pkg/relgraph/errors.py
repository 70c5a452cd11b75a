"""Exception hierarchy shared by the library and the CLI."""
from typing import Optional

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


class RelgraphError(Exception):
    """Base class for every error raised by relgraph."""


class InvalidParameter(RelgraphError, ValueError):
    """A parameter is out of range or inconsistent with another one."""


class UnsupportedInput(RelgraphError, ValueError):
    """The input graph is of a kind the operation does not handle."""


class PreconditionError(RelgraphError):
    def __init__(self, message: str, item: object = None):
        super().__init__(message)
        self.item = item


class SearchBudgetExhausted(RelgraphError):
    """A search ran out of its node budget (or a size guard tripped) before deciding."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class FormatError(RelgraphError):
    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class InvariantViolation(RelgraphError):
    """Two computations that must agree returned different answers."""


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, SearchBudgetExhausted):
        return EXIT_BUDGET
    return EXIT_INPUT_ERROR
