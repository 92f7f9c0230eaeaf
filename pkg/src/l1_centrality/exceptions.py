"""
Exception hierarchy for L1 centrality analysis.
The CLI maps input errors to exit status 1 and numerical failures to 2.
"""

from typing import Optional, Tuple


class L1CentralityError(Exception):
    """Base class for all errors raised by this package."""


class GraphInputError(L1CentralityError, ValueError):
    """Invalid graph, multiplicity, or option input."""

    def __init__(
        self, message: str, line: Optional[int] = None, source: Optional[str] = None
    ) -> None:
        self.message = message
        self.line = line
        self.source = source
        location = ""
        if source is not None:
            location = f"{source}:"
        if line is not None:
            location += f"{line}:"
        super().__init__(f"{location} {message}" if location else message)


class DisconnectedGraphError(GraphInputError):
    """Raised when an operation needs a connected graph."""

    def __init__(self, pair: Tuple[str, str]) -> None:
        self.pair = pair
        super().__init__(
            f"graph is disconnected: no path between '{pair[0]}' and '{pair[1]}' "
            "(use --component largest to analyse the largest component)"
        )


class DatasetError(GraphInputError):
    """A published dataset is missing or does not match its published size."""


class LayoutInputError(GraphInputError):
    """Target plot requested for unsupported input."""


class NumericalError(L1CentralityError, ArithmeticError):
    """A computation hit an undefined quantity (e.g. zero total stress)."""
