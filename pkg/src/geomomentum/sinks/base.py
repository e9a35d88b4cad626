from abc import ABC, abstractmethod
from typing import Any, Sequence, TextIO


class Sink(ABC):
    """Abstract base class for all output sinks.

    A sink wraps a text stream; the caller owns opening and closing it.
    """

    def __init__(self, stream: TextIO):
        self.stream = stream

    @abstractmethod
    def write_table(
        self,
        header: Sequence[str],
        rows: Sequence[Sequence[Any]],
        metadata: dict | None = None,
    ) -> None:
        """Write a table of rows under *header*."""

    @abstractmethod
    def write_document(self, doc: dict) -> None:
        """Write a single report document."""
