import json

import numpy as np

from geomomentum.sinks.base import Sink


def _plain(value):
    """Convert numpy scalars and arrays to JSON-native values."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


class JSONSink(Sink):
    """Sink that writes one indented JSON document per call."""

    def _write_json(self, data: dict) -> None:
        json.dump(data, self.stream, indent=2, ensure_ascii=False, default=_plain)
        self.stream.write("\n")

    def write_table(self, header, rows, metadata=None) -> None:
        self._write_json(
            {
                "metadata": metadata or {},
                "rows": [dict(zip(header, row)) for row in rows],
            }
        )

    def write_document(self, doc: dict) -> None:
        self._write_json(doc)
