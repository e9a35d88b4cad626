import csv
import json

from geomomentum.sinks.base import Sink


def format_cell(value) -> str:
    """Floats at 17 significant digits so parsing and re-writing is the identity."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    if hasattr(value, "dtype") and value.dtype.kind == "f":
        return format(float(value), ".17g")
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


class CsvSink(Sink):
    """Comma-separated output with a header line and LF line endings.

    Metadata is not part of the CSV schema and is dropped.
    """

    def _writer(self):
        return csv.writer(self.stream, lineterminator="\n")

    def write_table(self, header, rows, metadata=None) -> None:
        writer = self._writer()
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])

    def write_document(self, doc: dict) -> None:
        writer = self._writer()
        writer.writerow(["key", "value"])
        for key, value in doc.items():
            writer.writerow([key, format_cell(value)])
