import json

from geomomentum.sinks.base import Sink


def _cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".6g")
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _is_record_list(value) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(v, dict) for v in value)


def align_columns(headers: dict[str, str], rows: list[dict]) -> str:
    """Left-justified columns under a rule line; *headers* maps key -> title."""
    col_order = list(headers.keys())
    widths = {col: len(headers[col]) for col in col_order}
    for row in rows:
        for col in col_order:
            widths[col] = max(widths[col], len(str(row.get(col, ""))))

    header_line = "  ".join(headers[col].ljust(widths[col]) for col in col_order)
    separator = "  ".join("\u2500" * widths[col] for col in col_order)

    lines = [header_line.rstrip(), separator]
    for row in rows:
        line = "  ".join(str(row.get(col, "")).ljust(widths[col]) for col in col_order)
        lines.append(line.rstrip())
    return "\n".join(lines)


class TextSink(Sink):
    """Human-readable aligned output."""

    def write_table(self, header, rows, metadata=None) -> None:
        if metadata:
            for key, value in metadata.items():
                self.stream.write(f"# {key}: {_cell(value)}\n")
        headers = {col: col for col in header}
        table_rows = [{col: _cell(v) for col, v in zip(header, row)} for row in rows]
        self.stream.write(align_columns(headers, table_rows) + "\n")

    def write_document(self, doc: dict) -> None:
        rows = []
        for key, value in doc.items():
            if _is_record_list(value):
                continue
            rows.append({"key": key, "value": _cell(value)})
        self.stream.write(align_columns({"key": "key", "value": "value"}, rows) + "\n")
        for key, value in doc.items():
            if _is_record_list(value):
                columns = list(value[0].keys())
                self.stream.write(f"\n{key}:\n")
                table_rows = [{c: _cell(item.get(c, "")) for c in columns} for item in value]
                self.stream.write(align_columns({c: c for c in columns}, table_rows) + "\n")
