from geomomentum.sinks.base import Sink
from geomomentum.sinks.csv_file import CsvSink
from geomomentum.sinks.json_file import JSONSink
from geomomentum.sinks.text import TextSink

SINKS: dict[str, type[Sink]] = {
    "csv": CsvSink,
    "json": JSONSink,
    "text": TextSink,
}


def make_sink(fmt: str, stream) -> Sink:
    try:
        cls = SINKS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(SINKS)}") from None
    return cls(stream)


__all__ = ["CsvSink", "JSONSink", "SINKS", "Sink", "TextSink", "make_sink"]
