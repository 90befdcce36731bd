"""
Command reports and their JSON and CSV renderings
"""

import csv
import dataclasses
import io
import json
import logging
import math
import os
import pathlib
import typing

import sympy


LOGGER = logging.getLogger(__name__)

# Default directory of relative output paths
OUT_DIR_VAR = 'MILNOR_OUT_DIR'

FORMATS = ('json', 'csv')

Value: typing.TypeAlias = typing.Any
Row: typing.TypeAlias = typing.Sequence[Value]

__all__ = ['CommandReport', 'to_json_value', 'resolve_output', 'FORMATS']


def to_json_value(value: Value) -> Value:
    """
    Converts a report value to plain JSON data. Exact numbers are written as
    strings ("-8", "sqrt(2)/2") so that they survive unchanged; non-finite
    floats become the strings "inf", "-inf" and "nan".
    """

    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value

    if isinstance(value, int):
        return value

    if isinstance(value, float):
        return value if math.isfinite(value) else repr(value)

    if isinstance(value, sympy.Basic):
        return str(value)

    if isinstance(value, dict):
        return {str(key): to_json_value(val) for key, val in value.items()}

    if isinstance(value, (list, tuple)):
        return [to_json_value(val) for val in value]

    if hasattr(value, 'as_tuple'):
        return to_json_value(value.as_tuple())

    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return to_json_value(dataclasses.asdict(value))

    raise TypeError(f"Cannot serialize {value!r}")


def _csv_cell(value: Value) -> Value:
    converted = to_json_value(value)
    if isinstance(converted, float):
        return repr(converted)

    if isinstance(converted, (list, dict)):
        return json.dumps(converted, sort_keys=True)

    return converted


@dataclasses.dataclass
class CommandReport:
    """
    Outcome of a command: summary values, and optionally a table with fixed
    columns (trajectory samples, sweep cells).
    """

    command: str
    parameters: dict[str, Value] = dataclasses.field(default_factory=dict)
    results: dict[str, Value] = dataclasses.field(default_factory=dict)
    columns: tuple[str, ...] = ()
    rows: list[Row] = dataclasses.field(default_factory=list)

    def to_dict(self) -> dict[str, Value]:
        """
        Returns the report as JSON data.
        """

        data: dict[str, Value] = {
            'command': self.command,
            'parameters': to_json_value(self.parameters),
            'results': to_json_value(self.results),
        }

        if self.columns:
            data['columns'] = list(self.columns)
            data['rows'] = to_json_value(self.rows)

        return data

    def to_json(self) -> str:
        """
        Renders the report as JSON with sorted keys.
        """

        return json.dumps(self.to_dict(), sort_keys=True, indent=2,
            allow_nan=False) + '\n'

    def to_csv(self) -> str:
        """
        Renders the table of the report as CSV, headers first. Reports
        without a table are written as key/value pairs.
        """

        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')

        if self.columns:
            writer.writerow(self.columns)
            for row in self.rows:
                writer.writerow([_csv_cell(val) for val in row])
        else:
            writer.writerow(('key', 'value'))
            for section in ('parameters', 'results'):
                for key, val in sorted(getattr(self, section).items()):
                    writer.writerow((f'{section}.{key}', _csv_cell(val)))

        return out.getvalue()

    def render(self, fmt: str) -> str:
        """
        Renders the report in one of FORMATS.
        """

        if fmt == 'json':
            return self.to_json()

        if fmt == 'csv':
            return self.to_csv()

        raise ValueError(f"Unknown format {fmt!r}")

    def write(self, fmt: str, out: str | None,
        stream: typing.TextIO) -> None:
        """
        Writes the rendered report to the file out, or to stream when out is
        None.
        """

        text = self.render(fmt)
        if out is None:
            stream.write(text)
            return

        path = resolve_output(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        LOGGER.info("Report written to %s", path)


def resolve_output(out: str) -> pathlib.Path:
    """
    Output path of a report. Relative paths are resolved in the directory
    named by MILNOR_OUT_DIR when it is set.
    """

    path = pathlib.Path(out)
    out_dir = os.environ.get(OUT_DIR_VAR)

    if out_dir and not path.is_absolute():
        return pathlib.Path(out_dir) / path

    return path
