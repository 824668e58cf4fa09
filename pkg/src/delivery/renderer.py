# src/delivery/renderer.py
import json
import sys
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict, List, Union

import pandas as pd
from tabulate import tabulate

from src.delivery import config
from src.evaluation.gamma_engine import ExtendedValue

if TYPE_CHECKING:
    from src.delivery.commands import OutputRecord


def allow_long_integers() -> None:
    """Lifts the interpreter's limit on int <-> str conversion, where it has one.

    Exact lattice values are printed in full, whatever their number of digits.
    """
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)


def format_complex(z: Union[complex, float]) -> str:
    """Formats a number in the "a+bi" literal grammar with TEXT_DIGITS significant digits.

    Args:
        z: The number.

    Returns:
        A real-only string when the imaginary part is zero.
    """
    z = complex(z)
    # + 0.0 turns a negative zero into 0.0
    re_part, im_part = z.real + 0.0, z.imag + 0.0
    re_text = f"{re_part:.{config.TEXT_DIGITS}g}"
    if im_part == 0:
        return re_text
    sign = "-" if im_part < 0 else "+"
    return f"{re_text}{sign}{abs(im_part):.{config.TEXT_DIGITS}g}i"


def format_extended(value: ExtendedValue) -> str:
    """The text token of an extended value: exact integer, fraction, inf, or a complex number."""
    if value.is_infinite:
        return config.INFINITE_TOKEN
    if value.is_indeterminate:
        return config.INDETERMINATE_TOKEN
    if isinstance(value.exact, int):
        return str(value.exact)
    if isinstance(value.exact, Fraction):
        return str(value.exact)
    return format_complex(value.value)


def _json_line(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, allow_nan=False)


def _error_text(record: "OutputRecord") -> str:
    return f"error ({record.error_kind}): {record.message}\n"


def render_record(record: "OutputRecord", fmt: str) -> str:
    """Renders a command's output record for stdout.

    json: the JSON-lines stream (if any), then the record on one line.
    csv: the record's table; error records fall back to the JSON record.
    text: the command's text form, or a one-line error message.

    Args:
        record: The record returned by a command.
        fmt: One of config.FORMATS.

    Returns:
        The full stdout payload, ending in a newline.
    """
    if fmt not in config.FORMATS:
        raise ValueError(f"Unknown format '{fmt}'")

    if fmt == "json":
        lines: List[str] = [_json_line(item) for item in record.stream]
        lines.append(_json_line(record.to_dict()))
        return "\n".join(lines) + "\n"

    if fmt == "csv":
        if record.status != config.STATUS_OK or record.rows is None:
            return _json_line(record.to_dict()) + "\n"
        return render_csv(record.rows)

    if record.status != config.STATUS_OK:
        return _error_text(record)
    text = record.text or ""
    return text if text.endswith("\n") else text + "\n"


def render_csv(rows: pd.DataFrame) -> str:
    """CSV with a header row and LF line endings."""
    return rows.to_csv(index=False, lineterminator="\n")


def render_text_table(rows: pd.DataFrame) -> str:
    """Plain-text table of a DataFrame for terminal output."""
    return tabulate(
        rows.values.tolist(), headers=list(rows.columns), tablefmt="simple", disable_numparse=True
    )
