# src/delivery/literals.py
"""
Number literals accepted on the command line.

Decimals only, with an optional imaginary part written "a+bi": "3", "-0.5",
"1e-6", "2.5i", "-i", "1-2i". No expressions.
"""

import re

from src.errors import LiteralParseError
from src.evaluation.gamma_engine import as_complex, snap_integer

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"

_REAL = re.compile(rf"^[+-]?{_NUM}$")
_IMAG = re.compile(rf"^(?P<im>[+-]?(?:{_NUM})?)i$")
_COMPLEX = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?)i$")


def _imag_part(text: str) -> float:
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


def parse_literal(text: str) -> complex:
    """Parses a real or "a+bi" literal.

    Raises:
        LiteralParseError: If the text is not a literal of that grammar.
    """
    s = text.strip().replace("−", "-").replace(" ", "")
    try:
        if _REAL.match(s):
            return as_complex(float(s))
        m = _IMAG.match(s)
        if m:
            return as_complex(complex(0.0, _imag_part(m.group("im"))))
        m = _COMPLEX.match(s)
        if m:
            return as_complex(complex(float(m.group("re")), _imag_part(m.group("im"))))
    except (ValueError, OverflowError) as e:
        raise LiteralParseError(f"cannot parse number literal '{text}': {e}") from e
    raise LiteralParseError(f"cannot parse number literal '{text}' (expected a decimal or a+bi)")


def parse_integer(text: str) -> int:
    """Parses a literal that must be an integer, such as a lattice coordinate or a power.

    Raises:
        LiteralParseError: If the literal is not an integer.
    """
    s = text.strip().replace("−", "-")
    if re.fullmatch(r"[+-]?\d+", s):
        return int(s)
    m = snap_integer(parse_literal(s))
    if m is None:
        raise LiteralParseError(f"expected an integer, got '{text}'")
    return m


def parse_real(text: str) -> float:
    """Parses a literal that must be real (tolerances, deltas).

    Raises:
        LiteralParseError: If the literal has an imaginary part.
    """
    z = parse_literal(text)
    if z.imag != 0:
        raise LiteralParseError(f"expected a real number, got '{text}'")
    return z.real
