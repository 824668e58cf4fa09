# tests/helpers.py
from typing import List


def away_from_integers(s: complex, gap: float) -> bool:
    return abs(s - round(s.real)) >= gap


def away_from_poles(args: List[complex], gap: float) -> bool:
    """True when every argument is at least `gap` from the nonpositive integers."""
    return all(abs(a - min(0, round(a.real))) >= gap for a in args)
