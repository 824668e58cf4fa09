# src/delivery/config.py
from typing import Dict, List, Tuple

# --- EXIT CODES ---
EXIT_OK: int = 0
EXIT_FAILURE: int = 1  # Unexpected failure (orchestrator, unclassified errors)
EXIT_USAGE: int = 2  # Usage, parse and precondition errors
EXIT_OVERFLOW: int = 3
EXIT_NON_CONVERGENT: int = 4

STATUS_OK: str = "ok"
STATUS_ERROR: str = "error"

# --- OUTPUT FORMATS ---
FORMATS: Tuple[str, ...] = ("json", "csv", "text")

# Format used when --format is not given
DEFAULT_FORMATS: Dict[str, str] = {
    "eval": "text",
    "table": "csv",
    "verify": "json",
    "expand": "text",
    "probe": "text",
}

# Reserved token for the pole value of the extended definition.
# Never used for overflow, which is an error record instead.
INFINITE_TOKEN: str = "inf"
INDETERMINATE_TOKEN: str = "indeterminate"

# Significant digits for complex numbers in text output
TEXT_DIGITS: int = 12

# --- TABLE SETTINGS ---
TABLE_HEADER: List[str] = ["n", "k", "value"]
MAX_TABLE_CELLS: int = 10**7

# --- VERIFY SETTINGS ---
DEFAULT_VERIFY_WINDOW: Tuple[int, int] = (-16, 16)
DEFAULT_DELTA: float = 1e-6
DEFAULT_SAMPLE_RADIUS: float = 10.0

# --- PROBE SETTINGS ---
DEFAULT_DELTAS: Tuple[float, ...] = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7)
