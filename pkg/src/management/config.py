# src/management/config.py

"""
Centralized numeric settings, read from the environment.
"""

import os
from typing import Callable, TypeVar
from dotenv import load_dotenv

# Determine the project root and load the .env file from there
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
load_dotenv(os.path.join(PROJECT_ROOT, '.env'))

T = TypeVar('T')


def _from_env(name: str, default: T, cast: Callable[[str], T]) -> T:
    """Reads a typed setting from the environment.

    Args:
        name: Environment variable name.
        default: Value used when the variable is unset or empty.
        cast: Conversion applied to the raw string.

    Returns:
        The converted value, or the default.

    Raises:
        ValueError: If the variable is set but cannot be converted.
    """
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError as e:
        raise ValueError(f"{name} has an invalid value {raw!r}. Please check your .env file.") from e


# --- INTEGER SNAPPING ---
# A float argument counts as an integer when it lies this close to one
# (real and imaginary parts). Shared by every module that dispatches on integrality.
SNAP_RADIUS: float = _from_env("BINOMIAL_SNAP_RADIUS", 1e-12, float)

# --- IDENTITY CHECKS ---
COMPLEX_TOL: float = _from_env("BINOMIAL_COMPLEX_TOL", 1e-9, float)
# Widens the tolerance of the delta-perturbed checks by (|n|+|k|+1)/|delta|
DELTA_CONDITIONING: float = _from_env("BINOMIAL_DELTA_CONDITIONING", 4e-15, float)

# --- SERIES ---
SERIES_REL_TOL: float = _from_env("BINOMIAL_SERIES_REL_TOL", 1e-12, float)
SERIES_MAX_TERMS: int = _from_env("BINOMIAL_SERIES_MAX_TERMS", 10**6, int)
SERIES_DPS: int = _from_env("BINOMIAL_SERIES_DPS", 40, int)
# Relative width of the |x| = |y| band that neither expansion accepts
BOUNDARY_REL_TOL: float = _from_env("BINOMIAL_BOUNDARY_REL_TOL", 1e-12, float)

# --- CONTINUITY PROBES ---
PROBE_TOL_SCALE: float = _from_env("BINOMIAL_PROBE_TOL_SCALE", 100.0, float)
PROBE_TOL_FLOOR: float = _from_env("BINOMIAL_PROBE_TOL_FLOOR", 1e-9, float)
# Below this error level a non-decreasing step counts as roundoff
PROBE_NOISE_FLOOR: float = _from_env("BINOMIAL_PROBE_NOISE_FLOOR", 1e-8, float)
# Allowed relative spread of |value|*delta over the last three samples
POLE_SIGNATURE_SPREAD: float = _from_env("BINOMIAL_POLE_SIGNATURE_SPREAD", 0.10, float)

# --- RUNS ---
DEFAULT_SEED: int = _from_env("BINOMIAL_DEFAULT_SEED", 0, int)
LOG_LEVEL: str = _from_env("BINOMIAL_LOG_LEVEL", "WARNING", str)
