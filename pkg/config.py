"""
kforms - Configuration Module

This module contains all configuration parameters for the κ-Minkowski
computer-algebra kernel: the deformation parameter, backend selection,
plane-wave mode grid, numerical tolerances, star-product grid defaults and
the sample counts used by the verification suites.

Conventions:
    - Metric η = diag(-1, 1, 1, 1, 1) on the five one-forms e0..e4
    - Orientation ε_01234 = +1
    - Plane waves e_k = exp(i k·x) exp(-i k0 x0), time ordered rightmost
"""

import os

from dotenv import load_dotenv

load_dotenv()


def _env_bool(name: str, default: bool = False) -> bool:
    """Parse environment variable into boolean flag."""
    return os.getenv(name, str(default)).strip().lower() in ("1", "true", "yes", "on")


def _env_list(name: str, default: list[str]) -> list[str]:
    """Parse comma-separated environment variable into list."""
    value = os.getenv(name)
    if not value:
        return default
    return [item.strip() for item in value.split(",") if item.strip()]


def _env_int(name: str, default: int | None) -> int | None:
    """Parse environment variable into an integer, falling back on bad input."""
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value.strip())
    except ValueError:
        return default


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return float(value.strip())
    except ValueError:
        return default


# =============================================================================
# ALGEBRA CONFIGURATION
# Deformation parameter and metric conventions
# =============================================================================
DEFAULT_BACKEND = os.getenv("KFORMS_BACKEND", "exact")
BACKENDS = ["exact", "wave"]

METRIC = (-1, 1, 1, 1, 1)
FORM_DIMENSION = 5

# Normal order of operator letters (Lorentz part)
LORENTZ_LETTERS = ["R1", "R2", "R3", "N1", "N2", "N3"]
MOMENTUM_LETTERS = ["P1", "P2", "P3", "P0", "E"]


# =============================================================================
# PLANE-WAVE BACKEND
# Mode keys are rounded to multiples of 2^-MODE_GRID_BITS
# =============================================================================
MODE_GRID_BITS = _env_int("KFORMS_MODE_GRID_BITS", 44)
WAVE_KAPPA = _env_float("KFORMS_WAVE_KAPPA", 1.0)


# =============================================================================
# TOLERANCES
# =============================================================================
TOLERANCES = {
    "numeric_exact_agreement": 1e-12,
    "series_agreement": 1e-10,
    "hermiticity": 1e-12,
    "eigenvalue": 1e-12,
    "conservation": 1e-10,
    "dispersion_residual": 1e-12,
    "commutative_limit": 1e-9,
    "twisted_cyclicity": 1e-5,
    "star_commutative_limit": 1e-4,
    "action_agreement": 1e-10,
}


# =============================================================================
# STAR-PRODUCT GRID (1+1 dimensions)
# =============================================================================
STARPROD_GRID = {
    "points": _env_int("KFORMS_GRID", 512),
    "half_width": _env_float("KFORMS_DOMAIN", 12.0),
    "kappa": 2.0,
    "packet_width": 1.5,
    # Boundary samples must fall below this fraction of the peak
    "decay_threshold": 1e-8,
    # Spectral bins below this fraction of the peak are skipped
    "spectral_cutoff": 1e-14,
    "twist_exponents": [0, 1, 2, 3],
}


# =============================================================================
# DISPERSION SOLVER
# =============================================================================
DISPERSION = {
    "initial_bracket": 1.0,
    "max_doublings": 200,
    "newton_steps": 4,
    "xtol": 1e-15,
}


# =============================================================================
# VERIFICATION SUITES
# Sample counts per randomized identity
# =============================================================================
SUITES = ["hopf", "calculus", "hodge", "integral", "starprod", "fieldtheory"]
# Suites run by "all"
ALL_SUITES = _env_list("KFORMS_SUITES", SUITES)
SUITE_SAMPLES = {
    "calculus_polynomials": _env_int("KFORMS_CALCULUS_SAMPLES", 200),
    "cartan_forms": _env_int("KFORMS_CARTAN_SAMPLES", 100),
    "wave_forms": 40,
    "onshell_configs": 50,
    "max_poly_degree": 4,
    "max_config_modes": 4,
}
DEFAULT_SEED = _env_int("KFORMS_SEED", None)
REPORT_SCHEMA = "kforms.verify/1"
REPORT_TIMING = _env_bool("KFORMS_TIMING", False)


# =============================================================================
# SYSTEM CONFIGURATION
# =============================================================================
LOG_LEVEL = os.getenv("KFORMS_LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
