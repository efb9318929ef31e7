"""
Configuration settings for char1
"""

import os
from typing import List

import psutil
from dotenv import load_dotenv

load_dotenv()

VERSION = "0.1.0"


def _default_threads() -> int:
    cores = psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
    return max(1, int(cores))


# Workers
CHAR1_THREADS = int(os.getenv("CHAR1_THREADS", str(_default_threads())))

# Numerics
DEFAULT_TOLERANCE = float(os.getenv("CHAR1_TOLERANCE", "1e-9"))
MP_DPS = int(os.getenv("CHAR1_MP_DPS", "30"))
ENTROPY_GRID = int(os.getenv("CHAR1_ENTROPY_GRID", "1024"))
GOLDEN_ITERATIONS = 200
NEAR_INTEGER_RADIUS = 1e-3
F_ENTIRE_MAX_TERMS = 4000
ZETA_ANCHOR = 10

# Size caps
BRUTE_SEARCH_MAX_N = 10
FIELD_MAX_ORDER = 2 ** 16
WITT_PRIMES = (2, 3, 5, 7)
WITT_MAX_N = 3
WITT_MAX_DENOM_EXP = 8
SEMIFIELD_MAX_SIZE = 5
ETA_MAX_N = 10 ** 5
MANGOLDT_MAX_N = 10 ** 7
POINT_COUNT_MAX_P = 10 ** 6
MONOID_MAX_SIZE = 200
HOM_ENUMERATION_LIMIT = 10 ** 4

# File Paths
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.getenv("CHAR1_DATA_DIR", os.path.join(BASE_DIR, "data"))
OUTPUT_DIR = os.getenv("CHAR1_OUTPUT_DIR", os.path.join(BASE_DIR, "output"))
W5_TABLE_FIXTURE = os.path.join(DATA_DIR, "w5_table.csv")
CURVES_DIR = os.path.join(DATA_DIR, "curves")
SCHEMES_DIR = os.path.join(DATA_DIR, "schemes")

# Logging Configuration
LOG_LEVEL = os.getenv("CHAR1_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Exit codes
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ACCURACY = 2


# Environment Validation
def validate_config() -> List[str]:
    """Validate configuration and return list of errors."""
    errors = []

    if CHAR1_THREADS < 1:
        errors.append(f"CHAR1_THREADS must be positive, got {CHAR1_THREADS}")

    if not 0 < DEFAULT_TOLERANCE < 1:
        errors.append(f"CHAR1_TOLERANCE must lie in (0, 1), got {DEFAULT_TOLERANCE}")

    if MP_DPS < 15:
        errors.append(f"CHAR1_MP_DPS below double precision: {MP_DPS}")

    if ENTROPY_GRID < 8:
        errors.append(f"CHAR1_ENTROPY_GRID too coarse: {ENTROPY_GRID}")

    if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        errors.append(f"Unknown CHAR1_LOG_LEVEL: {LOG_LEVEL}")

    if not os.path.isdir(DATA_DIR):
        errors.append(f"Data directory not found: {DATA_DIR}")

    return errors
