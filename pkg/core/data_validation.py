"""
Input validation module for char1

This module checks external inputs (scheme and curve JSON files, numeric
command-line options) before they reach the core, and makes sure the data
and output directories are usable.
"""

import os
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from core.storage import ensure_directory_exists, load_json_file, read_csv_rows
from core.arith import weierstrass_discriminant
from core.errors import Char1Error

# Initialize logger
logger = logging.getLogger(__name__)

Result = Tuple[bool, List[str]]


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_scheme_data(data: Any) -> Result:
    """
    Validate SchemeData JSON: ``{"points": [{"rank": k, "torsion": [m, ...]}, ...]}``.

    Args:
        data: Parsed JSON value

    Returns:
        (ok, list of problems)
    """
    errors = []
    if not isinstance(data, dict):
        return False, ["scheme data must be a JSON object"]
    points = data.get("points")
    if not isinstance(points, list):
        return False, ["scheme data needs a 'points' list"]
    if not points:
        errors.append("scheme has no points")
    for k, entry in enumerate(points):
        if not isinstance(entry, dict):
            errors.append(f"point {k} is not an object")
            continue
        rank = entry.get("rank")
        if not _is_int(rank) or rank < 0:
            errors.append(f"point {k}: rank must be a non-negative integer, got {rank!r}")
        torsion = entry.get("torsion", [])
        if not isinstance(torsion, list):
            errors.append(f"point {k}: torsion must be a list of orders")
            continue
        for m in torsion:
            if not _is_int(m) or m < 1:
                errors.append(f"point {k}: torsion orders must be positive integers, got {m!r}")
    return not errors, errors


def validate_curve_data(data: Any) -> Result:
    """
    Validate curve JSON: ``{"a": [a1, a2, a3, a4, a6]}`` with non-zero discriminant.

    Args:
        data: Parsed JSON value

    Returns:
        (ok, list of problems)
    """
    if not isinstance(data, dict):
        return False, ["curve data must be a JSON object"]
    a = data.get("a")
    if not isinstance(a, list) or len(a) != 5:
        return False, ["curve needs 'a': a list of five integers [a1, a2, a3, a4, a6]"]
    errors = [f"a[{k}] = {v!r} is not an integer" for k, v in enumerate(a) if not _is_int(v)]
    if errors:
        return False, errors
    if weierstrass_discriminant(*a) == 0:
        errors.append(f"singular Weierstrass model {tuple(a)}")
    return not errors, errors


def validate_prime_option(name: str, value: int, allowed: Optional[Sequence[int]] = None) -> Result:
    """Check a numeric option that must be a prime, optionally from an allowed list."""
    errors = []
    if not _is_int(value) or value < 2 or not sympy.isprime(value):
        errors.append(f"--{name} must be a prime, got {value!r}")
    elif allowed is not None and value not in allowed:
        errors.append(f"--{name} must be one of {tuple(allowed)}, got {value}")
    return not errors, errors


def validate_range(name: str, value: Any, low: float, high: float) -> Result:
    """Check low <= value <= high."""
    if value is None or not low <= value <= high:
        return False, [f"--{name} must lie in [{low}, {high}], got {value!r}"]
    return True, []


def initialize_data_directories(config) -> bool:
    """
    Make sure the data directory exists and the output directory can be created.

    Args:
        config: Configuration module

    Returns:
        True if successful, False otherwise
    """
    try:
        if not os.path.isdir(config.DATA_DIR):
            logger.error(f"Data directory not found: {config.DATA_DIR}")
            return False
        ensure_directory_exists(os.path.join(config.OUTPUT_DIR, ""))
        return True
    except OSError as e:
        logger.error(f"Error preparing directories: {e}")
        return False


def validate_data_files(config) -> Dict[str, bool]:
    """
    Validate the shipped fixtures.

    Args:
        config: Configuration module

    Returns:
        Dictionary with validation results for each fixture
    """
    results = {}

    try:
        rows = read_csv_rows(config.W5_TABLE_FIXTURE)
        results["w5_table"] = bool(rows) and {"alpha_num", "alpha_den", "series"} <= set(rows[0])
    except Char1Error as e:
        logger.error(f"Witt table fixture unreadable: {e}")
        results["w5_table"] = False

    for directory, validator, prefix in ((config.CURVES_DIR, validate_curve_data, "curve"),
                                         (config.SCHEMES_DIR, validate_scheme_data, "scheme")):
        if not os.path.isdir(directory):
            continue
        for name in sorted(os.listdir(directory)):
            if not name.endswith(".json"):
                continue
            key = f"{prefix}_{name[:-5]}"
            try:
                ok, errors = validator(load_json_file(os.path.join(directory, name)))
            except Char1Error as e:
                ok, errors = False, [str(e)]
            for error in errors:
                logger.error(f"{name}: {error}")
            results[key] = ok

    return results
