"""
Integration module for char1

This module cross-checks the core modules against each other and against
the shipped fixtures, returning reports of the form
{"success": bool, "errors": [...], "warnings": [...], "info": [...]}.
"""

import logging
from fractions import Fraction
from typing import Any, Dict

import config
from core.additive_structures import expected_count, field_axioms_report, search_A
from core.data_validation import initialize_data_directories, validate_data_files
from core.elliptic_count import curve_11a, dirichlet_identity_check, eta_coeffs
from core.errors import Char1Error
from core.monoid_spec import FinAbGroup, SchemeData
from core.semiring_char1 import enumerate_idempotent_semifields
from core.witt_engine import (compare_with_fixture, get_witt_table, load_table_fixture,
                              table_symmetry_defects)
from core.zeta_f1 import alpha_exponents

# Initialize logger
logger = logging.getLogger(__name__)


def _new_report() -> Dict[str, Any]:
    return {"success": True, "errors": [], "warnings": [], "info": []}


def _fail(results: Dict[str, Any], message: str) -> None:
    results["success"] = False
    results["errors"].append(message)


def validate_environment() -> Dict[str, Any]:
    """
    Validate the configuration and the data/output directories.

    Returns:
        Dictionary with validation results
    """
    results = _new_report()
    for error in config.validate_config():
        _fail(results, error)
    if not initialize_data_directories(config):
        _fail(results, f"Cannot prepare {config.DATA_DIR} / {config.OUTPUT_DIR}")
    results["info"].append(f"char1 {config.VERSION}, {config.CHAR1_THREADS} worker threads")
    return results


def validate_fixtures() -> Dict[str, Any]:
    """Check that every shipped curve, scheme and table file parses."""
    results = _new_report()
    checks = validate_data_files(config)
    if not checks:
        results["warnings"].append("No fixtures found")
    for name, ok in sorted(checks.items()):
        if ok:
            results["info"].append(f"{name}: ok")
        else:
            _fail(results, f"{name}: invalid")
    return results


def validate_witt_table(p: int = 5, N: int = 3) -> Dict[str, Any]:
    """
    Recompute the w_p table, check alpha <-> 1 - alpha symmetry and, for p = 5,
    compare with the shipped fixture.

    Args:
        p: prime
        N: truncation (series mod T^(N+1))

    Returns:
        Dictionary with validation results
    """
    results = _new_report()
    try:
        table = get_witt_table(p, N)
    except Char1Error as e:
        _fail(results, f"w_{p} table failed: {e}")
        return results

    defects = table_symmetry_defects(table)
    if defects:
        _fail(results, f"w_{p}(alpha) != w_{p}(1 - alpha) at {', '.join(map(str, defects[:5]))}")
    results["info"].append(f"w_{p} mod T^{N + 1}: {len(table.entries)} coefficients")

    if (p, N) == (5, 3):
        try:
            mismatches = compare_with_fixture(table, load_table_fixture(config.W5_TABLE_FIXTURE, p, N))
        except Char1Error as e:
            _fail(results, f"Fixture unreadable: {e}")
            return results
        for alpha, expected, got in mismatches:
            _fail(results, f"alpha={alpha}: fixture {expected}, computed {got}")
        if not mismatches:
            results["info"].append("matches the shipped w_5 fixture")
    return results


def validate_core_modules(max_n: int = 4) -> Dict[str, Any]:
    """
    Run one small computation per core module and compare with known values.

    Args:
        max_n: largest F_1^n for the additive-structure search

    Returns:
        Dictionary with validation results
    """
    results = _new_report()

    try:
        semifields = enumerate_idempotent_semifields(3)
        if len(semifields) != 1:
            _fail(results, f"expected only B among small idempotent semifields, found {len(semifields)}")
        else:
            results["info"].append("B is the only idempotent semifield of size <= 3")
    except Char1Error as e:
        _fail(results, f"semifield enumeration failed: {e}")

    for n in range(1, max_n + 1):
        try:
            maps = search_A(n, "brute")
        except Char1Error as e:
            _fail(results, f"search_A({n}) failed: {e}")
            continue
        if len(maps) != expected_count(n):
            _fail(results, f"|A(F1^{n})| = {len(maps)}, expected {expected_count(n)}")
        for sym in maps:
            if sym.is_bijective and not field_axioms_report(sym)["success"]:
                _fail(results, f"field axioms fail for {sym.values}")
    results["info"].append(f"A(F1^n) checked for n <= {max_n}")

    p1 = SchemeData(((1, FinAbGroup.from_orders([])), (0, FinAbGroup.from_orders([])),
                     (0, FinAbGroup.from_orders([]))))
    if alpha_exponents(p1).alphas != (Fraction(-1), Fraction(-1)):
        _fail(results, f"P^1 exponents {alpha_exponents(p1).to_json()}, expected (-1, -1)")

    a = eta_coeffs(7)
    if a.values() != [1, -2, -1, 2, 1, 2, -2]:
        _fail(results, f"11a coefficients {a.values()}")
    report = dirichlet_identity_check(curve_11a(), 200)
    if not report.success:
        _fail(results, f"11a Dirichlet identity fails at n={report.first_failure}")

    return results


def run_all_validations() -> Dict[str, Dict[str, Any]]:
    """Run every report and log a summary."""
    reports = {
        "environment": validate_environment(),
        "fixtures": validate_fixtures(),
        "witt_table": validate_witt_table(),
        "core_modules": validate_core_modules(),
    }
    for name, report in reports.items():
        status = "ok" if report["success"] else "FAILED"
        logger.info(f"{name}: {status} ({len(report['errors'])} errors, {len(report['warnings'])} warnings)")
        for error in report["errors"]:
            logger.error(f"{name}: {error}")
    return reports
