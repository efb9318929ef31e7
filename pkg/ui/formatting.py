"""
Text formatting for char1 outputs

Rationals print as num/den (integers without /1), truncated series as sums
of cT^n, complex numbers as separate real and imaginary columns. Every
artifact starts with a provenance header unless it is suppressed.
"""

from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional, Tuple

import config


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_series(series: Any) -> str:
    """Series objects print themselves as ``3T^2+2T^3``; zero prints as ``0``."""
    return str(series)


def format_float(value: float, digits: int = 12) -> str:
    return f"{value:.{digits}g}"


def complex_columns(value: complex, digits: int = 12) -> Tuple[str, str]:
    value = complex(value)
    return format_float(value.real, digits), format_float(value.imag, digits)


def format_options(options: Mapping[str, Any]) -> str:
    """``key=value`` pairs sorted by key, unset options left out."""
    parts = []
    for key in sorted(options):
        value = options[key]
        if value is None or value is False:
            continue
        parts.append(key if value is True else f"{key}={value}")
    return " ".join(parts)


def header_line(command: str, options: Mapping[str, Any], now: Optional[datetime] = None) -> str:
    """``char1 <version> <command> <sorted options> generated <UTC timestamp>``."""
    stamp = (now or datetime.now(timezone.utc)).strftime("%Y-%m-%dT%H:%M:%SZ")
    opts = format_options(options)
    return f"char1 {config.VERSION} {command}{' ' + opts if opts else ''} generated {stamp}"


def json_meta(command: str, options: Mapping[str, Any]) -> Dict[str, Any]:
    return {"header": header_line(command, options), "version": config.VERSION, "command": command}
