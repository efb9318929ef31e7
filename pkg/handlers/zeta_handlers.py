"""
Commands on F_1-schemes: zeta-f1, count-points and mangoldt
"""

import os
import logging
from argparse import Namespace
from typing import List

import numpy as np

import config
from core.data_validation import validate_range, validate_scheme_data
from core.errors import AccuracyError, DomainError, ValidationError
from core.monoid_spec import SchemeData, count_points_F1n
from core.storage import load_json_file
from core.zeta_f1 import (LogDerivEvaluator, alpha_exponents, canonical_extension_eval, counting_grid,
                          mangoldt_oracle, mangoldt_partial_sum, mangoldt_profile, zeta_logderiv_bounded)
from handlers.common import emit_csv, emit_json, handle_errors, output_dir, output_path, tolerance
from ui.formatting import complex_columns, format_float

logger = logging.getLogger(__name__)


def load_scheme(path: str) -> SchemeData:
    data = load_json_file(path)
    ok, errors = validate_scheme_data(data)
    if not ok:
        raise ValidationError(f"invalid scheme file {path}: " + "; ".join(errors))
    return SchemeData.from_json(data)


def parse_complex_list(text: str) -> List[complex]:
    """``2,3+1j,0.5-0.25j`` -> [2, 3+1j, 0.5-0.25j]."""
    try:
        return [complex(part.strip().replace(" ", "")) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ValidationError(f"unreadable complex list {text!r}") from e


def parse_real_grid(text: str) -> np.ndarray:
    """``start:stop:count`` -> evenly spaced points, both ends included."""
    try:
        start, stop, count = text.split(":")
        return np.linspace(float(start), float(stop), int(count))
    except ValueError as e:
        raise ValidationError(f"grid must look like start:stop:count, got {text!r}") from e


@handle_errors
def zeta_f1(args: Namespace) -> int:
    """Exponents, sampled log-derivatives and the canonical counting function of a scheme."""
    X = load_scheme(args.scheme)
    out = output_dir(args, "zeta-f1")

    alphas = alpha_exponents(X)
    emit_json(args, os.path.join(out, "exponents.json"),
              {"scheme": os.path.basename(args.scheme), "alpha": alphas.to_json()})

    ev = LogDerivEvaluator.from_scheme(X, args.mode)
    rows = []
    worst_bound = 0.0
    for s in parse_complex_list(args.s_grid):
        try:
            result = zeta_logderiv_bounded(ev, s)
        except DomainError as e:
            logger.warning(f"skipping s={s}: {e}")
            continue
        worst_bound = max(worst_bound, result.error_bound)
        rows.append((*complex_columns(s), *complex_columns(result.value), f"{result.error_bound:.3e}"))
    emit_csv(args, os.path.join(out, "logderiv.csv"), ("re_s", "im_s", "re_val", "im_val", "error_bound"), rows)

    grid = counting_grid(X, parse_real_grid(args.z_grid))
    emit_csv(args, os.path.join(out, "counting.csv"), ("z", "re_N", "im_N"),
             ((format_float(z.real), format_float(re), format_float(im)) for z, re, im in grid))

    print(f"alpha = {alphas.to_json()}; {len(rows)} log-derivative samples ({args.mode}, "
          f"error bound <= {worst_bound:.3e}); outputs in {out}")
    return config.EXIT_OK


@handle_errors
def count_points(args: Namespace) -> int:
    """#X(F_1^n) for n = 1..N next to the canonical extension at z = n + 1."""
    X = load_scheme(args.scheme)
    ok, problems = validate_range("N", args.N, 1, 10 ** 4)
    if not ok:
        raise ValidationError("; ".join(problems))
    tol = tolerance(args)
    rows = []
    worst = 0.0
    for n in range(1, args.N + 1):
        exact = count_points_F1n(X, n)
        value = canonical_extension_eval(X, n + 1)
        residual = abs(value - exact)
        worst = max(worst, residual)
        rows.append((n, exact, format_float(value.real), f"{residual:.3e}"))
    path = output_path(args, "count_points.csv")
    emit_csv(args, path, ("n", "count", "extension", "residual"), rows)
    if worst > tol:
        raise AccuracyError(f"canonical extension residual {worst:.3e} exceeds tolerance {tol}")
    print(f"#X(F1^n) for n <= {args.N} written to {path}; max residual {worst:.3e}")
    return config.EXIT_OK


@handle_errors
def mangoldt(args: Namespace) -> int:
    """Write N(n) = n Lambda(n) as (n, p) pairs and compare sum Lambda(n) n^-s with -zeta'/zeta."""
    profile = mangoldt_profile(args.N)
    s = complex(args.s)
    if s.real <= 1:
        raise DomainError(f"the Dirichlet series of Lambda needs Re(s) > 1, got {s}")
    partial = mangoldt_partial_sum(profile, s)
    oracle = mangoldt_oracle(s)
    # Chebyshev-type tail estimate sum_{n > N} Lambda(n) n^-sigma ~ N^(1 - sigma)/(sigma - 1)
    default_tol = 2 * args.N ** (1 - s.real) / (s.real - 1)
    tol = tolerance(args, default_tol)
    error = abs(partial - oracle)

    path = output_path(args, "mangoldt.csv")
    rows = ((n, p, format_float(n * np.log(p)))
            for n, p in (profile.entry(int(k)) for k in np.nonzero(profile.base)[0]))
    emit_csv(args, path, ("n", "p", "N"), rows)

    print(f"sum_(n<={args.N}) Lambda(n) n^-s = {partial:.10f}; -zeta'/zeta(s) = {oracle:.10f}; "
          f"difference {error:.3e}")
    if error > tol:
        raise AccuracyError(f"partial sum differs from -zeta'/zeta by {error:.3e} > {tol:.3e}")
    return config.EXIT_OK
