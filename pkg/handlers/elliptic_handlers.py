"""
elliptic command: N(n) = n + 1 - t(n), the Dirichlet identity and the singularity catalog
"""

import os
import logging
from argparse import Namespace
from typing import Tuple

import config
from core.data_validation import validate_range
from core.elliptic_count import (counting_coeffs, curve_11a, dirichlet_identity_check, eta_coeffs,
                                 hasse_violations, load_curve, reduction_types, singularity_catalog,
                                 t_coeffs_for_curve)
from core.errors import InternalConsistencyError, ValidationError
from handlers.common import emit_csv, emit_json, handle_errors, output_dir

logger = logging.getLogger(__name__)


def parse_window(text: str) -> Tuple[float, float, float, float]:
    """``re_min,re_max,im_min,im_max``."""
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise ValidationError(f"unreadable window {text!r}") from e
    if len(values) != 4:
        raise ValidationError(f"window needs four numbers re_min,re_max,im_min,im_max, got {text!r}")
    return values


@handle_errors
def elliptic(args: Namespace) -> int:
    E = load_curve(args.curve) if args.curve else curve_11a()
    ok, problems = validate_range("N", args.N, 1, config.ETA_MAX_N)
    if not ok:
        raise ValidationError("; ".join(problems))
    out = output_dir(args, "elliptic")

    types = reduction_types(E)
    for p, kind in types.items():
        print(f"p={p}: {kind.value} reduction")

    a = eta_coeffs(args.N) if E.coefficients == curve_11a().coefficients else None
    t = t_coeffs_for_curve(E, args.N, a)
    counts = counting_coeffs(t)
    emit_csv(args, os.path.join(out, "counting.csv"), ("n", "N"),
             ((n, counts[n]) for n in range(1, counts.N + 1)))

    non_positive = [n for n in range(1, counts.N + 1) if counts[n] <= 0]
    if non_positive:
        logger.warning(f"N(n) <= 0 at n = {non_positive[:10]}")
    violations = hasse_violations(t, bad_primes=list(types))
    if violations:
        raise InternalConsistencyError(f"Hasse bound fails at q = {violations[:10]}")

    catalog = singularity_catalog(E, parse_window(args.window))
    emit_json(args, os.path.join(out, "singularities.json"),
              {"curve": list(E.coefficients), "window": list(parse_window(args.window)),
               "singularities": [s.to_json() for s in catalog]})

    if args.check_dirichlet:
        report = dirichlet_identity_check(E, args.N, a)
        if not report.success:
            for error in report.errors:
                logger.error(error)
            raise InternalConsistencyError(f"Dirichlet identity fails (first index {report.first_failure})")
        print(f"identity holds through n={args.N}")

    print(f"N(n) for n <= {args.N} and {len(catalog)} singularities written to {out}")
    return config.EXIT_OK
