"""
entropy-demo command: c(s), the free-energy formula and rho-addition samples
"""

import os
import logging
from argparse import Namespace

import numpy as np

import config
from core.data_validation import validate_range
from core.errors import AccuracyError, ValidationError
from core.semiring_char1 import entropy_c, entropy_functional_residual, free_energy_sup, rho_add
from handlers.common import emit_csv, handle_errors, output_dir, tolerance
from ui.formatting import format_float

logger = logging.getLogger(__name__)

# (x, y) pairs in (0, 1] for the free-energy and rho-addition checks
SAMPLE_PAIRS = ((0.5, 0.5), (0.25, 0.75), (0.1, 0.9), (1.0, 0.3), (0.05, 0.02))


@handle_errors
def entropy_demo(args: Namespace) -> int:
    ok, problems = validate_range("grid", args.grid, 3, 10 ** 6)
    if not ok:
        raise ValidationError("; ".join(problems))
    if args.temperature < 0:
        raise ValidationError(f"temperature must be non-negative, got {args.temperature}")
    out = output_dir(args, "entropy-demo")
    tol = tolerance(args, 1e-6)

    grid = np.linspace(0.0, 1.0, args.grid)
    emit_csv(args, os.path.join(out, "entropy.csv"), ("s", "c"),
             ((format_float(s), format_float(entropy_c(float(s)))) for s in grid))

    rows = []
    worst = 0.0
    T = args.temperature
    for x, y in SAMPLE_PAIRS:
        value, argmax = free_energy_sup(x, y, temperature=T)
        pointwise = float(rho_add(x, y, T))
        closed = x + y if T == 1 else pointwise
        worst = max(worst, abs(value - closed) / closed)
        rows.append((format_float(x), format_float(y), format_float(value), format_float(argmax),
                     format_float(pointwise)))
    emit_csv(args, os.path.join(out, "free_energy.csv"), ("x", "y", "sup", "argmax", "rho_add"), rows)

    residual = max(entropy_functional_residual(u, v) for u in (0.2, 0.5, 0.7) for v in (0.3, 0.6, 0.9))
    logger.info(f"entropy functional equation residual {residual:.3e}")
    if worst > tol or residual > tol:
        raise AccuracyError(f"free energy relative error {worst:.3e}, functional residual {residual:.3e} "
                            f"(tolerance {tol})")
    print(f"c(s) on {args.grid} points, free energy at T={T} within {worst:.3e}; outputs in {out}")
    return config.EXIT_OK
