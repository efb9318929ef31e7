"""
witt-table command: the values w_p(alpha) mod T^(N+1)
"""

import os
import logging
from argparse import Namespace
from fractions import Fraction

import config
from core.data_validation import validate_prime_option, validate_range
from core.errors import InternalConsistencyError, ValidationError
from core.witt_engine import (compare_with_fixture, get_witt_table, load_table_fixture,
                              table_symmetry_defects, wp_map)
from handlers.common import emit_csv, handle_errors, output_path
from ui.formatting import format_series

logger = logging.getLogger(__name__)


@handle_errors
def witt_table(args: Namespace) -> int:
    """Write alpha_num,alpha_den,series for alpha = k/p^N, 0 < k <= p^N."""
    problems = (validate_prime_option("p", args.p, config.WITT_PRIMES)[1]
                + validate_range("N", args.N, 1, config.WITT_MAX_N)[1])
    if problems:
        raise ValidationError("; ".join(problems))

    table = get_witt_table(args.p, args.N)
    den = args.p ** args.N
    alphas = [Fraction(k, den) for k in range(1, den + 1)]
    rows = []
    for alpha in alphas:
        rows.append((alpha.numerator, alpha.denominator, format_series(wp_map(table, alpha))))

    path = output_path(args, f"w{args.p}_N{args.N}.csv")
    emit_csv(args, path, ("alpha_num", "alpha_den", "series"), rows)

    defects = table_symmetry_defects(table)
    if defects:
        raise InternalConsistencyError(f"w_p(alpha) != w_p(1 - alpha) at {[str(a) for a in defects[:5]]}")

    fixture_path = args.fixture
    if fixture_path is None and (args.p, args.N) == (5, 3) and os.path.exists(config.W5_TABLE_FIXTURE):
        fixture_path = config.W5_TABLE_FIXTURE
    if fixture_path:
        mismatches = compare_with_fixture(table, load_table_fixture(fixture_path, args.p, args.N))
        if mismatches:
            for alpha, expected, got in mismatches[:10]:
                logger.error(f"alpha={alpha}: fixture {expected}, computed {got}")
            raise InternalConsistencyError(f"{len(mismatches)} entries differ from {fixture_path}")
        print(f"matches fixture {fixture_path}")

    print(f"w_{args.p} table mod T^{args.N + 1}: {len(rows)} rows written to {path}")
    return config.EXIT_OK
