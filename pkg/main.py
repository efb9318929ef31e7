"""
Main module for char1

Command-line entry point: every sub-command writes CSV/JSON files and
returns an exit code (0 success, 1 validation failure, 2 accuracy failure).
"""

import sys
import logging
import argparse
from typing import List, Optional

import config
from core import shutdown_worker_pool
from handlers.additive_handlers import additive_search
from handlers.elliptic_handlers import elliptic
from handlers.entropy_handlers import entropy_demo
from handlers.witt_handlers import witt_table
from handlers.zeta_handlers import count_points, mangoldt, zeta_f1

# Configure logging
logging.basicConfig(format=config.LOG_FORMAT, level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one sub-command per computation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output file or directory")
    common.add_argument("--tolerance", type=float, default=None, help="accuracy threshold")
    common.add_argument("--no-header", dest="no_header", action="store_true",
                        help="omit the version/options header line")

    parser = argparse.ArgumentParser(prog="char1", description="Characteristic-one algebra and F1-geometry")
    parser.add_argument("--version", action="version", version=f"char1 {config.VERSION}")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    witt = commands.add_parser("witt-table", parents=[common], help="w_p(alpha) mod T^(N+1)")
    witt.add_argument("--p", type=int, default=5)
    witt.add_argument("--N", type=int, default=3)
    witt.add_argument("--fixture", default=None, help="CSV table to compare against")
    witt.set_defaults(handler=witt_table)

    zeta = commands.add_parser("zeta-f1", parents=[common], help="zeta of a Noetherian F1-scheme")
    zeta.add_argument("--scheme", required=True, help="SchemeData JSON file")
    zeta.add_argument("--mode", choices=("integral", "discrete"), default="integral")
    zeta.add_argument("--s-grid", dest="s_grid", default="2,3,0.5+1j,-0.5+0.5j",
                      help="comma-separated complex points")
    zeta.add_argument("--z-grid", dest="z_grid", default="0:10:101", help="start:stop:count on the real line")
    zeta.set_defaults(handler=zeta_f1)

    points = commands.add_parser("count-points", parents=[common], help="#X(F1^n) for n = 1..N")
    points.add_argument("--scheme", required=True)
    points.add_argument("--N", type=int, default=20)
    points.set_defaults(handler=count_points)

    curve = commands.add_parser("elliptic", parents=[common], help="counting function of an elliptic curve")
    curve.add_argument("--curve", default=None, help="curve JSON file (default: 11a)")
    curve.add_argument("--N", type=int, default=1000)
    curve.add_argument("--check-dirichlet", dest="check_dirichlet", action="store_true")
    curve.add_argument("--window", default="-2,2,-2,2", help="re_min,re_max,im_min,im_max")
    curve.set_defaults(handler=elliptic)

    additive = commands.add_parser("additive-search", parents=[common], help="the set A(F1^n)")
    additive.add_argument("--n", type=int, required=True)
    additive.add_argument("--mode", choices=("brute", "constructive"), default="brute")
    additive.add_argument("--export-edges", dest="export_edges", default=None,
                          help="write the graph of the first field symmetry")
    additive.set_defaults(handler=additive_search)

    entropy = commands.add_parser("entropy-demo", parents=[common], help="entropy and free energy")
    entropy.add_argument("--grid", type=int, default=config.ENTROPY_GRID)
    entropy.add_argument("--temperature", type=float, default=1.0)
    entropy.set_defaults(handler=entropy_demo)

    lam = commands.add_parser("mangoldt", parents=[common], help="von Mangoldt counting profile")
    lam.add_argument("--N", type=int, default=10 ** 5)
    lam.add_argument("--s", default="2")
    lam.set_defaults(handler=mangoldt)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch to the handler and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help/--version and 2 on usage errors
        return config.EXIT_OK if not e.code else config.EXIT_VALIDATION

    errors = config.validate_config()
    if errors:
        for error in errors:
            logger.error(f"Configuration error: {error}")
        return config.EXIT_VALIDATION

    logger.debug(f"Running {args.command} with {vars(args)}")
    try:
        return args.handler(args)
    finally:
        shutdown_worker_pool()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
