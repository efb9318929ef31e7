"""
Shared plumbing for the command handlers
"""

import os
import logging
import functools
from argparse import Namespace
from typing import Any, Callable, Dict, Iterable, Optional, Sequence

import config
from core.errors import Char1Error
from core.storage import save_json_file, write_csv_rows
from ui.formatting import header_line, json_meta

logger = logging.getLogger(__name__)

SKIPPED_OPTIONS = {"handler", "command", "no_header", "out"}


def command_options(args: Namespace) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in SKIPPED_OPTIONS}


def handle_errors(func: Callable[[Namespace], int]) -> Callable[[Namespace], int]:
    """Map library errors raised by a handler to exit codes."""

    @functools.wraps(func)
    def wrapper(args: Namespace) -> int:
        try:
            return func(args)
        except Char1Error as e:
            logger.error(f"{args.command}: {type(e).__name__}: {e}")
            return e.exit_code

    return wrapper


def output_path(args: Namespace, default_name: str) -> str:
    """--out when given, otherwise <CHAR1_OUTPUT_DIR>/<default_name>."""
    return args.out or os.path.join(config.OUTPUT_DIR, default_name)


def output_dir(args: Namespace, default_name: str) -> str:
    path = args.out or os.path.join(config.OUTPUT_DIR, default_name)
    os.makedirs(path, exist_ok=True)
    return path


def emit_csv(args: Namespace, path: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
    header = None if args.no_header else header_line(args.command, command_options(args))
    return write_csv_rows(path, columns, rows, header)


def emit_json(args: Namespace, path: str, payload: Dict[str, Any]) -> None:
    if not args.no_header:
        payload = {"_meta": json_meta(args.command, command_options(args)), **payload}
    save_json_file(path, payload)


def tolerance(args: Namespace, default: Optional[float] = None) -> float:
    if args.tolerance is not None:
        return args.tolerance
    return config.DEFAULT_TOLERANCE if default is None else default
