"""
additive-search command: the set A(F_1^n) and the graph of a field symmetry
"""

import logging
from argparse import Namespace

import config
from core.additive_structures import (conjugating_automorphism, expected_count, export_edges,
                                      search_A)
from core.data_validation import validate_range
from core.errors import InternalConsistencyError, ValidationError
from handlers.common import command_options, emit_csv, handle_errors, output_path
from ui.formatting import header_line

logger = logging.getLogger(__name__)


@handle_errors
def additive_search(args: Namespace) -> int:
    ok, problems = validate_range("n", args.n, 1, config.FIELD_MAX_ORDER - 1)
    if not ok:
        raise ValidationError("; ".join(problems))

    maps = search_A(args.n, args.mode)
    expected = expected_count(args.n)
    if len(maps) != expected:
        raise InternalConsistencyError(f"found {len(maps)} structures on F1^{args.n}, expected {expected}")

    rows = []
    for k, sym in enumerate(maps):
        u = conjugating_automorphism(maps[0], sym) if args.n >= 2 else None
        rows.append((k, " ".join(map(str, sym.values)), sym.is_bijective, sym.is_retraction,
                     "" if u is None else u))
    path = output_path(args, f"A_{args.n}.csv")
    emit_csv(args, path, ("index", "values", "bijective", "idempotent", "conjugating_unit"), rows)

    if args.export_edges:
        if not maps:
            raise ValidationError(f"no structure on F1^{args.n} to export")
        header = None if args.no_header else header_line(args.command, command_options(args))
        bijective = [m for m in maps if m.is_bijective]
        export_edges((bijective or maps)[0], args.export_edges, header)

    print(f"A(F1^{args.n}): {len(maps)} structures ({args.mode}), written to {path}")
    return config.EXIT_OK
