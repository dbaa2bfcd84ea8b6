import argparse
import logging
from typing import List

from zetakit.config import RunConfig
from zetakit.errors import UsageError
from zetakit.output import emit
from zetakit.services.identities import swap_discrepancy

logger = logging.getLogger(__name__)

FINAL_GAP_LIMIT = 1e-3


def parse_truncations(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError as e:
        raise UsageError(f"truncations must be a comma separated list of integers, got {text!r}") from e
    return values


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "swap", parents=parents, help="compare rectangle and divisor-diagonal double sums"
    )
    parser.add_argument("sigma", type=float)
    parser.add_argument("t", type=float)
    parser.add_argument("truncations", help="increasing list such as 50,100,200")
    parser.set_defaults(handler=cmd_swap)


def cmd_swap(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Report swap gaps per truncation

    For sigma > 1 the matched gaps must be exactly 0 and the last
    truncation gap below 1e-3; otherwise the rows are informational.
    """
    truncations = parse_truncations(args.truncations)
    reports = swap_discrepancy(args.t, args.sigma, truncations, config.workers())
    emit(
        config.output_format,
        reports,
        ("truncation", "lhs", "rhs", "gap", "diagonal_rhs", "truncation_gap"),
        [(r.truncation, r.lhs, r.rhs, r.gap, r.diagonal_rhs, r.truncation_gap) for r in reports],
    )

    if args.sigma > 1:
        final = reports[-1].truncation_gap
        if any(r.gap != 0 for r in reports) or final >= FINAL_GAP_LIMIT:
            logger.error(f"Swap did not settle: final truncation gap {final:.3e}")
            return 1
    return 0
