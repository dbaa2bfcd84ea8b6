import argparse
import logging

from zetakit.config import RunConfig
from zetakit.output import emit
from zetakit.services.arith import beta_table

logger = logging.getLogger(__name__)

HEADER = ("n", "beta_divisor_sum", "beta_closed_form", "classification")


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "beta", parents=parents, help="tabulate beta(n) by divisor sum and closed form"
    )
    parser.add_argument("n_max", type=int)
    parser.set_defaults(handler=cmd_beta)


def cmd_beta(args: argparse.Namespace, config: RunConfig) -> int:
    """Print the beta table; exit 1 if any row disagrees"""
    rows = [(n, divsum, closed.value, closed.classification) for n, divsum, closed in beta_table(args.n_max)]
    mismatches = [row[0] for row in rows if row[1] != row[2]]

    document = [dict(zip(HEADER, (n, d, c, k.value))) for n, d, c, k in rows]
    emit(config.output_format, document, HEADER, rows)

    if mismatches:
        logger.error(f"beta disagreement at n = {mismatches[:10]}")
        return 1
    return 0
