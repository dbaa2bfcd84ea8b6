import argparse
import logging

from zetakit.config import RunConfig
from zetakit.output import emit
from zetakit.services.zero_cache import ZeroCache, format_t
from zetakit.services.zeta import find_zeros

logger = logging.getLogger(__name__)

DEFAULT_STEP = 0.1


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "zeros", parents=parents, help="locate zeros on the critical line and cache them"
    )
    parser.add_argument("t_min", type=float)
    parser.add_argument("t_max", type=float)
    parser.add_argument("--step", type=float, default=DEFAULT_STEP, help="scan grid spacing")
    parser.set_defaults(handler=cmd_zeros)


def cmd_zeros(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Scan [t_min, t_max], merge the zeros into the cache and print the
    cached zeros in that range with their cache indices
    """
    found = find_zeros(
        args.t_min,
        args.t_max,
        args.step,
        config.tolerance,
        config.workers(),
        config.max_terms,
    )
    cached = ZeroCache(config.zero_cache_path).store(found)
    in_range = [r for r in cached if args.t_min <= r.t <= args.t_max]
    emit(
        config.output_format,
        in_range,
        ("index", "t", "residual"),
        [(r.index, format_t(r.t), r.residual) for r in in_range],
    )
    return 0
