import argparse
import logging

from zetakit.config import RunConfig
from zetakit.output import emit
from zetakit.services.zeta import zeta

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("eval", parents=parents, help="evaluate zeta(s) at s = re + i*im")
    parser.add_argument("s_re", type=float)
    parser.add_argument("s_im", type=float)
    parser.set_defaults(handler=cmd_eval)


def cmd_eval(args: argparse.Namespace, config: RunConfig) -> int:
    """Evaluate zeta at one point and print regime, value and error estimate"""
    s = complex(args.s_re, args.s_im)
    result = zeta(s, config.tolerance, config.max_terms)
    logger.info(f"zeta({s}) = {result.as_complex()} via {result.regime.value}")
    emit(
        config.output_format,
        result,
        ("regime", "re", "im", "est_error", "terms_used"),
        [(result.regime, result.value.re, result.value.im, result.est_error, result.terms_used)],
    )
    return 0
