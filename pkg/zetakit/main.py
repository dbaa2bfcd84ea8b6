"""
zetakit command line entry point
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from zetakit import __version__
from zetakit.commands import COMMANDS
from zetakit.config import load_config
from zetakit.errors import UsageError, ZetaKitError
from zetakit.models import OutputFormat

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage failures raised as UsageError (exit 64, not 2)"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


def common_options() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the sub-command from being reset after it
    common = ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="target absolute error")
    common.add_argument("--max-terms", type=int, default=argparse.SUPPRESS, help="acceleration degree cap")
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=argparse.SUPPRESS,
        help="output format",
    )
    common.add_argument("--cache", default=argparse.SUPPRESS, help="zero cache CSV path")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker threads (0 = auto)")
    common.add_argument("--log-level", default=argparse.SUPPRESS, help="DEBUG, INFO, WARNING or ERROR")
    return common


def build_parser() -> ArgumentParser:
    common = common_options()
    parser = ArgumentParser(
        prog="zetakit",
        description="Riemann zeta evaluation, zero scanning and identity checks",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers, [common])
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = load_config(
            tolerance=getattr(args, "tol", None),
            max_terms=getattr(args, "max_terms", None),
            output_format=getattr(args, "format", None),
            zero_cache_path=getattr(args, "cache", None),
            parallelism=getattr(args, "jobs", None),
            log_level=getattr(args, "log_level", None),
        )
    except UsageError as e:
        print(e.detail, file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"zetakit: invalid configuration\n{e}", file=sys.stderr)
        return UsageError.exit_code
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, config.log_level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.debug(f"Running {args.command} with {config!r}")

    try:
        return args.handler(args, config)
    except ZetaKitError as e:
        print(f"zetakit {args.command}: {e.detail}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
