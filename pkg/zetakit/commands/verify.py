import argparse
import logging

from zetakit.config import RunConfig
from zetakit.models import Suite
from zetakit.output import emit
from zetakit.services.verification import run_suite

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("verify", parents=parents, help="run property suites")
    parser.add_argument("suite", choices=[s.value for s in Suite])
    parser.set_defaults(handler=cmd_verify)


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    reports = run_suite(Suite(args.suite), config)
    rows = [
        (report.suite, check.name, check.passed, check.margin, check.detail)
        for report in reports
        for check in report.checks
    ]
    emit(config.output_format, reports, ("suite", "check", "passed", "margin", "detail"), rows)

    failed = [row[1] for row in rows if not row[2]]
    if failed:
        logger.error(f"Failed checks: {', '.join(failed)}")
        return 1
    return 0
