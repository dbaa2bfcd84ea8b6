import argparse
import logging

from zetakit.config import RunConfig
from zetakit.errors import UsageError
from zetakit.output import emit
from zetakit.schemas import ProbeReport
from zetakit.services.identities import probe_zero
from zetakit.services.zero_cache import ZeroCache

logger = logging.getLogger(__name__)

ZERO_PREFIX = "zero:"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "probe", parents=parents, help="evaluate the identity chain at sigma + it"
    )
    parser.add_argument("sigma", type=float)
    parser.add_argument("t", help="imaginary part, or zero:k for the k-th cached zero")
    parser.set_defaults(handler=cmd_probe)


def resolve_t(target: str, config: RunConfig) -> float:
    """Turn a literal t or a zero:k reference into a float"""
    if target.startswith(ZERO_PREFIX):
        try:
            k = int(target[len(ZERO_PREFIX):])
        except ValueError as e:
            raise UsageError(f"malformed zero reference {target!r}") from e
        return ZeroCache(config.zero_cache_path).get(k).t
    try:
        return float(target)
    except ValueError as e:
        raise UsageError(f"t must be a number or zero:k, got {target!r}") from e


def _rows(report: ProbeReport):
    yield "residual_31", report.residual_31
    yield "residual_32", report.residual_32
    for phi, value in report.residual_33:
        yield f"residual_33[phi={phi!r}]", value
    for m, value in report.f1_samples:
        yield f"f1[m={m}]", value
    for m, value in report.f2_samples:
        yield f"f2[m={m}]", value
    yield "A", report.A
    yield "B", report.B
    if report.zeta2s is not None:
        yield "zeta2s.re", report.zeta2s.re
        yield "zeta2s.im", report.zeta2s.im
    if report.coeffs is not None:
        for name in ("p", "q", "r", "s_coef", "det"):
            yield name, getattr(report.coeffs, name)
    if report.system_residuals is not None:
        yield "system_residual1", report.system_residuals[0]
        yield "system_residual2", report.system_residuals[1]
    if report.regime_note:
        yield "regime_note", report.regime_note


def cmd_probe(args: argparse.Namespace, config: RunConfig) -> int:
    t = resolve_t(args.t, config)
    report = probe_zero(args.sigma, t, config.max_terms, tol=config.tolerance)
    emit(
        config.output_format,
        report,
        ("quantity", "value"),
        _rows(report),
        title=f"sigma={report.sigma!r} t={report.t!r} n_terms={report.n_terms}",
    )
    return 0
