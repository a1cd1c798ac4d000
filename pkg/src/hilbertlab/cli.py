"""Command-line entry point: ``apply``, ``norm``, ``verify`` and ``serve``.

Reports go to stdout (JSON or CSV); logs go to stderr.
"""

import argparse
import asyncio
import sys

from loguru import logger
from pydantic import TypeAdapter

from hilbertlab.config import settings
from hilbertlab.descriptors import parse_point
from hilbertlab.errors import HilbertLabError
from hilbertlab.log_config import setup_logging
from hilbertlab.models import GridConfig, OperatorForm, Report
from hilbertlab.reporting import norm_frame, reports_frame
from hilbertlab.services import EvaluationService, VerificationService

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

_REPORTS = TypeAdapter(list[Report])


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--grid",
        metavar="J=<J>,nodes=<M>[,N=<N>,tol=<tol>]",
        help=f"grid overrides (default J={settings.grid_level}, nodes={settings.angular_nodes})",
    )


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertlab",
        description="Generalized Hilbert matrix operator on analytic functions of the disk",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    apply = verbs.add_parser("apply", help="evaluate H_mu(f) or a derivative at a point")
    apply.add_argument("--measure", required=True, help="e.g. lebesgue, power:alpha=2")
    apply.add_argument("--function", required=True, help="e.g. poly:1,0.5 or hlog:N=100")
    apply.add_argument("--at", required=True, help="point of the disk, e.g. 0.3+0.4i")
    apply.add_argument("--derivative", type=int, choices=(0, 1, 2), default=0)
    apply.add_argument(
        "--form", choices=[form.value for form in OperatorForm], default=OperatorForm.COEFF.value
    )
    _add_grid(apply)

    norm = verbs.add_parser("norm", help="grid estimate of a function-space norm")
    norm.add_argument("--function", required=True)
    norm.add_argument("--space", required=True, help="e.g. bloch, hardy:q=2, bq:q=1/2")
    _add_grid(norm)
    _add_output(norm)

    verify = verbs.add_parser("verify", help="run verification experiments")
    verify.add_argument("experiment", choices=VerificationService.experiments())
    verify.add_argument("--measure", help="measure for thm1.1, thm1.4 and thm1.5")
    verify.add_argument("--q", type=float, help="space exponent for thm1.4 and thm1.5")
    _add_grid(verify)
    _add_output(verify)

    serve = verbs.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _apply(args: argparse.Namespace, grid: GridConfig) -> int:
    service = EvaluationService(grid)
    result = asyncio.run(
        service.apply(
            args.measure,
            args.function,
            parse_point(args.at),
            args.derivative,
            OperatorForm(args.form),
            grid.truncation,
        )
    )
    print(result.model_dump_json(indent=2))
    return EXIT_OK


def _norm(args: argparse.Namespace, grid: GridConfig) -> int:
    result = asyncio.run(EvaluationService(grid).norm(args.function, args.space, grid))
    if args.out == "csv":
        print(norm_frame(result).write_csv(), end="")
    else:
        print(result.model_dump_json(indent=2))
    return EXIT_OK


def _verify(args: argparse.Namespace, grid: GridConfig) -> int:
    service = VerificationService(grid)
    reports = asyncio.run(service.verify(args.experiment, args.measure, args.q, grid))
    if args.out == "csv":
        print(reports_frame(reports).write_csv(), end="")
    else:
        print(_REPORTS.dump_json(reports, indent=2).decode())
    passed = all(report.passed for report in reports)
    logger.info("Verification finished", experiment=args.experiment, passed=passed)
    return EXIT_OK if passed else EXIT_FAILED


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("hilbertlab.main:app", host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """Run the CLI; returns the process exit code.

    0 when everything passed, 1 when a verification did not pass, 2 on invalid input.
    """
    args = build_parser().parse_args(argv)
    setup_logging()
    if args.verb == "serve":
        return _serve(args)
    try:
        grid = GridConfig.parse(args.grid)
        match args.verb:
            case "apply":
                return _apply(args, grid)
            case "norm":
                return _norm(args, grid)
            case _:
                return _verify(args, grid)
    except HilbertLabError as exc:
        logger.debug("Command failed", verb=args.verb, error=type(exc).__name__)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
