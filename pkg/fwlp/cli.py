import argparse
import importlib.resources as pkg_resources
import logging
import sys
from typing import NoReturn

import arrow

import fwlp.data.problems
from fwlp.constants import (DEFAULT_MAX_ITERS, DEFAULT_REFRESH_PERIOD,
                            DEFAULT_TOL, DEFAULT_TRACE_EVERY, EXIT_BUDGET,
                            EXIT_CONVERGED, EXIT_INPUT_ERROR, PROGRAM_NAME)
from fwlp.core.diagnostics import dual_infeasibility, primal_infeasibility
from fwlp.core.driver import Trace
from fwlp.core.fwlp import run_fwlp
from fwlp.core.fwlpp import run_fwlpp
from fwlp.core.model import SolverParams, StandardFormLP
from fwlp.harness.convert import VariableMap, to_standard_form
from fwlp.harness.generate import generate_instance
from fwlp.harness.mps import parse_mps, read_mps
from fwlp.harness.tracefile import write_trace
from fwlp.lib.log import logger, setup
from fwlp.lib.types import Algorithm
from fwlp.lib.utils import parse_generate_spec


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1; exit code 2 means the iteration budget ran out."""
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROGRAM_NAME, description="Frank-Wolfe solvers for standard-form linear programs.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    solve = commands.add_parser("solve", help="run FWLP or FWLP-P on one problem")

    solve.add_argument("--algo", choices=[a.value for a in Algorithm], default=Algorithm.FWLPP.value)
    source = solve.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="FILE.mps", help="MPS file to solve")
    source.add_argument("--generate", metavar="SEED,M,N,DENSITY", help="random instance with a known optimum")
    source.add_argument("--example", metavar="NAME", help="bundled problem, e.g. 'transport'")

    solve.add_argument("--xi", type=float, help="radius of the primal simplex cap")
    solve.add_argument("--eta", type=float, help="radius of the dual box")
    solve.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    solve.add_argument("--screening", choices=["on", "off"], default="off")
    solve.add_argument("--trace", metavar="OUT.csv", help="write traced diagnostics as CSV")
    solve.add_argument("--trace-every", type=int, default=DEFAULT_TRACE_EVERY)
    solve.add_argument("--tol", type=float, default=DEFAULT_TOL)
    solve.add_argument("--refresh-period", type=int, default=DEFAULT_REFRESH_PERIOD)
    solve.add_argument("--fixed-mps", action="store_true", help="read MPS with fixed column positions")
    solve.add_argument("--verify", action="store_true", help="check the potential-function bounds while running")
    solve.add_argument("--quiet", action="store_true", help="only log warnings")
    return parser


def _load(args) -> tuple[StandardFormLP, VariableMap | None, float | None, float | None]:
    if args.generate is not None:
        instance = generate_instance(*parse_generate_spec(args.generate))
        xi = args.xi if args.xi is not None else instance.xi_min
        eta = args.eta if args.eta is not None else instance.eta_min
        return instance.problem, None, xi, eta

    if args.example is not None:
        resource = pkg_resources.files(fwlp.data.problems).joinpath(f"{args.example}.mps")
        if not resource.is_file():
            raise UsageError(f"No bundled example named '{args.example}'.")
        model = parse_mps(resource.read_text(encoding="utf-8"), fixed=args.fixed_mps)
    else:
        model = read_mps(args.input, fixed=args.fixed_mps)
    if args.xi is None or args.eta is None:
        raise UsageError("--xi and --eta are required for MPS input, the optimum is unknown so the radii must be given.")
    problem, variables = to_standard_form(model)
    return problem, variables, args.xi, args.eta


def _summary(trace: Trace, problem: StandardFormLP, variables: VariableMap | None,
             started: arrow.Arrow) -> str:
    final = trace.final
    x, y = final.x, final.y
    fields: list[tuple[str, object]] = [
        ("status", trace.status),
        ("started", started.format("YYYY-MM-DD HH:mm:ss ZZ")),
        ("elapsed", f"{(arrow.now() - started).total_seconds():.3f} s"),
        ("iterations", trace.iterations),
        ("column touches", final.touches),
        ("primal infeas", f"{primal_infeasibility(x, problem):.6e}"),
        ("dual infeas", f"{dual_infeasibility(y, problem):.6e}"),
        ("gap", f"{float(problem.c @ x - problem.b @ y):.6e}"),
    ]
    if trace.records:
        fields.append((f"U (k={trace.records[-1].k})", f"{trace.records[-1].U:.6e}"))
    if variables is not None:
        fields.append(("objective", f"{variables.objective(x):.6e}"))
    if trace.violations:
        fields.append(("bound violations", len(trace.violations)))
    width = max(len(label) for label, _ in fields) + 2
    return "\n".join(f"{label + ':':<{width}}{value}" for label, value in fields)


def _solve(args) -> int:
    problem, variables, xi, eta = _load(args)
    params = SolverParams(
        xi=xi, eta=eta,
        max_iters=args.max_iters,
        refresh_period=args.refresh_period,
        screening_enabled=args.screening == "on",
        trace_every=args.trace_every,
        tol=args.tol,
        verify_bounds=args.verify,
    )
    run = run_fwlp if Algorithm(args.algo) is Algorithm.FWLP else run_fwlpp

    started = arrow.now()
    trace = run(problem, params)
    if args.trace:
        write_trace(args.trace, trace.records)
        logger.info(f"Wrote {len(trace.records)} trace rows to {args.trace}.")
    print(_summary(trace, problem, variables, started))
    return EXIT_CONVERGED if trace.converged else EXIT_BUDGET


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup(logging.WARNING if args.quiet else logging.INFO)

    try:
        return _solve(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{PROGRAM_NAME}: error: {e}", file=sys.stderr)
    except (ValueError, OSError) as e:
        print(f"{PROGRAM_NAME}: error: {e}", file=sys.stderr)
    return EXIT_INPUT_ERROR
