import argparse
import sys
from typing import List, Optional

from app.algebra.basefield import rational_function_field
from app.algebra.mpoly import PolyRing
from app.cli.parser import parse_upoly
from app.cli.problem import ProblemFile
from app.cli.report import ConverseReport, EliminantCheckModel, CheckModel, SolveReport, VerifyReport
from app.converse.annihilators import converse
from app.logdiff.recurrences import p_power, p_reciprocal
from app.oracle.series import quotient_series
from app.oracle.verify import verify_eliminant
from app.pipeline.run import run_solve, solution_series
from app.pipeline.state import SolveState
from app.utils.enums import ExitCode
from app.utils.errors import (
    DomainError,
    HypothesisError,
    LogDerivError,
    ParseError,
    SingularPointError,
    UnitIdealSignal,
)
from app.utils.logging import logger
from app.utils.utilities import Utilities

__version__ = '0.1.0'


def _fail(message: str, code: ExitCode) -> int:
    sys.stderr.write(message.rstrip('\n') + '\n')
    logger.info({'message': 'command failed', 'exit_code': int(code), 'reason': message})
    return int(code)


def exit_code_for(error: LogDerivError) -> ExitCode:
    if isinstance(error, ParseError):
        return ExitCode.PARSE
    if isinstance(error, (HypothesisError, SingularPointError)):
        return ExitCode.HYPOTHESIS
    if isinstance(error, UnitIdealSignal):
        return ExitCode.UNIT_IDEAL
    return ExitCode.FAILURE


def solve_command(args: argparse.Namespace) -> int:
    try:
        document = ProblemFile.load(args.file)
        problem = document.to_problem(args.char)
        config = None if args.no_oracle else document.oracle_config()
    except ParseError as error:
        return _fail(error.display(), ExitCode.PARSE)
    except HypothesisError as error:
        return _fail(error.message, ExitCode.HYPOTHESIS)

    state = SolveState(problem=problem)
    try:
        run_solve(state, config)
    except LogDerivError as error:
        code = exit_code_for(error)
        if isinstance(error, HypothesisError):
            for violation in getattr(error, 'violations', []):
                sys.stderr.write(f"  - {getattr(violation, 'message', violation)}\n")
        return _fail(error.message, code)

    report = SolveReport.from_state(state)
    if args.out:
        Utilities.write_output(report.model_dump_json(indent=2), args.out)
    Utilities.write_output(report.render_text())
    if report.unit_ideal:
        return int(ExitCode.UNIT_IDEAL)
    if report.oracle and not report.oracle.passed:
        return int(ExitCode.FAILURE)
    return int(ExitCode.SUCCESS)


def converse_command(args: argparse.Namespace) -> int:
    try:
        domain = rational_function_field(args.char or 0)
        f = parse_upoly(args.f, domain, 'T')
        result = converse(f)
    except ParseError as error:
        return _fail(error.display(), ExitCode.PARSE)
    except DomainError as error:
        return _fail(error.message, ExitCode.HYPOTHESIS)
    report = ConverseReport(
        f=str(f.monic()), l1=str(result.l1), l2=str(result.l2),
        l1_coefficients=result.l1.coefficient_strings(), l2_coefficients=result.l2.coefficient_strings(),
    )
    Utilities.write_output(report.render_text())
    return int(ExitCode.SUCCESS)


def pn_command(args: argparse.Namespace) -> int:
    if args.n < 0:
        return _fail(f"n must be >= 0, got {args.n}", ExitCode.PARSE)
    try:
        ring = PolyRing(rational_function_field(args.char or 0), max(args.n, 1))
        poly = p_reciprocal(args.n, ring) if args.q is None else p_power(args.n, args.q, ring)
    except HypothesisError as error:
        return _fail(error.message, ExitCode.HYPOTHESIS)
    except DomainError as error:
        return _fail(error.message, ExitCode.PARSE)
    Utilities.write_output(str(poly))
    return int(ExitCode.SUCCESS)


def verify_command(args: argparse.Namespace) -> int:
    try:
        document = ProblemFile.load(args.file)
        problem = document.to_problem()
        config = document.oracle_config()
        if config is None:
            raise ParseError("verify needs an 'oracle' block in the problem file")
        try:
            stored = SolveReport.model_validate_json(Utilities.read_text(args.report))
        except ValueError as error:
            raise ParseError(f"invalid report file: {error}") from error
        domain = problem.domain
        eliminants = [(e.j, parse_upoly(e.eliminant, domain, f"y{e.j}")) for e in stored.eliminants]
    except ParseError as error:
        return _fail(error.display(), ExitCode.PARSE)
    except HypothesisError as error:
        return _fail(error.message, ExitCode.HYPOTHESIS)

    if problem.characteristic:
        return _fail("characteristic p problems are verified structurally only", ExitCode.FAILURE)
    try:
        y = solution_series(problem, config)
        checks = []
        for j, g in eliminants:
            result = verify_eliminant(g, quotient_series(y, j), config.slack)
            checks.append(EliminantCheckModel(j=j, **CheckModel.of(result).model_dump()))
    except SingularPointError as error:
        return _fail(error.message, ExitCode.HYPOTHESIS)
    except LogDerivError as error:
        return _fail(error.message, exit_code_for(error))

    report = VerifyReport(x0=str(y.x0), order=config.order, slack=config.slack, eliminants=checks)
    Utilities.write_output(report.render_text())
    return int(ExitCode.SUCCESS if report.passed else ExitCode.FAILURE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='logderiv', description='polynomials satisfied by logarithmic derivatives of ODE solutions'
    )
    parser.add_argument('-v', '--version', action='version', version=f"logderiv {__version__}")
    commands = parser.add_subparsers(dest='command', required=True)

    solve = commands.add_parser('solve', help='eliminants for D^j y / y from a problem file')
    solve.add_argument('file', help='problem file (JSON)')
    solve.add_argument('--out', help='write the structured report to this file')
    solve.add_argument('--char', type=int, default=None, help='override the base field characteristic')
    solve.add_argument('--no-oracle', action='store_true', help='skip the series verification')
    solve.set_defaults(handler=solve_command)

    converse_cmd = commands.add_parser('converse', help='operators for y and 1/y from the polynomial of y\'/y')
    converse_cmd.add_argument('--f', required=True, help='monic squarefree polynomial in T over k(x)')
    converse_cmd.add_argument('--char', type=int, default=0, help='base field characteristic')
    converse_cmd.set_defaults(handler=converse_command)

    pn = commands.add_parser('pn', help='print p_n or p_(n,q)')
    pn.add_argument('--n', type=int, required=True)
    pn.add_argument('--q', type=int, default=None)
    pn.add_argument('--char', type=int, default=0, help='base field characteristic')
    pn.set_defaults(handler=pn_command)

    verify = commands.add_parser('verify', help='re-check stored eliminants against the series solution')
    verify.add_argument('file', help='problem file with an oracle block')
    verify.add_argument('--report', required=True, help='structured report from a previous solve')
    verify.set_defaults(handler=verify_command)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)
