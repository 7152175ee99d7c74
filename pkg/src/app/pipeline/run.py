import asyncio
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from app.groebner.bounds import degree_bounds, eliminant_report
from app.groebner.buchberger import buchberger
from app.groebner.zerodim import is_zero_dimensional
from app.logdiff.models import NonlinearSpec, OdeProblem
from app.logdiff.system import (
    assemble_indexed,
    check_hypotheses,
    certify_leading_forms,
    leading_form_system,
    necessary_equations,
    weight_bound_ok,
)
from app.oracle.series import (
    InitialConditions,
    Series,
    quotient_series,
    series_solve,
    series_solve_nonlinear,
    suggest_expansion_point,
)
from app.oracle.verify import verify_annihilator, verify_eliminant, verify_nonlinear
from app.pipeline.state import SolveState
from app.utils.decorators import timed
from app.utils.enums import CaseTag
from app.utils.errors import DomainError, HypothesisError
from app.utils.logging import logger
from app.utils.settings import SETTINGS


@dataclass(frozen=True)
class OracleConfig:
    ics: Tuple[Fraction, ...]
    x0: Optional[Fraction] = None
    order: int = SETTINGS.oracle_order
    slack: int = SETTINGS.oracle_slack


def solution_series(problem: OdeProblem, config: OracleConfig) -> Series:
    """Jet of y long enough that every D^j y / y (j < n) keeps `config.order` coefficients."""
    if problem.characteristic:
        raise DomainError("series verification needs characteristic 0")
    coefficients = [problem.l2.a(i) for i in range(problem.m)]
    if not isinstance(problem.l1, NonlinearSpec):
        coefficients += [problem.l1.a(i) for i in range(problem.n)]
    x0 = config.x0 if config.x0 is not None else suggest_expansion_point(coefficients)
    ics = InitialConditions.of(config.ics)
    length = config.order + problem.n - 1
    if isinstance(problem.l1, NonlinearSpec):
        return series_solve_nonlinear(problem.l1, ics, x0, length)
    return series_solve(problem.l1, ics, x0, length)


@timed('hypotheses')
def hypotheses_phase(state: SolveState) -> None:
    state.hypotheses = check_hypotheses(state.problem)
    if not state.hypotheses.passed:
        raise HypothesisError('; '.join(state.hypotheses.messages()), state.hypotheses.violations)


@timed('assemble')
def assemble_phase(state: SolveState) -> None:
    indexed = assemble_indexed(state.problem)
    state.system = [f for _, f in indexed]
    state.equation_labels = [k for k, _ in indexed]
    if not state.system:
        raise DomainError("every assembled equation vanished; nothing to solve")
    state.weight_bound_ok = weight_bound_ok(indexed, state.problem.m)
    if not state.weight_bound_ok:
        logger.warning({'message': 'weight bound not attained by the assembled system'})


@timed('leading_forms')
def leading_form_phase(state: SolveState) -> None:
    state.leading_forms = leading_form_system(state.system)
    state.leading_certificate = certify_leading_forms(state.system)
    if state.problem.case == CaseTag.POWER:
        state.necessary_equations = [state.equation_labels[i] for i in necessary_equations(state.system)]


@timed('groebner')
def groebner_phase(state: SolveState) -> None:
    state.groebner = buchberger(state.system)
    # buchberger raises when the post-check fails
    state.groebner_verified = True if SETTINGS.verify_groebner else None


@timed('certificate')
def certificate_phase(state: SolveState) -> None:
    problem = state.problem
    state.certificate = is_zero_dimensional(state.groebner)
    state.bounds = degree_bounds(problem.case, problem.n, problem.m, problem.q, problem.characteristic)
    if state.certificate.unit_ideal:
        state.unit_ideal = True
        logger.info({'message': 'unit ideal: the operators have no common solution'})
    elif not state.certificate.certified:
        raise DomainError(
            f"system is not zero-dimensional: no pure power for variables {list(state.certificate.missing)}"
        )


@timed('eliminants')
async def eliminant_phase(state: SolveState) -> None:
    if state.unit_ideal:
        return
    semaphore = asyncio.Semaphore(max(SETTINGS.eliminant_workers, 1))

    async def extract(j: int):
        async with semaphore:
            return await asyncio.to_thread(eliminant_report, state.groebner, j, state.certificate, state.bounds)

    nvars = state.groebner.ring.nvars
    state.eliminants = list(await asyncio.gather(*(extract(j) for j in range(1, nvars + 1))))
    for report in state.eliminants:
        if not report.within_bezout:
            logger.warning({'message': 'eliminant exceeds the Bezout bound', 'j': report.j,
                            'degree': report.degree, 'bound': report.bezout_bound})


@timed('oracle')
def oracle_phase(state: SolveState, config: Optional[OracleConfig]) -> None:
    outcome = state.oracle
    problem = state.problem
    if config is None:
        outcome.skipped_reason = 'no oracle block'
        return
    if problem.characteristic:
        outcome.skipped_reason = 'characteristic p problems are verified structurally only'
        return
    if state.unit_ideal:
        outcome.skipped_reason = 'unit ideal'
        return

    y = solution_series(problem, config)
    x0 = y.x0
    if isinstance(problem.l1, NonlinearSpec):
        outcome.l1 = verify_nonlinear(problem.l1, y, config.slack)
    else:
        outcome.l1 = verify_annihilator(problem.l1, y, config.slack)
    target = y ** problem.q if problem.case == CaseTag.POWER else y.inverse()
    outcome.l2 = verify_annihilator(problem.l2, target, config.slack)
    for report in state.eliminants:
        u = quotient_series(y, report.j)
        outcome.eliminants[report.j] = verify_eliminant(report.eliminant, u, config.slack)
    outcome.ran = True
    outcome.x0 = str(x0)
    outcome.order = config.order
    outcome.slack = config.slack
    logger.info({'message': 'oracle finished', 'passed': outcome.passed})


async def _run(state: SolveState, config: Optional[OracleConfig]) -> SolveState:
    hypotheses_phase(state)
    assemble_phase(state)
    leading_form_phase(state)
    groebner_phase(state)
    certificate_phase(state)
    await eliminant_phase(state)
    oracle_phase(state, config)
    state.mark_end()
    return state


def run_solve(state: SolveState, config: Optional[OracleConfig] = None) -> SolveState:
    """Run every phase on `state`; fields filled before a failure stay readable by the caller."""
    logger.info({'message': 'solve started', 'case': state.problem.case.value,
                 'n': state.problem.n, 'm': state.problem.m})
    return asyncio.run(_run(state, config))
