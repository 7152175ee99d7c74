"""Assembly of the polynomial system whose solutions contain (D y/y, ..., D^{n-1} y/y)."""
from math import comb
from typing import List, Sequence, Tuple

from app.algebra.mpoly import MPoly, PolyRing, leading_form, max_weight
from app.groebner.buchberger import buchberger
from app.groebner.zerodim import ZeroDimCertificate, is_zero_dimensional
from app.logdiff.models import HypothesisReport, NonlinearSpec, OdeProblem, OdeSpec, Violation
from app.logdiff.recurrences import p_power, p_reciprocal
from app.logdiff.reduction import reduce_high_variables, reduction_forms
from app.utils.enums import CaseTag
from app.utils.errors import DomainError, HypothesisError
from app.utils.logging import logger


def check_hypotheses(problem: OdeProblem) -> HypothesisReport:
    report = HypothesisReport()
    n, m, p = problem.n, problem.m, problem.characteristic
    case = problem.case

    if case == CaseTag.NONLINEAR:
        if not isinstance(problem.l1, NonlinearSpec):
            report.violations.append(Violation('l1 nonlinear', 'the nonlinear case needs a solved form for l1'))
        else:
            bad = problem.l1.weight_violations()
            if bad:
                report.violations.append(Violation(
                    'sum (i-1)*alpha_i < n',
                    f"requires every term of the solved form to have weight < n = {n} (offending: {', '.join(bad)})",
                ))
    elif not isinstance(problem.l1, OdeSpec):
        report.violations.append(Violation('l1 linear', f"the {case.value} case needs a linear operator for l1"))

    if n <= 1 or m <= 1:
        report.violations.append(Violation('N_1, N_2 > 1', f"requires N_1 > 1 and N_2 > 1 (N_1={n}, N_2={m})"))

    if case == CaseTag.POWER:
        q = problem.q
        if q is None or q < 1:
            report.violations.append(Violation('q >= 1', f"the power case requires a positive integer q, got {q}"))
        elif m > q:
            report.violations.append(Violation('N_2 <= q', f"requires N_2 <= q (N_2={m}, q={q})"))

    if p:
        if case == CaseTag.POWER:
            if problem.q is not None and problem.q >= 1:
                bound = (problem.q + 1) * (n - 1) - 1
                if not p > bound:
                    report.violations.append(Violation(
                        'p > (q+1)(N_1-1)-1', f"requires p > (q+1)(N_1-1)-1 = {bound} (p={p})"
                    ))
        else:
            bound = n + m - 2
            if not p > bound:
                report.violations.append(Violation('p > N_1+N_2-2', f"requires p > N_1+N_2-2 = {bound} (p={p})"))

    if report.violations:
        logger.info({'message': 'hypotheses violated', 'violations': report.messages()})
    return report


def require_hypotheses(problem: OdeProblem) -> None:
    report = check_hypotheses(problem)
    if not report.passed:
        raise HypothesisError('; '.join(report.messages()), report.violations)


def equation_range(problem: OdeProblem) -> range:
    """The k values for which P_{m+k} enters the system."""
    n, m = problem.n, problem.m
    if problem.case == CaseTag.POWER:
        return range(0, (problem.q + 1) * (n - 1) - m)
    return range(0, n - 1)


def _p(problem: OdeProblem, index: int, ring: PolyRing) -> MPoly:
    if problem.case == CaseTag.POWER:
        return p_power(index, problem.q, ring)
    return p_reciprocal(index, ring)


def _working_ring(problem: OdeProblem) -> Tuple[PolyRing, int]:
    ks = equation_range(problem)
    top = problem.m + (ks[-1] if len(ks) else 0)
    return PolyRing(problem.domain, max(top, problem.n)), top


def unreduced_equations(problem: OdeProblem, ring: PolyRing) -> List[MPoly]:
    """P_{m+k} = p_{m+k} + sum_{i<m} sum_{j<=k} C(k, j) (D^j b_i) p_{k-j+i} for every k in range."""
    l2, m = problem.l2, problem.m
    ks = equation_range(problem)
    kmax = ks[-1] if len(ks) else 0
    b_derivs = []
    for i in range(m):
        chain = [l2.a(i)]
        for _ in range(kmax):
            chain.append(chain[-1].derive())
        b_derivs.append(chain)

    equations = []
    for k in ks:
        acc = _p(problem, m + k, ring)
        for i in range(m):
            for j in range(k + 1):
                coefficient = b_derivs[i][j] * comb(k, j)
                if coefficient:
                    acc = acc + _p(problem, k - j + i, ring) * coefficient
        equations.append(acc)
    return equations


def assemble_indexed(problem: OdeProblem) -> List[Tuple[int, MPoly]]:
    """(k, reduced P_{m+k}) pairs; equations that vanish identically are dropped and their k skipped."""
    require_hypotheses(problem)
    n = problem.n
    ring, top = _working_ring(problem)
    forms = reduction_forms(problem.l1, max(top - n + 1, 1), ring)
    small = PolyRing(problem.domain, n - 1)
    system = []
    for k, equation in zip(equation_range(problem), unreduced_equations(problem, ring)):
        reduced = reduce_high_variables(equation, forms, n).restrict(small)
        if not reduced:
            logger.warning({'message': 'assembled equation vanished identically, dropped', 'k': k})
            continue
        system.append((k, reduced))
    logger.info({'message': 'system assembled', 'case': problem.case.value, 'equations': len(system)})
    return system


def assemble_system(problem: OdeProblem) -> List[MPoly]:
    """The reduced equations in y_1..y_{n-1}; all y_j with j >= n are eliminated."""
    return [f for _, f in assemble_indexed(problem)]


def expanded_system(problem: OdeProblem) -> List[MPoly]:
    """The square system in y_1..y_top: relations y_{n+i} - R_i together with the unreduced P_{m+k}."""
    require_hypotheses(problem)
    n = problem.n
    ring, top = _working_ring(problem)
    forms = reduction_forms(problem.l1, max(top - n + 1, 1), ring)
    relations = [ring.gen(form.index) - form.expression for form in forms if form.index <= top]
    return relations + unreduced_equations(problem, ring)


def leading_form_system(system: Sequence[MPoly]) -> List[MPoly]:
    if any(not f for f in system):
        raise DomainError("the system contains the zero polynomial")
    return [leading_form(f) for f in system]


def certify_leading_forms(system: Sequence[MPoly]) -> ZeroDimCertificate:
    """Zero-dimensionality of the leading-form ideal, which carries over to the system itself."""
    forms = leading_form_system(system)
    if not forms:
        raise DomainError("cannot certify an empty system")
    return is_zero_dimensional(buchberger(forms))


def weight_bound_ok(equations: Sequence[Tuple[int, MPoly]], m: int) -> bool:
    """Every term of the equation P_{m+k} has weight <= m+k, attained."""
    return all(max_weight(f) == m + k for k, f in equations)


def necessary_equations(system: Sequence[MPoly]) -> List[int]:
    """Indices left after greedily dropping equations whose removal keeps the leading forms zero-dimensional."""
    forms = leading_form_system(system)
    kept = list(range(len(forms)))
    if not forms or not is_zero_dimensional(buchberger(forms)).certified:
        return kept
    for index in range(len(forms)):
        trial = [i for i in kept if i != index]
        if trial and is_zero_dimensional(buchberger([forms[i] for i in trial])).certified:
            kept = trial
    logger.debug({'message': 'necessary equations', 'kept': kept, 'total': len(forms)})
    return kept
