from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.logdiff.models import NonlinearSpec
from app.oracle.verify import VerificationResult
from app.pipeline.state import SolveState
from app.utils.enums import TemplateName
from app.utils.template_manager import TemplateManager


class InputsModel(BaseModel):
    """Pydantic object for the problem as the solver understood it"""
    case: str = Field(..., description="reciprocal, power or nonlinear")
    characteristic: int = Field(0, description="Characteristic of the base field")
    l1: str = Field(..., description="Monic l1, or the nonlinear solved form")
    l2: str = Field(..., description="Monic l2")
    q: Optional[int] = Field(None, description="Exponent for the power case")
    n: int = Field(..., description="Order N_1")
    m: int = Field(..., description="Order N_2")


class HypothesesModel(BaseModel):
    """Pydantic object for the hypothesis check"""
    passed: bool = Field(..., description="Whether every condition holds")
    violations: List[str] = Field(default_factory=list, description="Violated conditions")


class CertificateModel(BaseModel):
    """Pydantic object for the zero-dimensionality certificates"""
    leading_forms: List[str] = Field(default_factory=list, description="Leading forms of the assembled system")
    leading_form_certified: Optional[bool] = Field(None, description="Leading-form ideal is zero-dimensional")
    system: List[str] = Field(default_factory=list, description="Assembled equations in y1..y_{n-1}")
    groebner_basis: List[str] = Field(default_factory=list, description="Reduced Groebner basis, grevlex")
    certified: bool = Field(False, description="Assembled system is zero-dimensional")
    dimension: Optional[int] = Field(None, description="Dimension of the quotient ring over K")
    witnesses: Dict[str, str] = Field(default_factory=dict, description="Pure-power leading monomial per variable")


class EliminantModel(BaseModel):
    """Pydantic object for one eliminant"""
    j: int = Field(..., description="Variable index")
    eliminant: str = Field(..., description="Monic polynomial satisfied by D^j y / y")
    degree: int = Field(..., description="Degree of the eliminant")
    squarefree: str = Field(..., description="Squarefree part")
    squarefree_degree: int = Field(..., description="Degree of the squarefree part")
    separable: bool = Field(True, description="False when the derivative vanishes identically")
    within_bezout: bool = Field(..., description="degree <= Bezout bound")
    within_binomial: Optional[bool] = Field(None, description="squarefree degree <= binomial bound")


class BoundsModel(BaseModel):
    """Pydantic object for degree bounds"""
    bezout: int = Field(..., description="Bezout bound on eliminant degrees")
    binomial: Optional[int] = Field(None, description="Binomial bound on distinct solutions")


class CheckModel(BaseModel):
    """Pydantic object for one series check"""
    passed: bool = Field(..., description="Whether every checked coefficient vanished")
    checked: int = Field(..., description="Number of coefficients checked")
    first_failure: Optional[int] = Field(None, description="First nonzero coefficient index")

    @classmethod
    def of(cls, result: VerificationResult) -> 'CheckModel':
        return cls(passed=result.passed, checked=result.checked, first_failure=result.first_failure)


class EliminantCheckModel(CheckModel):
    j: int = Field(..., description="Variable index")


class OracleModel(BaseModel):
    """Pydantic object for the series verification"""
    ran: bool = Field(False, description="Whether the oracle ran")
    skipped_reason: Optional[str] = Field(None, description="Why the oracle did not run")
    x0: Optional[str] = Field(None, description="Expansion point")
    order: Optional[int] = Field(None, description="Truncation order T")
    slack: Optional[int] = Field(None, description="Unchecked top coefficients")
    l1: Optional[CheckModel] = Field(None, description="l1 applied to y")
    l2: Optional[CheckModel] = Field(None, description="l2 applied to 1/y or y^q")
    eliminants: List[EliminantCheckModel] = Field(default_factory=list, description="Per-j eliminant checks")
    passed: bool = Field(True, description="All checks passed")


class SolveReport(BaseModel):
    """Pydantic object for the solve report"""
    inputs: InputsModel
    hypotheses: HypothesesModel
    certificate: Optional[CertificateModel] = None
    eliminants: List[EliminantModel] = Field(default_factory=list)
    bounds: Optional[BoundsModel] = None
    unit_ideal: bool = False
    necessary_equations: Optional[List[int]] = None
    weight_bound_ok: Optional[bool] = None
    groebner_verified: Optional[bool] = None
    oracle: Optional[OracleModel] = None
    timings: Dict[str, float] = Field(default_factory=dict)

    def comparison_form(self) -> str:
        """JSON without timings; identical problems give identical text."""
        return self.model_dump_json(exclude={'timings'}, indent=2)

    def render_text(self) -> str:
        return TemplateManager().render_template(TemplateName.SOLVE_REPORT, report=self)

    @classmethod
    def from_state(cls, state: SolveState) -> 'SolveReport':
        problem = state.problem
        l1 = problem.l1
        l1_text = f"y{l1.n} = {l1.solved}" if isinstance(l1, NonlinearSpec) else str(l1)
        inputs = InputsModel(case=problem.case.value, characteristic=problem.characteristic, l1=l1_text,
                             l2=str(problem.l2), q=problem.q, n=problem.n, m=problem.m)
        hypotheses = HypothesesModel(
            passed=state.hypotheses.passed if state.hypotheses else False,
            violations=state.hypotheses.messages() if state.hypotheses else [],
        )
        report = cls(inputs=inputs, hypotheses=hypotheses, unit_ideal=state.unit_ideal,
                     necessary_equations=state.necessary_equations, weight_bound_ok=state.weight_bound_ok,
                     groebner_verified=state.groebner_verified, timings=dict(state.timings))
        if state.system:
            certificate = state.certificate
            report.certificate = CertificateModel(
                leading_forms=[str(f) for f in state.leading_forms],
                leading_form_certified=state.leading_certificate.certified if state.leading_certificate else None,
                system=[str(f) for f in state.system],
                groebner_basis=[str(g) for g in state.groebner] if state.groebner else [],
                certified=bool(certificate and certificate.certified and not certificate.unit_ideal),
                dimension=certificate.dimension if certificate else None,
                witnesses=certificate.witness_text() if certificate else {},
            )
        if state.bounds:
            report.bounds = BoundsModel(bezout=state.bounds.bezout, binomial=state.bounds.binomial)
        report.eliminants = [
            EliminantModel(j=e.j, eliminant=str(e.eliminant), degree=e.degree, squarefree=str(e.squarefree),
                           squarefree_degree=e.squarefree_degree, separable=e.separable,
                           within_bezout=e.within_bezout, within_binomial=e.within_binomial)
            for e in state.eliminants
        ]
        outcome = state.oracle
        report.oracle = OracleModel(
            ran=outcome.ran, skipped_reason=outcome.skipped_reason, x0=outcome.x0, order=outcome.order,
            slack=outcome.slack,
            l1=CheckModel.of(outcome.l1) if outcome.l1 else None,
            l2=CheckModel.of(outcome.l2) if outcome.l2 else None,
            eliminants=[EliminantCheckModel(j=j, **CheckModel.of(r).model_dump())
                        for j, r in sorted(outcome.eliminants.items())],
            passed=outcome.passed,
        )
        return report


class ConverseReport(BaseModel):
    """Pydantic object for the converse construction"""
    f: str = Field(..., description="Monic squarefree polynomial in T satisfied by y'/y")
    l1: str = Field(..., description="Operator annihilating y")
    l2: str = Field(..., description="Operator annihilating 1/y")
    l1_coefficients: List[str] = Field(..., description="l1 coefficients, highest order first")
    l2_coefficients: List[str] = Field(..., description="l2 coefficients, highest order first")

    def render_text(self) -> str:
        return TemplateManager().render_template(TemplateName.CONVERSE_REPORT, report=self)


class VerifyReport(BaseModel):
    """Pydantic object for re-verification of stored eliminants"""
    x0: str = Field(..., description="Expansion point")
    order: int = Field(..., description="Truncation order T")
    slack: int = Field(..., description="Unchecked top coefficients")
    eliminants: List[EliminantCheckModel] = Field(default_factory=list, description="Per-j checks")

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.eliminants)

    def render_text(self) -> str:
        return TemplateManager().render_template(TemplateName.VERIFY_REPORT, report=self)
