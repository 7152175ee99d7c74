from typing import Any, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from app.algebra.basefield import FunctionFieldDomain, rational_function_field
from app.cli.parser import parse_mpoly, parse_operator, parse_ratfunc
from app.logdiff.models import NonlinearSpec, OdeProblem, OdeSpec
from app.pipeline.run import OracleConfig
from app.utils.enums import CaseTag
from app.utils.errors import DomainError, ParseError
from app.utils.settings import SETTINGS
from app.utils.utilities import Utilities


class FieldSpec(BaseModel):
    """Pydantic object for the base field k of K = k(x)"""
    characteristic: int = Field(0, description="0 for Q, or a prime p for GF(p)")


class OperatorSpec(BaseModel):
    """Pydantic object for an operator given by its coefficient expressions"""
    order: int = Field(..., description="Operator order N")
    coefficients: List[str] = Field(..., description="Highest order first; N entries imply a leading 1")


class NonlinearBlock(BaseModel):
    """Pydantic object for the nonlinear equation D^n y = y*g(y1, ..., y_{n-1})"""
    n: int = Field(..., description="Order of the nonlinear equation")
    solved: Optional[str] = Field(None, description="The solved form g in y1..y_{n-1}")
    h: Optional[str] = Field(None, description="Homogeneous h in z1..zn with y^(d-1) D^n y = h(y, Dy, ...)")


class OracleBlock(BaseModel):
    """Pydantic object for the series verification settings"""
    x0: Optional[Union[int, str]] = Field(None, description="Expansion point; suggested when omitted")
    ics: List[Union[int, str]] = Field(..., description="y(x0), y'(x0), ..., y^(n-1)(x0)")
    order: Optional[int] = Field(None, description="Truncation order T")
    slack: Optional[int] = Field(None, description="Coefficients not checked at the top of the series")


OperatorInput = Union[str, List[str], OperatorSpec]


class ProblemFile(BaseModel):
    """Pydantic object for a solve problem document"""
    model_config = ConfigDict(populate_by_name=True)

    base_field: FieldSpec = Field(default_factory=FieldSpec, alias='field', description="Base field")
    case: CaseTag = Field(..., description="reciprocal, power or nonlinear")
    l1: Optional[OperatorInput] = Field(None, description="Operator annihilating y (linear cases)")
    l2: OperatorInput = Field(..., description="Operator annihilating 1/y or y^q")
    q: Optional[int] = Field(None, description="Exponent for the power case")
    nonlinear: Optional[NonlinearBlock] = Field(None, description="Nonlinear equation for y")
    oracle: Optional[OracleBlock] = Field(None, description="Series verification settings")

    @classmethod
    def loads(cls, text: str) -> 'ProblemFile':
        try:
            return cls.model_validate_json(text)
        except ValidationError as error:
            raise ParseError(f"invalid problem file: {error}") from error

    @classmethod
    def load(cls, path: str) -> 'ProblemFile':
        return cls.loads(Utilities.read_text(path))

    def domain(self, characteristic: Optional[int] = None) -> FunctionFieldDomain:
        p = self.base_field.characteristic if characteristic is None else characteristic
        try:
            return rational_function_field(p)
        except DomainError as error:
            raise ParseError(error.message) from error

    def to_problem(self, characteristic: Optional[int] = None) -> OdeProblem:
        domain = self.domain(characteristic)
        l2 = operator_from_input(self.l2, domain)
        if self.case == CaseTag.NONLINEAR:
            if self.nonlinear is None:
                raise ParseError("the nonlinear case needs a 'nonlinear' block")
            l1 = nonlinear_from_block(self.nonlinear, domain)
        else:
            if self.l1 is None:
                raise ParseError(f"the {self.case.value} case needs 'l1'")
            l1 = operator_from_input(self.l1, domain)
        if self.case == CaseTag.POWER and self.q is None:
            raise ParseError("the power case needs 'q'")
        return OdeProblem(case=self.case, l1=l1, l2=l2, q=self.q)

    def oracle_config(self) -> Optional[OracleConfig]:
        if self.oracle is None:
            return None
        block = self.oracle
        return OracleConfig(
            ics=tuple(Utilities.to_fraction(v) for v in block.ics),
            x0=None if block.x0 is None else Utilities.to_fraction(block.x0),
            order=block.order or SETTINGS.oracle_order,
            slack=SETTINGS.oracle_slack if block.slack is None else block.slack,
        )


def operator_from_input(value: OperatorInput, domain: FunctionFieldDomain) -> OdeSpec:
    if isinstance(value, str):
        return parse_operator(value, domain)
    if isinstance(value, OperatorSpec):
        coefficients = [parse_ratfunc(c, domain) for c in value.coefficients]
        if len(coefficients) == value.order:
            return _from_coefficients(domain, coefficients, monic=True)
        if len(coefficients) == value.order + 1:
            return _from_coefficients(domain, coefficients, monic=False)
        raise ParseError(f"an order-{value.order} operator needs {value.order} or {value.order + 1} coefficients, "
                         f"got {len(coefficients)}")
    return _from_coefficients(domain, [parse_ratfunc(c, domain) for c in value], monic=False)


def _from_coefficients(domain: FunctionFieldDomain, coefficients: List[Any], monic: bool) -> OdeSpec:
    try:
        return OdeSpec.from_coefficients(domain, coefficients, monic=monic)
    except DomainError as error:
        raise ParseError(error.message) from error


def nonlinear_from_block(block: NonlinearBlock, domain: FunctionFieldDomain) -> NonlinearSpec:
    if (block.solved is None) == (block.h is None):
        raise ParseError("the nonlinear block needs exactly one of 'solved' and 'h'")
    if block.n < 2:
        raise ParseError(f"nonlinear order must be >= 2, got {block.n}")
    if block.solved is not None:
        return NonlinearSpec(block.n, parse_mpoly(block.solved, domain, prefix='y', nvars=block.n - 1))
    return NonlinearSpec.from_homogeneous(parse_mpoly(block.h, domain, prefix='z', nvars=block.n), block.n)
