from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple, Union

from app.algebra.basefield import FunctionFieldDomain, UPoly
from app.algebra.mpoly import MPoly, PolyRing, weight
from app.utils.enums import CaseTag
from app.utils.errors import DomainError, HypothesisError


@dataclass(frozen=True)
class OdeSpec:
    """Monic operator D^N + a_{N-1} D^{N-1} + ... + a_0 over K.

    `coefficients` holds a_{N-1}, ..., a_0 (highest first).
    """

    coefficients: Tuple[Any, ...]
    domain: FunctionFieldDomain

    def __post_init__(self):
        if not self.coefficients:
            raise DomainError("a differential operator needs order >= 1")

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def a(self, i: int) -> Any:
        """Coefficient of D^i; a(N) is the leading 1."""
        if i == self.order:
            return self.domain.one
        if not 0 <= i < self.order:
            raise DomainError(f"operator of order {self.order} has no coefficient of D^{i}")
        return self.coefficients[self.order - 1 - i]

    @classmethod
    def from_operator(cls, op: UPoly) -> 'OdeSpec':
        """Build from an operator written as a polynomial in D over K, dividing out the leading coefficient."""
        if not op:
            raise DomainError("the zero operator annihilates everything")
        if op.degree < 1:
            raise DomainError(f"operator {op} has order 0")
        monic = op.monic()
        domain = op.domain
        return cls(tuple(monic.coefficient(i) for i in range(monic.degree - 1, -1, -1)), domain)

    @classmethod
    def from_coefficients(cls, domain: FunctionFieldDomain, coefficients: List[Any], monic: bool = False) -> 'OdeSpec':
        """Highest-first coefficient list; with monic=True the leading 1 is implied."""
        values = [domain.convert(c) for c in coefficients]
        if monic:
            values = [domain.one] + values
        return cls.from_operator(UPoly(domain, list(reversed(values)), var='D'))

    def as_operator(self) -> UPoly:
        return UPoly(self.domain, [self.a(i) for i in range(self.order + 1)], var='D')

    def coefficient_strings(self) -> List[str]:
        return [str(self.a(i)) for i in range(self.order, -1, -1)]

    def __str__(self) -> str:
        return str(self.as_operator())


@dataclass(frozen=True)
class NonlinearSpec:
    """D^n y / y = g(y_1, ..., y_{n-1}), given through the solved form g."""

    n: int
    solved: MPoly

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"nonlinear order must be >= 2, got {self.n}")

    @property
    def order(self) -> int:
        return self.n

    @property
    def domain(self) -> FunctionFieldDomain:
        return self.solved.domain

    def weight_violations(self) -> List[str]:
        """Terms of g whose weight reaches n or that mention y_j for j >= n."""
        bad = []
        for m in self.solved.terms:
            if weight(m) >= self.n or any(e for e in m[self.n - 1:]):
                bad.append(self.solved.monomial_text(m) or '1')
        return bad

    @classmethod
    def from_homogeneous(cls, h: MPoly, n: int) -> 'NonlinearSpec':
        """From y^{d-1} D^n y = h(y, Dy, ..., D^{n-1} y) with h homogeneous of degree d in z_1..z_n."""
        if h.ring.nvars != n:
            raise DomainError(f"h must be a polynomial in z1..z{n}, got {h.ring}")
        if not h:
            raise DomainError("h must be nonzero")
        if len({sum(m) for m in h.terms}) > 1:
            raise HypothesisError(f"h = {h} is not homogeneous in total degree", ['h homogeneous'])
        bad = [h.monomial_text(m) for m in h.terms if sum(i * e for i, e in enumerate(m)) >= n]
        if bad:
            raise HypothesisError(
                f"monomials {', '.join(bad)} violate sum (i-1)*alpha_i < n", ['sum (i-1)*alpha_i < n']
            )
        ring = PolyRing(h.domain, n - 1)
        solved = MPoly(ring, {m[1:]: c for m, c in h.terms.items()})
        return cls(n, solved)


@dataclass(frozen=True)
class OdeProblem:
    case: CaseTag
    l1: Union[OdeSpec, NonlinearSpec]
    l2: OdeSpec
    q: Optional[int] = None

    @property
    def domain(self) -> FunctionFieldDomain:
        return self.l2.domain

    @property
    def characteristic(self) -> int:
        return self.domain.characteristic

    @property
    def n(self) -> int:
        return self.l1.order

    @property
    def m(self) -> int:
        return self.l2.order


@dataclass(frozen=True)
class ReductionForm:
    """y_index = expression, with expression free of y_j for j >= n."""

    index: int
    expression: MPoly

    def __str__(self) -> str:
        return f"y{self.index} = {self.expression}"


@dataclass(frozen=True)
class Violation:
    condition: str
    message: str


@dataclass
class HypothesisReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def messages(self) -> List[str]:
        return [v.message for v in self.violations]
