from dataclasses import dataclass
from math import comb, factorial
from typing import Optional

from app.algebra.basefield import UPoly
from app.groebner.buchberger import GroebnerBasis
from app.groebner.zerodim import ZeroDimCertificate, eliminant, is_separable, squarefree_part
from app.utils.enums import CaseTag
from app.utils.errors import DomainError
from app.utils.settings import SETTINGS


@dataclass(frozen=True)
class DegreeBounds:
    bezout: int
    binomial: Optional[int] = None


def degree_bounds(case: CaseTag, n: int, m: int, q: Optional[int] = None, characteristic: int = 0,
                  infinite_perfect: Optional[bool] = None) -> DegreeBounds:
    """Bezout bound on eliminant degrees and the binomial bound on distinct solutions."""
    if case == CaseTag.POWER:
        if not q:
            raise DomainError("the power case bound needs q")
        s = q * (n - 1)
        bezout = factorial(s + n - 2) // factorial(s - 1)
        binomial = comb(s + n - 2, n - 1)
    else:
        bezout = factorial(m + n - 2) // factorial(m - 1)
        binomial = comb(m + n - 2, n - 1)
    perfect = SETTINGS.infinite_perfect_field if infinite_perfect is None else infinite_perfect
    if characteristic and not perfect:
        binomial = None
    return DegreeBounds(bezout, binomial)


@dataclass(frozen=True)
class EliminantReport:
    j: int
    eliminant: UPoly
    squarefree: UPoly
    separable: bool
    bezout_bound: int
    binomial_bound: Optional[int]

    @property
    def degree(self) -> int:
        return self.eliminant.degree

    @property
    def squarefree_degree(self) -> int:
        return self.squarefree.degree

    @property
    def within_bezout(self) -> bool:
        return self.degree <= self.bezout_bound

    @property
    def within_binomial(self) -> Optional[bool]:
        if self.binomial_bound is None:
            return None
        return self.squarefree_degree <= self.binomial_bound


def eliminant_report(gb: GroebnerBasis, j: int, certificate: ZeroDimCertificate, bounds: DegreeBounds) -> EliminantReport:
    g = eliminant(gb, j, certificate)
    return EliminantReport(
        j=j,
        eliminant=g,
        squarefree=squarefree_part(g),
        separable=is_separable(g),
        bezout_bound=bounds.bezout,
        binomial_bound=bounds.binomial,
    )
