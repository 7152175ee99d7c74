from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Optional, Tuple

from app.algebra.basefield import UPoly, upoly_cofactors
from app.algebra.linalg import LinearDependenceFinder
from app.algebra.mpoly import Monomial, mono_divides, pure_power_index
from app.groebner.buchberger import GroebnerBasis, normal_form
from app.utils.errors import DomainError, UnitIdealSignal
from app.utils.logging import logger


@dataclass(frozen=True)
class ZeroDimCertificate:
    """Outcome of the zero-dimensionality test; a failed test is a value, not an exception."""

    certified: bool
    witnesses: Dict[int, int] = field(default_factory=dict)
    dimension: Optional[int] = None
    unit_ideal: bool = False
    missing: Tuple[int, ...] = ()
    standard_monomials: Tuple[Monomial, ...] = ()

    def witness_text(self, prefix: str = 'y') -> Dict[str, str]:
        return {f"{prefix}{j}": f"{prefix}{j}^{d}" if d > 1 else f"{prefix}{j}" for j, d in sorted(self.witnesses.items())}


def is_zero_dimensional(gb: GroebnerBasis) -> ZeroDimCertificate:
    if gb.is_unit:
        return ZeroDimCertificate(certified=True, dimension=0, unit_ideal=True)
    nvars = gb.ring.nvars
    lms = gb.leading_monomials()
    witnesses: Dict[int, int] = {}
    for lm in lms:
        j = pure_power_index(lm)
        if j is not None:
            d = lm[j - 1]
            witnesses[j] = min(d, witnesses.get(j, d))
    missing = tuple(j for j in range(1, nvars + 1) if j not in witnesses)
    if missing:
        return ZeroDimCertificate(certified=False, witnesses=witnesses, missing=missing)
    box = (range(witnesses[j]) for j in range(1, nvars + 1))
    standard = [m for m in product(*box) if not any(mono_divides(lm, m) for lm in lms)]
    standard.sort(key=gb.order.key)
    return ZeroDimCertificate(
        certified=True, witnesses=witnesses, dimension=len(standard), standard_monomials=tuple(standard)
    )


def eliminant(gb: GroebnerBasis, j: int, certificate: Optional[ZeroDimCertificate] = None) -> UPoly:
    """Monic minimal polynomial of y_j modulo the ideal, by dependence of NF(1), NF(y_j), NF(y_j^2), ..."""
    certificate = certificate or is_zero_dimensional(gb)
    if certificate.unit_ideal:
        raise UnitIdealSignal("the ideal is the unit ideal: the variety is empty")
    if not certificate.certified:
        raise DomainError(f"ideal is not zero-dimensional: no pure power for variables {list(certificate.missing)}")
    ring = gb.ring
    y_j = ring.gen(j)
    finder = LinearDependenceFinder(ring.domain, pivot_key=gb.order.key)
    power = ring.one
    for k in range(certificate.dimension + 1):
        relation = finder.add(power.terms)
        if relation is not None:
            result = UPoly(ring.domain, relation, var=f"{ring.prefix}{j}")
            logger.debug({'message': 'eliminant found', 'variable': j, 'degree': result.degree})
            return result
        power = normal_form(power * y_j, gb)
    raise DomainError(f"no dependence among the first {certificate.dimension + 1} powers of y{j}")


def squarefree_part(g: UPoly) -> UPoly:
    """g / gcd(g, g') made monic; when g' = 0 (char p) g is kept as is."""
    if not g:
        raise DomainError("the zero polynomial has no squarefree part")
    dg = g.derivative()
    if not dg:
        if g.degree > 0:
            logger.warning({'message': 'inseparable eliminant, squarefree part not reduced', 'eliminant': str(g)})
        return g.monic()
    return upoly_cofactors(g, dg)[1].monic()


def is_separable(g: UPoly) -> bool:
    return g.degree <= 0 or bool(g.derivative())
