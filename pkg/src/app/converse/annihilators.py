from dataclasses import dataclass

from app.algebra.basefield import UPoly
from app.algebra.linalg import LinearDependenceFinder
from app.converse.algext import AlgebraicExtension
from app.logdiff.models import OdeSpec
from app.utils.errors import DomainError
from app.utils.logging import logger


@dataclass(frozen=True)
class ConverseResult:
    l1: OdeSpec
    l2: OdeSpec


def _annihilator(f: UPoly, sign: int) -> OdeSpec:
    """First K-linear dependence among p_0 = 1, p_{k+1} = delta(p_k) + sign*u*p_k."""
    ext = AlgebraicExtension(f)
    u = ext.generator
    finder = LinearDependenceFinder(ext.domain)
    p = ext.one
    for k in range(ext.degree + 1):
        vector = {i: c for i, c in enumerate(p.coordinates()) if c}
        relation = finder.add(vector)
        if relation is not None:
            spec = OdeSpec.from_operator(UPoly(ext.domain, relation, var='D'))
            logger.debug({'message': 'annihilator found', 'order': spec.order, 'sign': sign})
            return spec
        p = p.derive() + u * p * sign
    raise DomainError(f"no dependence among the first {ext.degree + 1} derivatives for f = {ext.f}")


def reciprocal_annihilator(f: UPoly) -> OdeSpec:
    """Operator annihilating 1/y when y'/y is a root of f."""
    return _annihilator(f, -1)


def forward_annihilator(f: UPoly) -> OdeSpec:
    """Operator annihilating y when y'/y is a root of f."""
    return _annihilator(f, 1)


def converse(f: UPoly) -> ConverseResult:
    return ConverseResult(l1=forward_annihilator(f), l2=reciprocal_annihilator(f))
