from dataclasses import dataclass
from typing import Optional

from app.algebra.basefield import RatFunc, UPoly, upoly_lcm
from app.logdiff.models import NonlinearSpec, OdeSpec
from app.oracle.series import Series, evaluate_at_series, quotient_series
from app.utils.logging import logger


@dataclass(frozen=True)
class VerificationResult:
    passed: bool
    checked: int
    first_failure: Optional[int] = None

    @classmethod
    def of(cls, residual: Series, limit: int) -> 'VerificationResult':
        checked = max(0, min(residual.order, limit))
        first = residual.first_nonzero(checked)
        return cls(passed=first < 0, checked=checked, first_failure=None if first < 0 else first)


def clear_denominators(g: UPoly) -> UPoly:
    """g times the lcm of its coefficient denominators; coefficients become polynomials in x."""
    dens = [c.den for c in g.coeffs if isinstance(c, RatFunc)]
    if not dens:
        return g
    common = dens[0]
    for d in dens[1:]:
        common = upoly_lcm(common, d)
    return g * g.domain.convert(common)


def verify_eliminant(g: UPoly, u: Series, slack: int) -> VerificationResult:
    """Check g(u) = 0 up to (x - x0)^(T - slack), T being the order of u."""
    cleared = clear_denominators(g)
    value = Series.constant(0, u.x0, u.order)
    for c in reversed(cleared.coeffs):
        value = value * u + Series.from_ratfunc(c, u.x0, u.order, name=f"coefficient of {g.var}")
    result = VerificationResult.of(value, u.order - slack)
    logger.debug({'message': 'eliminant verified', 'eliminant': str(g), 'passed': result.passed,
                  'checked': result.checked})
    return result


def apply_operator(spec: OdeSpec, target: Series) -> Series:
    total = target.nth_derivative(spec.order)
    for i in range(spec.order):
        total = total + Series.from_ratfunc(spec.a(i), target.x0, target.order, name=f"a_{i}") * target.nth_derivative(i)
    return total


def verify_annihilator(spec: OdeSpec, target: Series, slack: int) -> VerificationResult:
    """Check spec(target) = 0 up to (x - x0)^(T - slack)."""
    return VerificationResult.of(apply_operator(spec, target), target.order - slack)


def verify_nonlinear(spec: NonlinearSpec, y: Series, slack: int) -> VerificationResult:
    """Check D^n y - y*g(Dy/y, ..., D^{n-1}y/y) = 0 up to (x - x0)^(T - slack)."""
    quotients = [quotient_series(y, j) for j in range(1, spec.n)]
    residual = y.nth_derivative(spec.n) - y * evaluate_at_series(spec.solved, quotients, y.x0, y.order)
    return VerificationResult.of(residual, y.order - slack)

