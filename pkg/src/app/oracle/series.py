"""Exact truncated power series in (x - x0) with rational coefficients."""
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Any, List, Sequence, Tuple

from app.algebra.basefield import PrimeField, RatFunc, UPoly
from app.algebra.mpoly import MPoly
from app.logdiff.models import NonlinearSpec, OdeSpec
from app.utils.errors import DomainError, SingularPointError


@dataclass(frozen=True)
class Series:
    """c_0 + c_1 (x-x0) + ... + c_{T-1} (x-x0)^{T-1} + O((x-x0)^T)."""

    x0: Fraction
    coeffs: Tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    @classmethod
    def constant(cls, value: Any, x0: Fraction, order: int) -> 'Series':
        return cls(Fraction(x0), (Fraction(value),) + (Fraction(0),) * (order - 1))

    @classmethod
    def from_upoly(cls, p: UPoly, x0: Fraction, order: int) -> 'Series':
        """Taylor shift of a polynomial over Q to the point x0."""
        coeffs = []
        for k in range(order):
            total = Fraction(0)
            for i in range(k, len(p.coeffs)):
                total += p.coeffs[i] * comb(i, k) * Fraction(x0) ** (i - k)
            coeffs.append(total)
        return cls(Fraction(x0), tuple(coeffs))

    @classmethod
    def from_ratfunc(cls, f: Any, x0: Fraction, order: int, name: str = '') -> 'Series':
        if not isinstance(f, RatFunc):
            return cls.constant(f, x0, order)
        if isinstance(f.base.one, PrimeField):
            raise DomainError("series expansion needs characteristic 0 coefficients")
        if not f.den.evaluate(Fraction(x0)):
            label = name or str(f)
            raise SingularPointError(
                f"coefficient {label} = {f} has a pole at x0 = {x0}", coefficient=label, point=x0
            )
        return cls.from_upoly(f.num, x0, order) / cls.from_upoly(f.den, x0, order)

    def _check(self, other: 'Series') -> None:
        if other.x0 != self.x0:
            raise DomainError(f"series at different points {self.x0} and {other.x0}")

    def _lift(self, other: Any) -> 'Series':
        if isinstance(other, Series):
            self._check(other)
            return other
        return Series.constant(other, self.x0, self.order)

    def __add__(self, other):
        b = self._lift(other)
        n = min(self.order, b.order)
        return Series(self.x0, tuple(self.coeffs[k] + b.coeffs[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Series(self.x0, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Series):
            value = Fraction(other)
            return Series(self.x0, tuple(c * value for c in self.coeffs))
        self._check(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return Series(self.x0, tuple(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n)))

    __rmul__ = __mul__

    def inverse(self) -> 'Series':
        if not self.coeffs or not self.coeffs[0]:
            raise DomainError("series with zero constant term has no inverse")
        c0 = self.coeffs[0]
        out = [1 / c0]
        for k in range(1, self.order):
            s = sum((self.coeffs[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
            out.append(-s / c0)
        return Series(self.x0, tuple(out))

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Series.constant(1, self.x0, self.order)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self) -> 'Series':
        return Series(self.x0, tuple(self.coeffs[k] * k for k in range(1, self.order)))

    def nth_derivative(self, n: int) -> 'Series':
        s = self
        for _ in range(n):
            s = s.derivative()
        return s

    def first_nonzero(self, limit: int) -> int:
        """Index of the first nonzero coefficient below `limit`, or -1."""
        for k in range(min(limit, self.order)):
            if self.coeffs[k]:
                return k
        return -1

    def __str__(self) -> str:
        shown = ', '.join(str(c) for c in self.coeffs[:6])
        return f"Series(x0={self.x0}, [{shown}{', ...' if self.order > 6 else ''}], O^{self.order})"


@dataclass(frozen=True)
class InitialConditions:
    """y(x0), y'(x0), ..., y^{(n-1)}(x0)."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values or not self.values[0]:
            raise DomainError("initial conditions need y(x0) != 0")

    @classmethod
    def of(cls, values: Sequence[Any]) -> 'InitialConditions':
        return cls(tuple(Fraction(v) for v in values))


def _require_char0(domain: Any) -> None:
    if domain.characteristic:
        raise DomainError("series solutions are only available in characteristic 0")


def series_solve(l1: OdeSpec, ics: InitialConditions, x0: Any, order: int) -> Series:
    """The jet of the solution of l1(y) = 0 with the given initial conditions."""
    _require_char0(l1.domain)
    n = l1.order
    if len(ics.values) != n:
        raise DomainError(f"an order-{n} operator needs {n} initial conditions, got {len(ics.values)}")
    x0 = Fraction(x0)
    a = [Series.from_ratfunc(l1.a(i), x0, order, name=f"a_{i}") for i in range(n)]
    c: List[Fraction] = [ics.values[k] / factorial(k) for k in range(n)] + [Fraction(0)] * max(order - n, 0)
    for k in range(order - n):
        # coefficient k of sum_i a_i y^(i); y^(i) has coefficient (k-l+i)!/(k-l)! * c_{k-l+i} at k-l
        s = Fraction(0)
        for i in range(n):
            for l in range(k + 1):
                idx = k - l + i
                s += a[i][l] * c[idx] * (factorial(idx) // factorial(k - l))
        c[k + n] = -s * factorial(k) / factorial(k + n)
    return Series(x0, tuple(c[:order]))


def evaluate_at_series(poly: MPoly, values: Sequence[Series], x0: Fraction, order: int) -> Series:
    """poly(values) with K-coefficients expanded at x0."""
    total = Series.constant(0, x0, order)
    for m, c in poly.terms.items():
        term = Series.from_ratfunc(c, x0, order)
        for i, e in enumerate(m):
            if e:
                term = term * values[i] ** e
        total = total + term
    return total


def series_solve_nonlinear(spec: NonlinearSpec, ics: InitialConditions, x0: Any, order: int) -> Series:
    """The jet of y with D^n y = y * g(Dy/y, ..., D^{n-1}y/y)."""
    _require_char0(spec.domain)
    n = spec.n
    if len(ics.values) != n:
        raise DomainError(f"an order-{n} equation needs {n} initial conditions, got {len(ics.values)}")
    x0 = Fraction(x0)
    c: List[Fraction] = [ics.values[k] / factorial(k) for k in range(n)] + [Fraction(0)] * max(order - n, 0)
    for k in range(order - n):
        y = Series(x0, tuple(c[:k + n]))
        inv = y.inverse()
        quotients = [y.nth_derivative(j) * inv for j in range(1, n)]
        rhs = y * evaluate_at_series(spec.solved, quotients, x0, k + 1)
        c[k + n] = rhs[k] * factorial(k) / factorial(k + n)
    return Series(x0, tuple(c[:order]))


def logderiv_series(y: Series) -> Series:
    """y'/y, one coefficient shorter than y."""
    return y.derivative() * y.inverse()


def quotient_series(y: Series, j: int) -> Series:
    """D^j y / y."""
    return y.nth_derivative(j) * y.inverse()


def suggest_expansion_point(coefficients: Sequence[Any]) -> Fraction:
    """Smallest nonnegative integer where no coefficient has a pole."""
    dens = [c.den for c in coefficients if isinstance(c, RatFunc) and c.den.degree > 0]
    limit = sum(d.degree for d in dens) + 1
    for candidate in range(limit + 1):
        if all(d.evaluate(Fraction(candidate)) for d in dens):
            return Fraction(candidate)
    raise DomainError("no ordinary point found among small integers")
