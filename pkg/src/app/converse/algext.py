"""Arithmetic in K(u) = K[T]/(f) for u a root of a monic squarefree f, with the derivation extended to u."""
from functools import cached_property
from typing import Any, List

from app.algebra.basefield import FunctionFieldDomain, UPoly, upoly_gcd, upoly_xgcd
from app.utils.errors import DomainError, ReducibilityEvidence


class AlgebraicExtension:
    def __init__(self, f: UPoly):
        if not isinstance(f.domain, FunctionFieldDomain):
            raise DomainError(f"f must have coefficients in K = k(x), got {f.domain}")
        if f.degree < 1:
            raise DomainError(f"f must have degree >= 1, got {f}")
        f = f.monic()
        g = upoly_gcd(f, f.derivative()) if f.derivative() else f
        if g.degree > 0:
            raise DomainError(f"f = {f} is not squarefree: gcd(f, df/dT) = {g}")
        self.f = f
        self.domain: FunctionFieldDomain = f.domain
        self.var = f.var

    @property
    def degree(self) -> int:
        return self.f.degree

    def element(self, poly: UPoly) -> 'AlgExtElement':
        return AlgExtElement(self, poly % self.f)

    @property
    def zero(self) -> 'AlgExtElement':
        return AlgExtElement(self, UPoly(self.domain, (), self.var))

    @property
    def one(self) -> 'AlgExtElement':
        return AlgExtElement(self, UPoly(self.domain, (1,), self.var))

    @property
    def generator(self) -> 'AlgExtElement':
        return self.element(UPoly(self.domain, (0, 1), self.var))

    def inverse(self, poly: UPoly) -> UPoly:
        g, s, _ = upoly_xgcd(poly, self.f)
        if g.degree > 0:
            raise ReducibilityEvidence(f"{poly} is not invertible modulo {self.f}: common factor {g}", factor=g)
        return s % self.f

    @cached_property
    def u_prime(self) -> 'AlgExtElement':
        """u' = -(sum a_i' T^i) / f_T(u), from differentiating f(u) = 0."""
        coefficient_derivative = self.f.map_coefficients(self.domain.derive)
        f_t = self.f.derivative()
        return self.element(-(coefficient_derivative * self.inverse(f_t % self.f)))

    def derive(self, a: 'AlgExtElement') -> 'AlgExtElement':
        poly = a.poly
        coefficient_part = poly.map_coefficients(self.domain.derive)
        return self.element(coefficient_part + poly.derivative() * self.u_prime.poly)


class AlgExtElement:
    __slots__ = ('ext', 'poly')

    def __init__(self, ext: AlgebraicExtension, poly: UPoly):
        self.ext = ext
        self.poly = poly

    def _lift(self, other: Any) -> UPoly:
        if isinstance(other, AlgExtElement):
            if other.ext is not self.ext:
                raise DomainError("elements of different extensions")
            return other.poly
        return UPoly(self.ext.domain, (other,), self.ext.var)

    def __add__(self, other):
        return AlgExtElement(self.ext, self.poly + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return AlgExtElement(self.ext, self.poly - self._lift(other))

    def __neg__(self):
        return AlgExtElement(self.ext, -self.poly)

    def __mul__(self, other):
        return self.ext.element(self.poly * self._lift(other))

    __rmul__ = __mul__

    def inverse(self) -> 'AlgExtElement':
        if not self.poly:
            raise DomainError("zero has no inverse")
        return AlgExtElement(self.ext, self.ext.inverse(self.poly))

    def __truediv__(self, other):
        divisor = other if isinstance(other, AlgExtElement) else AlgExtElement(self.ext, self._lift(other))
        return self * divisor.inverse()

    def derive(self) -> 'AlgExtElement':
        return self.ext.derive(self)

    def coordinates(self) -> List[Any]:
        """Coefficients on the basis 1, u, ..., u^{m-1}."""
        return [self.poly.coefficient(i) for i in range(self.ext.degree)]

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgExtElement):
            return self.ext is other.ext and self.poly == other.poly
        return self.poly == self._lift(other)

    def __hash__(self) -> int:
        return hash(self.poly)

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"AlgExtElement({self.poly} mod {self.ext.f})"


def u_derivative(f: UPoly) -> AlgExtElement:
    return AlgebraicExtension(f).u_prime
