"""Exact coefficient arithmetic: Q, GF(p), dense univariate polynomials and
rational functions K = k(x) with the derivation d/dx.

Every value here is immutable after construction. Elements of all domains
support the Python number operators against each other and against ints,
and test as false exactly when they are zero.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Tuple

from sympy import isprime

from app.algebra.polygcd import gcd_cofactors
from app.utils.errors import DomainError
from app.utils.settings import SETTINGS

Rat = Fraction


@lru_cache(maxsize=128)
def require_prime(modulus: int) -> int:
    if not isinstance(modulus, int) or modulus < 2:
        raise DomainError(f"GF(p) modulus must be an integer >= 2, got {modulus!r}")
    if modulus > SETTINGS.max_prime:
        raise DomainError(f"GF(p) modulus {modulus} exceeds the word-size limit {SETTINGS.max_prime}")
    if not isprime(modulus):
        raise DomainError(f"GF(p) modulus {modulus} is not prime")
    return modulus


class PrimeField:
    """Element of GF(p); `value` is kept reduced into [0, p)."""

    __slots__ = ('value', 'modulus')

    def __init__(self, value: int, modulus: int):
        require_prime(modulus)
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other: Any) -> Optional[int]:
        if isinstance(other, PrimeField):
            if other.modulus != self.modulus:
                raise DomainError(f"cannot mix GF({self.modulus}) and GF({other.modulus})")
            return other.value
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return other % self.modulus
        if isinstance(other, Fraction):
            den = other.denominator % self.modulus
            if den == 0:
                raise DomainError(f"{other} has no image in GF({self.modulus})")
            return other.numerator * pow(den, -1, self.modulus) % self.modulus
        return None

    def _new(self, value: int) -> 'PrimeField':
        return PrimeField(value, self.modulus)

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self._new(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self._new(self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self._new(v - self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self._new(self.value * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise DomainError(f"division by zero in GF({self.modulus})")
        return self._new(self.value * pow(v, -1, self.modulus))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self._new(v) / self

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, exponent: int):
        if exponent < 0:
            if self.value == 0:
                raise DomainError(f"division by zero in GF({self.modulus})")
            return self._new(pow(pow(self.value, -1, self.modulus), -exponent, self.modulus))
        return self._new(pow(self.value, exponent, self.modulus))

    def inverse(self) -> 'PrimeField':
        return self ** -1

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        try:
            v = self._coerce(other)
        except DomainError:
            return False
        return v is not None and v == self.value

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"PrimeField({self.value}, {self.modulus})"


class Domain(ABC):
    """A computable field of coefficients."""

    characteristic: int = 0

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def convert(self, value: Any) -> Any:
        """Coerce `value` into this domain; raises TypeError when it has no meaning here."""

    def derive(self, value: Any) -> Any:
        return self.zero


@dataclass(frozen=True)
class RationalDomain(Domain):
    characteristic: int = 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def convert(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        raise TypeError(f"cannot convert {type(value).__name__} into Q")

    def __str__(self) -> str:
        return 'QQ'


@dataclass(frozen=True)
class PrimeDomain(Domain):
    modulus: int = 2

    def __post_init__(self):
        require_prime(self.modulus)

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def zero(self) -> PrimeField:
        return PrimeField(0, self.modulus)

    @property
    def one(self) -> PrimeField:
        return PrimeField(1, self.modulus)

    def convert(self, value: Any) -> PrimeField:
        if isinstance(value, PrimeField):
            if value.modulus != self.modulus:
                raise DomainError(f"cannot mix GF({self.modulus}) and GF({value.modulus})")
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return self.one * value
        raise TypeError(f"cannot convert {type(value).__name__} into GF({self.modulus})")

    def __str__(self) -> str:
        return f"GF({self.modulus})"


@dataclass(frozen=True)
class FunctionFieldDomain(Domain):
    """K = k(x) with the derivation d/dx."""

    base: Domain = RationalDomain()
    var: str = 'x'

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def zero(self) -> 'RatFunc':
        return RatFunc.constant(self.base.zero, self.base, self.var)

    @property
    def one(self) -> 'RatFunc':
        return RatFunc.constant(self.base.one, self.base, self.var)

    @property
    def x(self) -> 'RatFunc':
        return RatFunc(UPoly(self.base, (0, 1), self.var), UPoly(self.base, (1,), self.var))

    def convert(self, value: Any) -> 'RatFunc':
        if isinstance(value, RatFunc):
            if value.base != self.base:
                raise DomainError(f"cannot mix {value.base}(x) and {self.base}(x)")
            return value
        if isinstance(value, UPoly) and value.domain == self.base and value.var == self.var:
            return RatFunc(value, UPoly(self.base, (1,), self.var))
        return RatFunc.constant(self.base.convert(value), self.base, self.var)

    def derive(self, value: 'RatFunc') -> 'RatFunc':
        return value.derive()

    def __str__(self) -> str:
        return f"{self.base}({self.var})"


QQ = RationalDomain()


def base_domain(characteristic: int = 0) -> Domain:
    return QQ if characteristic == 0 else PrimeDomain(characteristic)


def rational_function_field(characteristic: int = 0) -> FunctionFieldDomain:
    return FunctionFieldDomain(base_domain(characteristic))


def coefficient_parts(c: Any) -> Tuple[bool, Optional[str]]:
    """Split a coefficient into (negative, magnitude text); text is None for a unit magnitude."""
    if isinstance(c, RatFunc):
        if c.is_constant:
            return coefficient_parts(c.constant_value)
        lead = c.num.lc
        negative = isinstance(lead, Fraction) and lead < 0
        magnitude = -c if negative else c
        text = str(magnitude)
        if c.num.term_count > 1 or not c.is_polynomial:
            text = f"({text})"
        return negative, text
    if isinstance(c, Fraction):
        magnitude = abs(c)
        return c < 0, None if magnitude == 1 else str(magnitude)
    if isinstance(c, PrimeField):
        return False, None if c.value == 1 else str(c.value)
    return False, str(c)


def render_terms(terms: Iterable[Tuple[Any, str]]) -> str:
    """Canonical "a*m1 - b*m2 + ..." text for (coefficient, monomial text) pairs, highest first."""
    parts: List[str] = []
    for coefficient, mono in terms:
        negative, text = coefficient_parts(coefficient)
        if text is None:
            body = mono or '1'
        elif mono:
            body = f"{text}*{mono}"
        else:
            body = text
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return ''.join(parts) or '0'


class UPoly:
    """Dense univariate polynomial over a Domain; coeffs[i] multiplies var^i."""

    __slots__ = ('domain', 'coeffs', 'var')

    def __init__(self, domain: Domain, coeffs: Iterable[Any] = (), var: str = 'x'):
        cs = [domain.convert(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.domain = domain
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, domain: Domain, coeffs: List[Any], var: str) -> 'UPoly':
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        poly = cls.__new__(cls)
        poly.domain = domain
        poly.coeffs = tuple(coeffs)
        poly.var = var
        return poly

    @classmethod
    def constant(cls, domain: Domain, value: Any, var: str = 'x') -> 'UPoly':
        return cls(domain, (value,), var)

    @classmethod
    def monomial(cls, domain: Domain, value: Any, degree: int, var: str = 'x') -> 'UPoly':
        return cls(domain, [domain.zero] * degree + [value], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Any:
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coefficient(self, i: int) -> Any:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.domain.zero

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.domain == other.domain and self.var == other.var and self.coeffs == other.coeffs
        poly = self._coerce(other)
        return poly is not None and poly.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.domain, self.var, self.coeffs))

    def _coerce(self, other: Any) -> Optional['UPoly']:
        if isinstance(other, UPoly):
            if other.domain == self.domain and other.var == self.var:
                return other
            if other.is_constant and other.domain == self.domain:
                return UPoly._raw(self.domain, list(other.coeffs), self.var)
        try:
            value = self.domain.convert(other)
        except TypeError:
            return None
        return UPoly._raw(self.domain, [value], self.var)

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a, b = self.coeffs, b.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly._raw(self.domain, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw(self.domain, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not self.coeffs or not b.coeffs:
            return UPoly._raw(self.domain, [], self.var)
        zero = self.domain.zero
        out = [zero] * (len(self.coeffs) + len(b.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(b.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return UPoly._raw(self.domain, out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not b:
            raise DomainError("division by the zero polynomial")
        if not b.is_constant:
            raise DomainError(f"division by the non-constant polynomial {b}")
        inv = self.domain.one / b.coeffs[0]
        return UPoly._raw(self.domain, [c * inv for c in self.coeffs], self.var)

    def __rtruediv__(self, other):
        a = self._coerce(other)
        if a is None:
            return NotImplemented
        return a / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise DomainError("negative powers of polynomials are not polynomials")
        result = UPoly._raw(self.domain, [self.domain.one], self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not b:
            raise DomainError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = b.degree
        inv_lc = self.domain.one / b.lc
        quot = [self.domain.zero] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if not c:
                continue
            factor = c * inv_lc
            quot[k] = factor
            for i, bc in enumerate(b.coeffs):
                rem[k + i] = rem[k + i] - factor * bc
        return UPoly._raw(self.domain, quot, self.var), UPoly._raw(self.domain, rem[:db] if db > 0 else [], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> 'UPoly':
        if not self.coeffs:
            return self
        return self / self.lc

    def derivative(self) -> 'UPoly':
        """Formal derivative with respect to `var`."""
        return UPoly._raw(self.domain, [c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def map_coefficients(self, fn) -> 'UPoly':
        return UPoly._raw(self.domain, [fn(c) for c in self.coeffs], self.var)

    def with_var(self, var: str) -> 'UPoly':
        return UPoly._raw(self.domain, list(self.coeffs), var)

    def evaluate(self, point: Any) -> Any:
        acc = self.domain.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    __call__ = evaluate

    def terms_text(self) -> List[Tuple[Any, str]]:
        pairs = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = '' if k == 0 else self.var if k == 1 else f"{self.var}^{k}"
            pairs.append((c, mono))
        return pairs

    @property
    def term_count(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __str__(self) -> str:
        return render_terms(self.terms_text())

    def __repr__(self) -> str:
        return f"UPoly({self}, over {self.domain})"


def _plain(c: Any) -> Any:
    return c.value if isinstance(c, PrimeField) else c


def _from_plain(terms: Dict[Tuple[int, ...], Any], domain: Domain, var: str, axis: int = 0) -> UPoly:
    size = max((m[axis] for m in terms), default=-1) + 1
    coeffs = [domain.zero] * size
    for m, c in terms.items():
        coeffs[m[axis]] = domain.convert(c)
    return UPoly._raw(domain, coeffs, var)


def _clear_denominators(f: UPoly) -> Tuple[UPoly, Dict[Tuple[int, int], Any]]:
    """(L, F) with L the monic lcm of the coefficient denominators and F = L*f in k[T, x] as (T, x) exponents."""
    common = UPoly._raw(f.domain.base, [f.domain.base.one], f.domain.var)
    for c in f.coeffs:
        if c.den.degree > 0:
            common = upoly_lcm(common, c.den)
    cleared = {}
    for i, c in enumerate(f.coeffs):
        for j, v in enumerate((c.num * (common // c.den)).coeffs):
            if v:
                cleared[(i, j)] = _plain(v)
    return common, cleared


def _from_bivariate(terms: Dict[Tuple[int, int], Any], domain: 'FunctionFieldDomain', var: str) -> UPoly:
    rows: Dict[int, Dict[Tuple[int, ...], Any]] = {}
    for (i, j), c in terms.items():
        rows.setdefault(i, {})[(j,)] = c
    coeffs = [domain.zero] * (max(rows, default=-1) + 1)
    for i, row in rows.items():
        coeffs[i] = domain.convert(_from_plain(row, domain.base, domain.var))
    return UPoly._raw(domain, coeffs, var)


def upoly_cofactors(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly, UPoly]:
    """(g, a/g, b/g) with g the monic gcd of a and b.

    Over k(x) both inputs are cleared into k[x][T] first, so the gcd runs on
    polynomials in two variables instead of rational function coefficients.
    """
    if not a and not b:
        raise DomainError("gcd(0, 0) is undefined")
    domain, var = a.domain, a.var
    one = UPoly._raw(domain, [domain.one], var)
    if (a and a.is_constant) or (b and b.is_constant):
        return one, a, b
    if not b:
        return a.monic(), UPoly._raw(domain, [a.lc], var), b
    if not a:
        return b.monic(), a, UPoly._raw(domain, [b.lc], var)

    p = domain.characteristic
    if isinstance(domain, FunctionFieldDomain):
        la, ta = _clear_denominators(a)
        lb, tb = _clear_denominators(b)
        h, ca, cb = gcd_cofactors(ta, tb, p, 2)
        g = _from_bivariate(h, domain, var)
        lead = g.lc
        return (g / lead,
                _from_bivariate(ca, domain, var) * (lead / domain.convert(la)),
                _from_bivariate(cb, domain, var) * (lead / domain.convert(lb)))

    h, ca, cb = gcd_cofactors(
        {(i,): _plain(c) for i, c in enumerate(a.coeffs) if c},
        {(i,): _plain(c) for i, c in enumerate(b.coeffs) if c},
        p, 1,
    )
    g = _from_plain(h, domain, var)
    lead = g.lc
    return g / lead, _from_plain(ca, domain, var) * lead, _from_plain(cb, domain, var) * lead


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic greatest common divisor."""
    return upoly_cofactors(a, b)[0]


def upoly_xgcd(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly, UPoly]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    if not a and not b:
        raise DomainError("gcd(0, 0) is undefined")
    zero = UPoly._raw(a.domain, [], a.var)
    one = UPoly._raw(a.domain, [a.domain.one], a.var)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = a.domain.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def upoly_lcm(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return UPoly._raw(a.domain, [], a.var)
    return ((a * b) // upoly_gcd(a, b)).monic()


class RatFunc:
    """Canonical num/den over k: gcd(num, den) = 1, den monic, zero is 0/1.

    Build values through `ratfunc_normalize` unless the pair is already canonical.
    """

    __slots__ = ('num', 'den')

    def __init__(self, num: UPoly, den: UPoly):
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, value: Any, base: Domain = QQ, var: str = 'x') -> 'RatFunc':
        return cls(UPoly(base, (value,), var), UPoly._raw(base, [base.one], var))

    @property
    def base(self) -> Domain:
        return self.num.domain

    @property
    def var(self) -> str:
        return self.num.var

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.degree == 0

    @property
    def constant_value(self) -> Any:
        if not self.is_constant:
            raise DomainError(f"{self} is not a constant")
        return self.num.coefficient(0)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def _coerce(self, other: Any) -> Optional['RatFunc']:
        if isinstance(other, RatFunc):
            if other.base != self.base:
                raise DomainError(f"cannot mix {other.base}(x) and {self.base}(x)")
            return other
        if isinstance(other, UPoly):
            if other.domain == self.base and other.var == self.var:
                return RatFunc(other, self._one_poly())
            return None
        try:
            value = self.base.convert(other)
        except TypeError:
            return None
        return RatFunc(UPoly._raw(self.base, [value], self.var), self._one_poly())

    def _one_poly(self) -> UPoly:
        return UPoly._raw(self.base, [self.base.one], self.var)

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if self.den == b.den:
            if self.den.degree == 0:
                return RatFunc(self.num + b.num, self.den)
            return ratfunc_normalize(self.num + b.num, self.den)
        return ratfunc_normalize(self.num * b.den + b.num * self.den, self.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not self.num or not b.num:
            return RatFunc(UPoly._raw(self.base, [], self.var), self._one_poly())
        if self.den.degree == 0 and b.den.degree == 0:
            return RatFunc(self.num * b.num, self.den)
        return ratfunc_normalize(self.num * b.num, self.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not b.num:
            raise DomainError("division by the zero rational function")
        return ratfunc_normalize(self.num * b.den, self.den * b.num)

    def __rtruediv__(self, other):
        a = self._coerce(other)
        if a is None:
            return NotImplemented
        return a / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RatFunc(self.num ** exponent, self.den ** exponent)

    def inverse(self) -> 'RatFunc':
        if not self.num:
            raise DomainError("the zero rational function has no inverse")
        return ratfunc_normalize(self.den, self.num)

    def derive(self) -> 'RatFunc':
        return derive(self)

    def evaluate(self, point: Any) -> Any:
        den_value = self.den.evaluate(point)
        if not den_value:
            raise DomainError(f"{self} has a pole at {self.var} = {point}")
        return self.num.evaluate(point) / den_value

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        try:
            b = self._coerce(other)
        except DomainError:
            return False
        return b is not None and self.num == b.num and self.den == b.den

    def __hash__(self) -> int:
        if self.is_constant:
            return hash(self.num.coefficient(0))
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        num_text = str(self.num)
        if self.num.term_count > 1 or '/' in num_text:
            num_text = f"({num_text})"
        den_text = str(self.den)
        if self.den.term_count > 1:
            den_text = f"({den_text})"
        return f"{num_text}/{den_text}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def ratfunc_normalize(num: UPoly, den: UPoly) -> RatFunc:
    """Canonical RatFunc value-equal to num/den."""
    if not den:
        raise DomainError("rational function with zero denominator")
    if not num:
        return RatFunc(UPoly._raw(den.domain, [], den.var), UPoly._raw(den.domain, [den.domain.one], den.var))
    if den.degree > 0 and num.degree > 0:
        _, num, den = upoly_cofactors(num, den)
    inv = den.domain.one / den.lc
    return RatFunc(num * inv, den * inv)


def derive(f: RatFunc) -> RatFunc:
    """Quotient-rule derivative d/dx."""
    if f.den.degree == 0:
        return RatFunc(f.num.derivative(), f.den)
    return ratfunc_normalize(f.num.derivative() * f.den - f.num * f.den.derivative(), f.den * f.den)
