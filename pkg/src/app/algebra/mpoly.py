"""Sparse multivariate polynomials in y_1..y_N over a coefficient Domain.

A monomial is a dense exponent tuple: position i-1 holds the exponent of y_i.
Polynomials are dicts monomial -> nonzero coefficient inside a PolyRing.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from app.algebra.basefield import Domain, UPoly, render_terms
from app.utils.enums import ArithOp, TermOrderKind
from app.utils.errors import DomainError

Monomial = Tuple[int, ...]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(m: Monomial) -> int:
    return sum(m)


def pure_power_index(m: Monomial) -> Optional[int]:
    """1-based index j when m is y_j^d with d > 0, else None."""
    used = [i for i, e in enumerate(m) if e]
    return used[0] + 1 if len(used) == 1 else None


@dataclass(frozen=True)
class TermOrder:
    """Graded reverse lexicographic or lexicographic order on exponent vectors.

    `permutation` lists variable positions from most to least significant;
    the default makes y_N the largest variable, i.e. y_1 < y_2 < ... < y_N.
    """

    kind: TermOrderKind
    permutation: Tuple[int, ...]

    @classmethod
    def grevlex(cls, nvars: int) -> 'TermOrder':
        return cls(TermOrderKind.GREVLEX, tuple(range(nvars - 1, -1, -1)))

    @classmethod
    def lex(cls, nvars: int) -> 'TermOrder':
        return cls(TermOrderKind.LEX, tuple(range(nvars - 1, -1, -1)))

    @classmethod
    def of_kind(cls, kind: TermOrderKind, nvars: int) -> 'TermOrder':
        return cls.lex(nvars) if kind == TermOrderKind.LEX else cls.grevlex(nvars)

    def key(self, m: Monomial) -> tuple:
        ordered = tuple(m[i] for i in self.permutation)
        if self.kind == TermOrderKind.LEX:
            return ordered
        return (sum(ordered), tuple(-e for e in reversed(ordered)))


@dataclass(frozen=True)
class WeightGrading:
    """w(y_i) = weights[i-1]; the empty tuple means the standard grading w(y_i) = i."""

    weights: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(w < 1 for w in self.weights):
            raise DomainError(f"weights must be positive, got {self.weights}")

    def weight_of(self, index: int) -> int:
        return self.weights[index - 1] if self.weights else index


STANDARD_GRADING = WeightGrading()


@dataclass(frozen=True)
class PolyRing:
    domain: Domain
    nvars: int
    order: Optional[TermOrder] = field(default=None)
    prefix: str = 'y'

    def __post_init__(self):
        if self.nvars < 0:
            raise DomainError(f"a polynomial ring needs nvars >= 0, got {self.nvars}")
        if self.order is None:
            object.__setattr__(self, 'order', TermOrder.grevlex(self.nvars))
        elif len(self.order.permutation) != self.nvars:
            raise DomainError(f"term order covers {len(self.order.permutation)} variables, ring has {self.nvars}")

    @property
    def unit_monomial(self) -> Monomial:
        return (0,) * self.nvars

    @property
    def zero(self) -> 'MPoly':
        return MPoly(self, {})

    @property
    def one(self) -> 'MPoly':
        return MPoly(self, {self.unit_monomial: self.domain.one})

    def constant(self, value: Any) -> 'MPoly':
        value = self.domain.convert(value)
        return MPoly(self, {self.unit_monomial: value} if value else {})

    def gen(self, index: int) -> 'MPoly':
        if not 1 <= index <= self.nvars:
            raise DomainError(f"{self.prefix}{index} is not a variable of a ring with {self.nvars} variables")
        exps = [0] * self.nvars
        exps[index - 1] = 1
        return MPoly(self, {tuple(exps): self.domain.one})

    def gens(self) -> List['MPoly']:
        return [self.gen(i) for i in range(1, self.nvars + 1)]

    def from_terms(self, terms: Dict[Monomial, Any]) -> 'MPoly':
        converted = {}
        for m, c in terms.items():
            if len(m) != self.nvars:
                raise DomainError(f"monomial {m} does not have {self.nvars} exponents")
            value = self.domain.convert(c)
            if value:
                converted[tuple(m)] = value
        return MPoly(self, converted)

    def __str__(self) -> str:
        names = ', '.join(f"{self.prefix}{i}" for i in range(1, self.nvars + 1))
        return f"{self.domain}[{names}]"


def _accumulate(acc: Dict[Monomial, Any], m: Monomial, c: Any) -> None:
    current = acc.get(m)
    if current is None:
        if c:
            acc[m] = c
        return
    total = current + c
    if total:
        acc[m] = total
    else:
        del acc[m]


class MPoly:
    __slots__ = ('ring', 'terms')

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, Any]):
        self.ring = ring
        self.terms = terms

    @property
    def domain(self) -> Domain:
        return self.ring.domain

    def _coerce(self, other: Any) -> Optional['MPoly']:
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise DomainError(f"cannot combine polynomials of {self.ring} and {other.ring}")
            return other
        try:
            value = self.domain.convert(other)
        except TypeError:
            return None
        return MPoly(self.ring, {self.ring.unit_monomial: value} if value else {})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        try:
            b = self._coerce(other)
        except DomainError:
            return False
        return b is not None and b.terms == self.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in b.terms.items():
            _accumulate(acc, m, c)
        return MPoly(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {m: -c for m, c in self.terms.items()})

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
        if not isinstance(other, MPoly):
            try:
                return self.scale(self.domain.convert(other))
            except TypeError:
                return NotImplemented
        b = self._coerce(other)
        acc: Dict[Monomial, Any] = {}
        for ma, ca in self.terms.items():
            for mb, cb in b.terms.items():
                _accumulate(acc, mono_mul(ma, mb), ca * cb)
        return MPoly(self.ring, acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if not other.is_constant or not other:
                raise DomainError(f"division by the non-constant polynomial {other}")
            other = other.constant_coefficient
        try:
            value = self.domain.convert(other)
        except TypeError:
            return NotImplemented
        if not value:
            raise DomainError("division by zero")
        return self.scale(self.domain.one / value)

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise DomainError("negative powers of polynomials are not polynomials")
        result = self.ring.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, c: Any) -> 'MPoly':
        if not c:
            return self.ring.zero
        return MPoly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: Any) -> 'MPoly':
        if not c:
            return self.ring.zero
        return MPoly(self.ring, {mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def map_coefficients(self, fn: Callable[[Any], Any]) -> 'MPoly':
        acc = {}
        for m, c in self.terms.items():
            value = fn(c)
            if value:
                acc[m] = value
        return MPoly(self.ring, acc)

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    @property
    def constant_coefficient(self) -> Any:
        return self.terms.get(self.ring.unit_monomial, self.domain.zero)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((m[index - 1] for m in self.terms), default=-1)

    def max_variable(self) -> int:
        """Largest index j with y_j present, 0 for constants."""
        top = 0
        for m in self.terms:
            for i in range(len(m) - 1, top - 1, -1):
                if m[i]:
                    top = i + 1
                    break
        return top

    def sorted_terms(self, order: Optional[TermOrder] = None) -> List[Tuple[Monomial, Any]]:
        key = (order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def leading_monomial(self, order: Optional[TermOrder] = None) -> Monomial:
        if not self.terms:
            raise DomainError("the zero polynomial has no leading monomial")
        return max(self.terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: Optional[TermOrder] = None) -> Any:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: Optional[TermOrder] = None) -> 'MPoly':
        if not self.terms:
            return self
        return self.scale(self.domain.one / self.leading_coefficient(order))

    def substitute(self, index: int, value: 'MPoly') -> 'MPoly':
        """Replace y_index by `value` (a polynomial of the same ring)."""
        pos = index - 1
        powers: Dict[int, MPoly] = {}
        acc: Dict[Monomial, Any] = {}
        for m, c in self.terms.items():
            e = m[pos]
            if e == 0:
                _accumulate(acc, m, c)
                continue
            if e not in powers:
                powers[e] = value ** e
            rest = m[:pos] + (0,) + m[pos + 1:]
            for pm, pc in powers[e].terms.items():
                _accumulate(acc, mono_mul(pm, rest), pc * c)
        return MPoly(self.ring, acc)

    def restrict(self, ring: PolyRing) -> 'MPoly':
        """Same polynomial in a ring with fewer variables; fails if a dropped variable occurs."""
        if self.max_variable() > ring.nvars:
            raise DomainError(f"{self} mentions variables outside {ring}")
        return MPoly(ring, {m[:ring.nvars]: c for m, c in self.terms.items()})

    def lift(self, ring: PolyRing) -> 'MPoly':
        if ring.nvars < self.ring.nvars:
            return self.restrict(ring)
        pad = (0,) * (ring.nvars - self.ring.nvars)
        return MPoly(ring, {m + pad: c for m, c in self.terms.items()})

    def to_univariate(self, index: int) -> UPoly:
        """The polynomial as an element of K[y_index]."""
        pos = index - 1
        coeffs = [self.domain.zero] * (max(self.degree_in(index), 0) + 1)
        for m, c in self.terms.items():
            if any(e for i, e in enumerate(m) if i != pos):
                raise DomainError(f"{self} is not univariate in {self.ring.prefix}{index}")
            coeffs[m[pos]] = c
        return UPoly(self.domain, coeffs, var=f"{self.ring.prefix}{index}")

    def monomial_text(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(f"{self.ring.prefix}{i + 1}")
            elif e > 1:
                parts.append(f"{self.ring.prefix}{i + 1}^{e}")
        return '*'.join(parts)

    def __str__(self) -> str:
        return render_terms((c, self.monomial_text(m)) for m, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"MPoly({self})"


def weight(m: Monomial, grading: WeightGrading = STANDARD_GRADING) -> int:
    return sum(e * grading.weight_of(i + 1) for i, e in enumerate(m))


def max_weight(f: MPoly, grading: WeightGrading = STANDARD_GRADING) -> int:
    return max((weight(m, grading) for m in f.terms), default=-1)


def leading_form(f: MPoly, grading: WeightGrading = STANDARD_GRADING) -> MPoly:
    """Sum of the terms of maximal weight."""
    if not f:
        raise DomainError("the zero polynomial has no leading form")
    top = max_weight(f, grading)
    return MPoly(f.ring, {m: c for m, c in f.terms.items() if weight(m, grading) == top})


def is_weighted_homogeneous(f: MPoly, grading: WeightGrading = STANDARD_GRADING) -> bool:
    return len({weight(m, grading) for m in f.terms}) <= 1


def delta_derive(f: MPoly) -> MPoly:
    """Extend d/dx by delta(y_j) = y_{j+1} - y_1*y_j.

    This is the derivation under which y_j stands for (D^j y)/y. Coefficients
    are differentiated with the domain's own derivation.
    """
    ring = f.ring
    derive = ring.domain.derive
    acc: Dict[Monomial, Any] = {}
    for m, c in f.terms.items():
        _accumulate(acc, m, derive(c))
        for i, e in enumerate(m):
            if not e:
                continue
            if i + 1 >= ring.nvars:
                raise DomainError(
                    f"delta({ring.prefix}{i + 1}) needs {ring.prefix}{i + 2}, outside {ring}"
                )
            coef = c * e
            shifted = list(m)
            shifted[i] -= 1
            shifted[i + 1] += 1
            _accumulate(acc, tuple(shifted), coef)
            with_y1 = list(m)
            with_y1[0] += 1
            _accumulate(acc, tuple(with_y1), -coef)
    return MPoly(ring, acc)


def mpoly_arith(a: MPoly, b: Any, op: ArithOp) -> MPoly:
    if op == ArithOp.ADD:
        return a + b
    if op == ArithOp.MUL:
        return a * b
    if op == ArithOp.SCALE:
        return a.scale(a.domain.convert(b))
    raise DomainError(f"unsupported polynomial operation {op}")

