"""Expression front end.

Grammar (whitespace insignificant):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' uint)?
    base   := integer | 'x' | 'T' | 'D' | 'y'<index> | 'z'<index> | '(' expr ')'

Which of T, D, y_i, z_i are allowed depends on what is being parsed. Division
is only allowed by elements of K.
"""
import re
from typing import Any, Iterator, List, NamedTuple, Optional, Tuple

from app.algebra.basefield import FunctionFieldDomain, RatFunc, UPoly
from app.algebra.mpoly import MPoly, PolyRing
from app.logdiff.models import OdeSpec
from app.utils.errors import DomainError, ParseError

TOKENS = {
    'num': r'\d+',
    'name': r'[A-Za-z][A-Za-z0-9_]*',
    'lpar': r'\(',
    'rpar': r'\)',
    'plus': r'\+',
    'minus': r'-',
    'mul': r'\*',
    'div': r'/',
    'pow': r'\^',
    'skip': r'\s+',
    'error': r'.',
}
_REGEX = re.compile('|'.join(f"(?P<{name}>{text})" for name, text in TOKENS.items()))
_INDEXED = re.compile(r'([yz])(\d+)$')


class Token(NamedTuple):
    type: str
    value: Any
    where: Tuple[int, int]


def tokenize(text: str) -> Iterator[Token]:
    for mo in _REGEX.finditer(text):
        kind = str(mo.lastgroup)
        value: Any = mo.group()
        where = mo.start(), mo.end()
        if kind == 'skip':
            continue
        if kind == 'error':
            raise ParseError(f"unknown symbol '{value}'", text, where[0])
        if kind == 'num':
            value = int(value)
        yield Token(kind, value, where)
    yield Token('end', '', (len(text), len(text)))


class _Target:
    """Where parsed values live: K itself, K[T], K[D] or K[y_1..y_N]."""

    symbols: Tuple[str, ...] = ('x',)

    def __init__(self, domain: FunctionFieldDomain):
        self.domain = domain

    def integer(self, n: int) -> Any:
        return self.domain.convert(n)

    def symbol(self, name: str) -> Any:
        return self.domain.x

    def as_scalar(self, value: Any) -> Optional[Any]:
        """The value as an element of K, or None when it is not one."""
        return value

    def check_product(self, left: Any, right: Any, token: Token, text: str) -> None:
        return None


class _UPolyTarget(_Target):
    def __init__(self, domain: FunctionFieldDomain, var: str):
        super().__init__(domain)
        self.var = var
        self.symbols = ('x', var)

    def integer(self, n: int) -> UPoly:
        return UPoly(self.domain, (n,), self.var)

    def symbol(self, name: str) -> UPoly:
        if name == self.var:
            return UPoly(self.domain, (0, 1), self.var)
        return UPoly(self.domain, (self.domain.x,), self.var)

    def as_scalar(self, value: UPoly) -> Optional[Any]:
        return value.coefficient(0) if value.is_constant else None

    def check_product(self, left: UPoly, right: UPoly, token: Token, text: str) -> None:
        # D does not commute with x, so coefficients must stand to the left of D
        if self.var == 'D' and left.degree >= 1 and any(isinstance(c, RatFunc) and not c.is_constant for c in right.coeffs):
            raise ParseError("operator coefficients must be written to the left of D", text, token.where[0])


class _MPolyTarget(_Target):
    def __init__(self, domain: FunctionFieldDomain, prefix: str, nvars: int):
        super().__init__(domain)
        self.ring = PolyRing(domain, nvars, prefix=prefix)
        self.prefix = prefix

    def integer(self, n: int) -> MPoly:
        return self.ring.constant(n)

    def symbol(self, name: str) -> MPoly:
        if name == 'x':
            return self.ring.constant(self.domain.x)
        return self.ring.gen(int(name[1:]))

    def as_scalar(self, value: MPoly) -> Optional[Any]:
        return value.constant_coefficient if value.is_constant else None


class ExpressionParser:
    def __init__(self, text: str, target: _Target):
        self.text = text
        self.target = target
        self.tokens: List[Token] = list(tokenize(text))
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, self.text, token.where[0])

    def parse(self) -> Any:
        value = self._expr()
        if self.current.type != 'end':
            raise self._error(f"unexpected '{self.current.value}'")
        return value

    def _expr(self) -> Any:
        value = self._term()
        while self.current.type in ('plus', 'minus'):
            op = self._advance()
            right = self._term()
            value = value + right if op.type == 'plus' else value - right
        return value

    def _term(self) -> Any:
        value = self._factor()
        while self.current.type in ('mul', 'div'):
            op = self._advance()
            right = self._factor()
            if op.type == 'mul':
                self.target.check_product(value, right, op, self.text)
                value = value * right
                continue
            divisor = self.target.as_scalar(right)
            if divisor is None:
                raise self._error('division is only allowed by elements of K', op)
            if not divisor:
                raise self._error('division by zero', op)
            value = value / divisor
        return value

    def _factor(self) -> Any:
        if self.current.type == 'minus':
            self._advance()
            return -self._factor()
        value = self._base()
        if self.current.type == 'pow':
            self._advance()
            exponent = self._advance()
            if exponent.type != 'num':
                raise self._error('exponent must be a nonnegative integer', exponent)
            value = value ** exponent.value
        return value

    def _base(self) -> Any:
        token = self._advance()
        if token.type == 'num':
            return self.target.integer(token.value)
        if token.type == 'name':
            if not self._allowed(token.value):
                raise self._error(f"unknown symbol '{token.value}'", token)
            return self.target.symbol(token.value)
        if token.type == 'lpar':
            value = self._expr()
            if self.current.type != 'rpar':
                raise self._error("expected ')'")
            self._advance()
            return value
        if token.type == 'end':
            raise self._error('unexpected end of expression', token)
        raise self._error(f"unexpected '{token.value}'", token)

    def _allowed(self, name: str) -> bool:
        if name in self.target.symbols:
            return True
        if isinstance(self.target, _MPolyTarget):
            mo = _INDEXED.match(name)
            return bool(mo) and mo.group(1) == self.target.prefix and 1 <= int(mo.group(2)) <= self.target.ring.nvars
        return False


def _run(text: str, target: _Target) -> Any:
    try:
        return ExpressionParser(text, target).parse()
    except DomainError as error:
        raise ParseError(error.message, text, None) from error


def parse_ratfunc(text: str, domain: FunctionFieldDomain) -> RatFunc:
    return _run(text, _Target(domain))


def parse_upoly(text: str, domain: FunctionFieldDomain, var: str = 'T') -> UPoly:
    return _run(text, _UPolyTarget(domain, var))


def parse_operator(text: str, domain: FunctionFieldDomain) -> OdeSpec:
    """A differential operator such as "D^2 - (1/(2*x))*D - x", made monic."""
    op = _run(text, _UPolyTarget(domain, 'D'))
    try:
        return OdeSpec.from_operator(op)
    except DomainError as error:
        raise ParseError(error.message, text, None) from error


def parse_mpoly(text: str, domain: FunctionFieldDomain, prefix: str = 'y', nvars: Optional[int] = None) -> MPoly:
    """A polynomial in y1, y2, ... (or z1, z2, ...); nvars defaults to the largest index used."""
    used = [int(mo.group(2)) for mo in re.finditer(r'\b([yz])(\d+)\b', text) if mo.group(1) == prefix]
    if nvars is None:
        nvars = max(used, default=1)
    return _run(text, _MPolyTarget(domain, prefix, nvars))
