import pytest

from app.cli.parser import parse_mpoly, parse_operator, parse_ratfunc, parse_upoly, tokenize
from app.utils.errors import ParseError


def test_tokens():
    kinds = [t.type for t in tokenize('2*x^3 - y12')]
    assert kinds == ['num', 'mul', 'name', 'pow', 'num', 'minus', 'name', 'end']


def test_rational_function(K):
    x = K.x
    assert parse_ratfunc('(x^2 - 1)/(x - 1)', K) == x + 1
    assert parse_ratfunc('-x^2', K) == -(x ** 2)
    assert parse_ratfunc('1/(2*x)', K) == 1 / (2 * x)


def test_division_by_zero(K):
    with pytest.raises(ParseError, match='division by zero'):
        parse_ratfunc('1/(x - x)', K)


def test_unknown_symbol_position(K):
    with pytest.raises(ParseError) as info:
        parse_ratfunc('x + $', K)
    assert (info.value.line, info.value.column) == (1, 5)
    assert info.value.display().endswith('    ^')


def test_position_on_second_line(K):
    with pytest.raises(ParseError) as info:
        parse_ratfunc('x +\n  ?', K)
    assert (info.value.line, info.value.column) == (2, 3)


def test_unexpected_end(K):
    with pytest.raises(ParseError, match='unexpected end'):
        parse_ratfunc('x +', K)


def test_unbalanced_parenthesis(K):
    with pytest.raises(ParseError, match="expected '\\)'"):
        parse_ratfunc('(x + 1', K)


def test_symbols_are_scoped(K):
    with pytest.raises(ParseError, match="unknown symbol 'T'"):
        parse_ratfunc('T + 1', K)
    with pytest.raises(ParseError, match="unknown symbol 'y3'"):
        parse_mpoly('y1 + y3', K, nvars=2)


def test_division_by_a_polynomial_rejected(K):
    with pytest.raises(ParseError, match='only allowed by elements of K'):
        parse_upoly('1/T', K)


def test_operator_is_made_monic(K):
    spec = parse_operator('2*D^2 - 2', K)
    assert str(spec) == 'D^2 - 1'
    assert spec.coefficient_strings() == ['1', '0', '-1']


def test_operator_coefficients_left_of_d(K):
    assert parse_operator('x*D^2 + D', K).a(1) == 1 / K.x
    with pytest.raises(ParseError, match='left of D'):
        parse_operator('D*x + 1', K)


def test_operator_needs_positive_order(K):
    with pytest.raises(ParseError):
        parse_operator('x + 1', K)


def test_mpoly_infers_variable_count(K):
    f = parse_mpoly('y1*y3 - x', K)
    assert f.ring.nvars == 3
    assert str(f) == 'y1*y3 - x'


def test_characteristic_p_division(K5):
    with pytest.raises(ParseError, match='division by zero'):
        parse_ratfunc('1/5', K5)


@pytest.mark.parametrize('text', [
    'y2^2 + 2*y1*y2 + y1^2',
    '-6*y1^3 + 6*y1*y2 - y3',
    'y1^2 - ((3/2)/x)*y1 + ((1/2)/x^2)',
    '((x + 1)/(x^2 + 1))*y1 - 3/4',
])
def test_rendering_reparses(text, K):
    f = parse_mpoly(text, K)
    assert parse_mpoly(str(f), K, nvars=f.ring.nvars) == f
