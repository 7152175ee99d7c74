import random
from fractions import Fraction

import pytest

from app.algebra.basefield import UPoly
from app.cli.parser import parse_operator, parse_upoly
from app.converse.algext import AlgebraicExtension, u_derivative
from app.converse.annihilators import converse, forward_annihilator, reciprocal_annihilator
from app.oracle.series import Series, logderiv_series
from app.oracle.verify import verify_annihilator, verify_eliminant
from app.utils.errors import DomainError, ReducibilityEvidence


def test_u_derivative_of_square_root(K):
    assert u_derivative(parse_upoly('T^2 - x', K)).poly == parse_upoly('T/(2*x)', K)


def test_u_derivative_of_rational_root(K):
    # u = 1/x, u' = -1/x^2
    assert u_derivative(parse_upoly('T - 1/x', K)).poly == parse_upoly('-1/x^2', K)


def test_extension_arithmetic(K):
    ext = AlgebraicExtension(parse_upoly('T^2 - x', K))
    u = ext.generator
    assert u * u == K.x
    assert (u * u.inverse()) == ext.one
    assert (u / u) == ext.one
    assert [str(c) for c in (u * u + u).coordinates()] == ['x', '1']


def test_extension_requires_squarefree(K):
    with pytest.raises(DomainError, match='not squarefree'):
        AlgebraicExtension(parse_upoly('(T - 1)^2', K))


def test_inverse_exposes_factor(K):
    ext = AlgebraicExtension(parse_upoly('T^2 - 1', K))
    with pytest.raises(ReducibilityEvidence) as info:
        (ext.generator - 1).inverse()
    assert info.value.factor == parse_upoly('T - 1', K)


def test_square_root_round_trip(K):
    result = converse(parse_upoly('T^2 - x', K))
    expected = parse_operator('D^2 - (1/(2*x))*D - x', K)
    assert result.l1 == expected
    assert result.l2 == expected


def test_linear_f(K):
    f = parse_upoly('T - 5', K)
    assert forward_annihilator(f) == parse_operator('D - 5', K)
    assert reciprocal_annihilator(f) == parse_operator('D + 5', K)


def test_power_function(K):
    # y = x has y'/y = 1/x
    f = parse_upoly('x*T - 1', K)
    assert forward_annihilator(f) == parse_operator('D - 1/x', K)
    assert reciprocal_annihilator(f) == parse_operator('D + 1/x', K)


def test_characteristic_p_square_root(K5):
    result = converse(parse_upoly('T^2 - x', K5))
    assert result.l1.order == 2
    assert result.l1 == result.l2


def _root_series(f, x0, u0, order):
    """Newton lift of the simple root u0 of f(x0, T) to a power series in (x - x0)."""
    coeffs = [Series.from_ratfunc(c, x0, order) for c in f.coeffs]
    slopes = [Series.from_ratfunc(c, x0, order) for c in f.derivative().coeffs]

    def horner(cs, u):
        value = Series.constant(0, x0, order)
        for c in reversed(cs):
            value = value * u + c
        return value

    u = Series.constant(u0, x0, order)
    precision = 1
    while precision < order:
        u = u - horner(coeffs, u) / horner(slopes, u)
        precision *= 2
    return u


def _exp_integral(u):
    """y with y(x0) = 1 and y' = u*y."""
    c = [Fraction(1)]
    for k in range(u.order - 1):
        c.append(sum((u[i] * c[k - i] for i in range(k + 1)), Fraction(0)) / (k + 1))
    return Series(u.x0, tuple(c))


def _ordinary(x0, *coefficients):
    return all(c.den.evaluate(x0) for c in coefficients)


def _assert_round_trip(f, candidates, order=30):
    """Both annihilators kill the series built from a root of f at the first ordinary candidate point."""
    pair = converse(f)
    operator_coefficients = [spec.a(i) for spec in (pair.l1, pair.l2) for i in range(spec.order)]
    for x0, u0 in candidates:
        x0, u0 = Fraction(x0), Fraction(u0)
        if _ordinary(x0, *operator_coefficients, *f.coeffs):
            break
    else:
        pytest.fail(f"no ordinary point among {candidates}")
    y = _exp_integral(_root_series(f, x0, u0, order))
    slack = f.degree + 1
    assert verify_eliminant(f.with_var('y1'), logderiv_series(y), slack).passed
    assert verify_annihilator(pair.l1, y, slack).passed
    assert verify_annihilator(pair.l2, y.inverse(), slack).passed
    assert max(pair.l1.order, pair.l2.order) <= f.degree
    return pair


@pytest.mark.parametrize('text, candidates', [
    ('T^3 - x', [(1, 1), (8, 2), (27, 3), (Fraction(1, 8), Fraction(1, 2))]),
    ('T^3 - x*T - 1', [(Fraction(7, 2), 2), (Fraction(26, 3), 3), (Fraction(63, 4), 4)]),
    ('T^3 - 3*T - x', [(2, 2), (18, 3), (-2, -2), (52, 4)]),
])
def test_cubic_round_trips(text, candidates, K):
    _assert_round_trip(parse_upoly(text, K), candidates)


@pytest.mark.parametrize('seed', range(6))
def test_random_quadratic_round_trips(seed, K):
    # T^2 + a*T + (a^2 - (x + c))/4 has roots (-a +- sqrt(x + c))/2, rational where x + c is a square
    rng = random.Random(seed)
    x = K.x
    a = (x * rng.randint(-3, 3) + rng.randint(-3, 3)) / (x + rng.randint(1, 5))
    c = rng.randint(-4, 4)
    f = UPoly(K, [(a * a - x - c) / 4, a, K.one], 'T')
    candidates = []
    for k in range(1, 12):
        x0 = Fraction(k * k - c)
        if a.den.evaluate(x0):
            candidates.append((x0, (k - a.evaluate(x0)) / 2))
    _assert_round_trip(f, candidates)
