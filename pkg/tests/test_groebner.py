from fractions import Fraction

import pytest
import sympy

from app.algebra.basefield import UPoly
from app.algebra.mpoly import PolyRing, TermOrder
from app.cli.parser import parse_mpoly, parse_upoly
from app.groebner.bounds import degree_bounds, eliminant_report
from app.groebner.buchberger import buchberger, normal_form, s_polynomial, verify_groebner
from app.groebner.zerodim import eliminant, is_separable, is_zero_dimensional, squarefree_part
from app.utils.enums import CaseTag, TermOrderKind
from app.utils.errors import DomainError, UnitIdealSignal

SECTION_SYSTEM = ['2*y1^2 - y2 - y1 + 1', '-6*y1^3 + 6*y1*y2 + 2*y1^2 + 1']
NONLINEAR_SYSTEM = ['2*y1^2 - y2 + 1', '-6*y1^3 + 6*y1*y2 + y1^2 - y1 + 1']


def polys(K, texts, nvars=2):
    return [parse_mpoly(t, K, nvars=nvars) for t in texts]


def constants(g: UPoly):
    return [c.constant_value for c in g.coeffs]


def test_single_generator(K):
    gb = buchberger(polys(K, ['2*y1^2 - 2'], nvars=1))
    assert len(gb) == 1
    assert str(gb.generators[0]) == 'y1^2 - 1'
    assert verify_groebner(gb)


def test_unit_ideal(K):
    gb = buchberger(polys(K, ['6*y1^2 - 1', '10*y1'], nvars=1))
    assert gb.is_unit
    certificate = is_zero_dimensional(gb)
    assert certificate.unit_ideal
    with pytest.raises(UnitIdealSignal):
        eliminant(gb, 1, certificate)


def test_constant_generator_gives_unit(K):
    ring = PolyRing(K, 2)
    assert buchberger([ring.gen(1), ring.constant(3)]).is_unit


def test_s_polynomial(K):
    f, g = polys(K, ['y1^2 - y2', 'y1*y2 - 1'])
    y1, y2 = f.ring.gens()
    assert s_polynomial(f, g) == y1 - y2 ** 2


def test_normal_form(K):
    gb = buchberger(polys(K, ['y1^2 - 1'], nvars=1))
    y1 = gb.ring.gen(1)
    assert normal_form(y1 ** 3 + 2, gb) == y1 + 2
    assert normal_form(y1 ** 3, [y1 ** 2 - 1]) == y1


@pytest.mark.parametrize('texts', [SECTION_SYSTEM, NONLINEAR_SYSTEM])
@pytest.mark.parametrize('chain', [False, True])
def test_groebner_bases_verify(texts, chain, K):
    gb = buchberger(polys(K, texts), chain_criterion=chain)
    assert verify_groebner(gb)
    assert all(g.leading_coefficient(gb.order) == K.one for g in gb)


def test_chain_criterion_does_not_change_the_basis(K):
    plain = buchberger(polys(K, SECTION_SYSTEM), chain_criterion=False)
    chained = buchberger(polys(K, SECTION_SYSTEM), chain_criterion=True)
    assert plain.generators == chained.generators


def _as_table(gb):
    """Reduced basis as a set of {(e_y2, e_y1): Fraction} tables."""
    return {frozenset(((m[1], m[0]), c.constant_value) for m, c in g.terms.items()) for g in gb}


@pytest.mark.parametrize('kind, sympy_order', [(TermOrderKind.GREVLEX, 'grevlex'), (TermOrderKind.LEX, 'lex')])
def test_matches_sympy(kind, sympy_order, K):
    y1, y2 = sympy.symbols('y1 y2')
    exprs = [sympy.sympify(t.replace('^', '**')) for t in SECTION_SYSTEM]
    expected = sympy.groebner(exprs, y2, y1, order=sympy_order)
    expected_table = set()
    for g in expected.exprs:
        poly = sympy.Poly(g, y2, y1, domain='QQ')
        lc = poly.LC(order=sympy_order)
        expected_table.add(frozenset(
            (tuple(m), Fraction(int(c.p), int(c.q)) / Fraction(int(lc.p), int(lc.q))) for m, c in poly.terms()
        ))
    ours = buchberger(polys(K, SECTION_SYSTEM), order=TermOrder.of_kind(kind, 2))
    assert _as_table(ours) == expected_table


def test_zero_dimensional_certificate(K):
    gb = buchberger(polys(K, SECTION_SYSTEM))
    certificate = is_zero_dimensional(gb)
    assert certificate.certified
    assert certificate.dimension == 3
    assert set(certificate.witnesses) == {1, 2}
    assert len(certificate.standard_monomials) == 3


def test_positive_dimensional_ideal_is_not_certified(K):
    gb = buchberger(polys(K, ['y1*y2']))
    certificate = is_zero_dimensional(gb)
    assert not certificate.certified
    assert certificate.missing == (1, 2)
    with pytest.raises(DomainError):
        eliminant(gb, 1, certificate)


def test_section_eliminant(K):
    gb = buchberger(polys(K, SECTION_SYSTEM))
    g = eliminant(gb, 1)
    assert g.var == 'y1'
    assert constants(g) == [Fraction(1, 6), 1, Fraction(-2, 3), 1]


def test_nonlinear_eliminant(K):
    gb = buchberger(polys(K, NONLINEAR_SYSTEM))
    g = eliminant(gb, 1)
    assert constants(g) == [Fraction(1, 6), Fraction(5, 6), Fraction(1, 6), 1]
    report = eliminant_report(gb, 1, is_zero_dimensional(gb), degree_bounds(CaseTag.NONLINEAR, 3, 2))
    assert report.degree == 3
    assert report.within_bezout
    assert report.within_binomial


def test_eliminant_for_second_variable_vanishes_on_the_system(K):
    gb = buchberger(polys(K, SECTION_SYSTEM))
    g = eliminant(gb, 2)
    y2 = gb.ring.gen(2)
    value = gb.ring.zero
    for c in reversed(g.coeffs):
        value = value * y2 + c
    assert normal_form(value, gb) == gb.ring.zero


def test_squarefree_part(K):
    g = parse_upoly('(y1 - 1)^2*(y1 + 1)', K, 'y1')
    assert squarefree_part(g) == parse_upoly('y1^2 - 1', K, 'y1')
    assert is_separable(g)


def test_squarefree_part_keeps_inseparable_polynomials(K5):
    g = parse_upoly('y1^5 - x', K5, 'y1')
    assert not is_separable(g)
    assert squarefree_part(g) == g


def test_squarefree_part_of_zero(K):
    with pytest.raises(DomainError):
        squarefree_part(parse_upoly('0', K, 'y1'))


@pytest.mark.parametrize('case, n, m, q, expected', [
    (CaseTag.RECIPROCAL, 3, 2, None, (6, 3)),
    (CaseTag.RECIPROCAL, 2, 2, None, (2, 2)),
    (CaseTag.NONLINEAR, 3, 2, None, (6, 3)),
    (CaseTag.POWER, 2, 2, 2, (2, 2)),
    (CaseTag.POWER, 3, 2, 2, (20, 10)),
])
def test_degree_bounds(case, n, m, q, expected):
    bounds = degree_bounds(case, n, m, q)
    assert (bounds.bezout, bounds.binomial) == expected


def test_binomial_bound_needs_perfect_field_in_characteristic_p():
    assert degree_bounds(CaseTag.RECIPROCAL, 3, 2, characteristic=5, infinite_perfect=False).binomial is None
    assert degree_bounds(CaseTag.RECIPROCAL, 3, 2, characteristic=5, infinite_perfect=True).binomial == 3


def test_squarefree_part_with_rational_function_coefficients(K):
    x = K.x
    root = UPoly(K, [-(1 / x), K.one], 'y1')
    other = UPoly(K, [x + 1 / (x - 2), K.one], 'y1')
    g = root ** 2 * other * (x / 3)
    assert squarefree_part(g) == root * other


def test_failed_post_check_raises(K, monkeypatch):
    monkeypatch.setattr('app.groebner.buchberger.verify_groebner', lambda gb: False)
    with pytest.raises(DomainError, match='post-check'):
        buchberger(polys(K, SECTION_SYSTEM))


def test_post_check_is_skipped_when_disabled(K, monkeypatch):
    monkeypatch.setattr('app.groebner.buchberger.SETTINGS.verify_groebner', False)
    monkeypatch.setattr('app.groebner.buchberger.verify_groebner', lambda gb: False)
    assert len(buchberger(polys(K, SECTION_SYSTEM))) > 0
