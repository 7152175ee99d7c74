import pytest

from app.algebra.basefield import rational_function_field
from app.algebra.mpoly import PolyRing
from app.cli.parser import parse_mpoly, parse_operator
from app.logdiff.models import NonlinearSpec, OdeProblem
from app.logdiff.reduction import reduction_forms
from app.logdiff.system import (
    assemble_indexed,
    assemble_system,
    certify_leading_forms,
    check_hypotheses,
    equation_range,
    expanded_system,
    leading_form_system,
    necessary_equations,
    weight_bound_ok,
)
from app.utils.enums import CaseTag
from app.utils.errors import HypothesisError


@pytest.fixture
def section_problem(linear_problem):
    return linear_problem('D^3 + D^2 + D + 1', 'D^2 + D + 1')


@pytest.fixture
def nonlinear_problem(K):
    spec = NonlinearSpec(3, parse_mpoly('-y1^2 - 1', K, nvars=2))
    return OdeProblem(CaseTag.NONLINEAR, spec, parse_operator('D^2 + 1', K))


def test_reduction_forms_for_exponential(K):
    ring = PolyRing(K, 3)
    forms = reduction_forms(parse_operator('D^2 - 1', K), 2, ring)
    assert [f.index for f in forms] == [2, 3]
    assert forms[0].expression == ring.one
    assert forms[1].expression == ring.gen(1)
    assert str(forms[1]) == 'y3 = y1'


def test_reduction_forms_third_order(K):
    ring = PolyRing(K, 3)
    x = K.x
    y1, y2, _ = ring.gens()
    forms = reduction_forms(parse_operator('D^3 + x*D^2 + D + x^2', K), 2, ring)
    assert forms[0].expression == -x * y2 - y1 - x ** 2
    assert forms[1].expression == (x ** 2 - 2) * y2 + (x - x ** 2) * y1 + (x ** 3 - 2 * x)
    for form in forms:
        assert form.expression.total_degree() <= 1
        assert form.expression.max_variable() < 3


def test_nonlinear_reduction_forms(nonlinear_problem):
    ring = PolyRing(nonlinear_problem.domain, 3)
    y1, y2, _ = ring.gens()
    forms = reduction_forms(nonlinear_problem.l1, 2, ring)
    assert forms[0].expression == -y1 ** 2 - 1
    assert forms[1].expression == y1 ** 3 - y1 - 2 * y1 * y2


def test_nonlinear_seed_rejects_heavy_terms(K):
    spec = NonlinearSpec(3, parse_mpoly('y1*y2', K, nvars=2))
    with pytest.raises(HypothesisError):
        reduction_forms(spec, 1, PolyRing(K, 3))


def test_exponential_pair_system(linear_problem):
    system = assemble_system(linear_problem('D^2 - 1', 'D^2 - 1'))
    assert len(system) == 1
    y1 = system[0].ring.gen(1)
    assert system[0] == 2 * y1 ** 2 - 2


def test_power_case_system(linear_problem):
    system = assemble_system(linear_problem('D^2 - 1', 'D^2 - 4', CaseTag.POWER, q=2))
    y1 = system[0].ring.gen(1)
    assert system == [2 * y1 ** 2 - 2]


def test_power_case_cubic_uses_every_equation(linear_problem):
    problem = linear_problem('D^2 - 1', 'D^2 - 4', CaseTag.POWER, q=3)
    assert list(equation_range(problem)) == [0, 1]
    system = assemble_system(problem)
    y1 = system[0].ring.gen(1)
    assert system == [6 * y1 ** 2 - 1, 6 * y1 ** 3 + 9 * y1]


def test_section_example_system(section_problem):
    system = assemble_system(section_problem)
    ring = system[0].ring
    assert ring.nvars == 2
    y1, y2 = ring.gens()
    assert system == [
        2 * y1 ** 2 - y2 - y1 + 1,
        -6 * y1 ** 3 + 6 * y1 * y2 + 2 * y1 ** 2 + 1,
    ]
    assert leading_form_system(system) == [2 * y1 ** 2 - y2, -6 * y1 ** 3 + 6 * y1 * y2]
    certificate = certify_leading_forms(system)
    assert certificate.certified
    assert certificate.dimension == 3
    assert weight_bound_ok(assemble_indexed(section_problem), 2)


def test_nonlinear_system(nonlinear_problem):
    system = assemble_system(nonlinear_problem)
    y1, y2 = system[0].ring.gens()
    assert system == [
        2 * y1 ** 2 - y2 + 1,
        -6 * y1 ** 3 + 6 * y1 * y2 + y1 ** 2 - y1 + 1,
    ]
    assert certify_leading_forms(system).certified
    assert weight_bound_ok(assemble_indexed(nonlinear_problem), 2)


@pytest.mark.parametrize('l1, l2', [
    ('D^2 - 1', 'D^2 - 1'),
    ('D^3 + D^2 + D + 1', 'D^2 + D + 1'),
    ('D^3 + x*D + 1', 'D^3 - x^2'),
])
def test_assembled_polynomials_only_mention_low_variables(l1, l2, linear_problem):
    problem = linear_problem(l1, l2)
    for f in assemble_system(problem):
        assert f.max_variable() < problem.n


def test_expanded_system_is_square(section_problem, linear_problem):
    for problem in (section_problem, linear_problem('D^2 - 1', 'D^2 - 1')):
        expanded = expanded_system(problem)
        assert len(expanded) == expanded[0].ring.nvars


def test_necessary_equations_for_power_case(linear_problem):
    problem = linear_problem('D^2 - 1', 'D^2 - 9', CaseTag.POWER, q=3)
    system = assemble_system(problem)
    assert necessary_equations(system) == [1]


def test_hypotheses_pass_in_characteristic_zero(section_problem):
    report = check_hypotheses(section_problem)
    assert report.passed
    assert report.messages() == []


def test_hypotheses_characteristic_bound(linear_problem):
    K3 = rational_function_field(3)
    problem = linear_problem('D^3 + D^2 + D + 1', 'D^2 + D + 1', domain=K3)
    report = check_hypotheses(problem)
    assert not report.passed
    assert report.messages() == ['requires p > N_1+N_2-2 = 3 (p=3)']
    with pytest.raises(HypothesisError):
        assemble_system(problem)


def test_hypotheses_power_order(linear_problem):
    report = check_hypotheses(linear_problem('D^2 - 1', 'D^3 - 1', CaseTag.POWER, q=2))
    assert 'requires N_2 <= q (N_2=3, q=2)' in report.messages()


def test_hypotheses_first_order_operator(linear_problem):
    report = check_hypotheses(linear_problem('D - 1', 'D^2 - 1'))
    assert any('N_1 > 1' in message for message in report.messages())


def test_hypotheses_nonlinear_weight(K):
    spec = NonlinearSpec(3, parse_mpoly('y1*y2 + 1', K, nvars=2))
    report = check_hypotheses(OdeProblem(CaseTag.NONLINEAR, spec, parse_operator('D^2 + 1', K)))
    assert not report.passed
    assert 'y1*y2' in report.messages()[0]


def test_nonlinear_from_homogeneous(K):
    h = parse_mpoly('-z2^2 - z1^2', K, prefix='z', nvars=3)
    spec = NonlinearSpec.from_homogeneous(h, 3)
    y1 = spec.solved.ring.gen(1)
    assert spec.solved == -y1 ** 2 - 1
    with pytest.raises(HypothesisError):
        NonlinearSpec.from_homogeneous(parse_mpoly('z1^2 + z2', K, prefix='z', nvars=3), 3)
    with pytest.raises(HypothesisError):
        NonlinearSpec.from_homogeneous(parse_mpoly('z3^2 + z1^2', K, prefix='z', nvars=3), 3)


def test_vanished_equation_keeps_its_label(section_problem, first_equation_vanishes):
    indexed = assemble_indexed(section_problem)
    assert [k for k, _ in indexed] == [1]
    y1, y2 = indexed[0][1].ring.gens()
    assert indexed[0][1] == -6 * y1 ** 3 + 6 * y1 * y2 + 2 * y1 ** 2 + 1
    assert weight_bound_ok(indexed, 2)
    assert not weight_bound_ok([(0, indexed[0][1])], 2)
