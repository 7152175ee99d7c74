import json

import pytest

from app.cli.commands import main
from app.cli.report import SolveReport

EXP_PAIR = {
    'case': 'reciprocal',
    'l1': 'D^2 - 1',
    'l2': 'D^2 - 1',
    'oracle': {'x0': 0, 'ics': [1, 1]},
}


def test_pn_reciprocal(capsys):
    assert main(['pn', '--n', '3']) == 0
    assert capsys.readouterr().out.strip() == '-6*y1^3 + 6*y1*y2 - y3'


def test_pn_power(capsys):
    assert main(['pn', '--n', '2', '--q', '2']) == 0
    assert capsys.readouterr().out.strip() == '2*y1^2 + 2*y2'


def test_pn_in_small_characteristic(capsys):
    assert main(['pn', '--n', '3', '--char', '3']) == 2
    assert 'requires n < p' in capsys.readouterr().err


def test_pn_negative_n():
    assert main(['pn', '--n', '-1']) == 4


def test_converse_linear(capsys):
    assert main(['converse', '--f', 'T - 5']) == 0
    out = capsys.readouterr().out
    assert 'l1: D - 5' in out
    assert 'l2: D + 5' in out


def test_converse_rejects_repeated_root(capsys):
    assert main(['converse', '--f', '(T - 1)^2']) == 2
    assert 'not squarefree' in capsys.readouterr().err


def test_converse_parse_error():
    assert main(['converse', '--f', 'T +']) == 4


def test_solve_exponential_pair(problem_file, capsys):
    assert main(['solve', problem_file(EXP_PAIR)]) == 0
    out = capsys.readouterr().out
    assert 'y1: y1^2 - 1' in out
    assert 'pass (32 coefficients)' in out
    assert 'hypotheses: pass' in out


def test_solve_writes_structured_report(problem_file, tmp_path, capsys):
    out_path = tmp_path / 'report.json'
    assert main(['solve', problem_file(EXP_PAIR), '--out', str(out_path)]) == 0
    report = SolveReport.model_validate_json(out_path.read_text(encoding='utf-8'))
    assert [e.eliminant for e in report.eliminants] == ['y1^2 - 1']
    assert report.bounds.bezout == 2
    assert report.oracle.passed


def test_solve_is_deterministic(problem_file, tmp_path):
    path = problem_file(EXP_PAIR)
    forms = []
    for name in ('a.json', 'b.json'):
        target = tmp_path / name
        assert main(['solve', path, '--out', str(target)]) == 0
        forms.append(SolveReport.model_validate_json(target.read_text(encoding='utf-8')).comparison_form())
    assert forms[0] == forms[1]


def test_solve_over_gf5(problem_file, tmp_path):
    document = {'field': {'characteristic': 5}, 'case': 'reciprocal', 'l1': 'D^2 - 1', 'l2': 'D^2 - 1'}
    target = tmp_path / 'gf5.json'
    assert main(['solve', problem_file(document), '--out', str(target)]) == 0
    report = SolveReport.model_validate_json(target.read_text(encoding='utf-8'))
    assert report.inputs.characteristic == 5
    assert report.eliminants[0].eliminant == 'y1^2 + 4'
    assert report.bounds.binomial is None


def test_solve_characteristic_override(problem_file, tmp_path):
    target = tmp_path / 'override.json'
    assert main(['solve', problem_file(EXP_PAIR), '--char', '5', '--out', str(target)]) == 0
    report = SolveReport.model_validate_json(target.read_text(encoding='utf-8'))
    assert report.inputs.characteristic == 5
    assert not report.oracle.ran


def test_solve_hypothesis_violation(problem_file, capsys):
    document = {'field': {'characteristic': 2}, 'case': 'reciprocal', 'l1': 'D^2 - 1', 'l2': 'D^2 - 1'}
    assert main(['solve', problem_file(document)]) == 2
    assert 'p > N_1+N_2-2' in capsys.readouterr().err


def test_solve_power_case(problem_file, capsys):
    document = {'case': 'power', 'q': 2, 'l1': 'D^2 - 1', 'l2': 'D^2 - 4', 'oracle': {'x0': 0, 'ics': [1, 1]}}
    assert main(['solve', problem_file(document)]) == 0
    assert 'necessary equations: 0' in capsys.readouterr().out


def test_solve_unit_ideal(problem_file, capsys):
    document = {'case': 'power', 'q': 3, 'l1': 'D^2 - 1', 'l2': 'D^2 - 4'}
    assert main(['solve', problem_file(document)]) == 3
    assert 'unit ideal' in capsys.readouterr().out


def test_solve_oracle_mismatch(problem_file, capsys):
    document = dict(EXP_PAIR, l2='D^2 - 9')
    path = problem_file(document)
    assert main(['solve', path]) == 1
    assert 'y1: y1^2 - 5' in capsys.readouterr().out
    assert main(['solve', path, '--no-oracle']) == 0


def test_solve_operator_as_coefficient_list(problem_file, capsys):
    document = dict(EXP_PAIR, l1={'order': 2, 'coefficients': ['0', '-1']}, l2=['1', '0', '-1'])
    assert main(['solve', problem_file(document)]) == 0
    assert 'y1: y1^2 - 1' in capsys.readouterr().out


@pytest.mark.parametrize('document', [
    {'case': 'reciprocal', 'l1': 'D^2 -', 'l2': 'D^2 - 1'},
    {'case': 'reciprocal', 'l2': 'D^2 - 1'},
    {'case': 'power', 'l1': 'D^2 - 1', 'l2': 'D^2 - 4'},
    {'case': 'sideways', 'l1': 'D^2 - 1', 'l2': 'D^2 - 1'},
    {'field': {'characteristic': 4}, 'case': 'reciprocal', 'l1': 'D^2 - 1', 'l2': 'D^2 - 1'},
])
def test_solve_parse_errors(document, problem_file):
    assert main(['solve', problem_file(document)]) == 4


def test_solve_missing_file(tmp_path, capsys):
    assert main(['solve', str(tmp_path / 'absent.json')]) == 4
    assert 'cannot read' in capsys.readouterr().err


def test_solve_invalid_json(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"case": ', encoding='utf-8')
    assert main(['solve', str(path)]) == 4


def test_solve_singular_expansion_point(problem_file, capsys):
    document = {'case': 'reciprocal', 'l1': 'D^2', 'l2': 'D^2 + (3/x)*D + 1/x^2',
                'oracle': {'x0': 0, 'ics': [1, 1]}}
    assert main(['solve', problem_file(document)]) == 2


def test_solve_power_function_pair(problem_file, capsys):
    document = {'case': 'reciprocal', 'l1': 'D^2', 'l2': 'D^2 + (3/x)*D + 1/x^2',
                'oracle': {'x0': 1, 'ics': [1, 1]}}
    assert main(['solve', problem_file(document)]) == 0
    assert 'y1: y1^2 - ((3/2)/x)*y1 + ((1/2)/x^2)' in capsys.readouterr().out


def test_solve_square_root_pair(problem_file, capsys):
    operator = 'D^2 - (1/(2*x))*D - x'
    document = {'case': 'reciprocal', 'l1': operator, 'l2': operator, 'oracle': {'x0': '1', 'ics': [1, 1]}}
    assert main(['solve', problem_file(document)]) == 0
    assert 'y1: y1^2 - x' in capsys.readouterr().out


def test_solve_nonlinear(problem_file, tmp_path):
    document = {'case': 'nonlinear', 'nonlinear': {'n': 3, 'solved': 'y1^2'}, 'l2': 'D^2 - 1',
                'oracle': {'x0': 0, 'ics': [1, 1, 1]}}
    target = tmp_path / 'nonlinear.json'
    assert main(['solve', problem_file(document), '--out', str(target)]) == 0
    report = SolveReport.model_validate_json(target.read_text(encoding='utf-8'))
    # y = e^x: y''' = y'^2/y and 1/y = e^-x
    assert report.oracle.ran
    assert report.oracle.l1.passed
    assert report.oracle.l2.passed
    assert [check.j for check in report.oracle.eliminants] == [1, 2]
    assert all(check.passed for check in report.oracle.eliminants)
    assert report.groebner_verified


def test_solve_nonlinear_without_common_rational_solution(problem_file, tmp_path):
    document = {'case': 'nonlinear', 'nonlinear': {'n': 3, 'solved': '-y1^2 - 1'}, 'l2': 'D^2 + 1',
                'oracle': {'x0': 0, 'ics': [1, 1, 0]}}
    target = tmp_path / 'nonlinear.json'
    assert main(['solve', problem_file(document), '--out', str(target)]) == 1
    report = SolveReport.model_validate_json(target.read_text(encoding='utf-8'))
    assert report.oracle.l1.passed
    # (1/y)'' + 1/y = 3 at x = 0
    assert not report.oracle.l2.passed
    assert report.oracle.l2.first_failure == 0


def test_solve_nonlinear_needs_one_form(problem_file):
    document = {'case': 'nonlinear', 'nonlinear': {'n': 3}, 'l2': 'D^2 + 1'}
    assert main(['solve', problem_file(document)]) == 4


def test_verify_round_trip(problem_file, tmp_path, capsys):
    path = problem_file(EXP_PAIR)
    report_path = tmp_path / 'report.json'
    assert main(['solve', path, '--out', str(report_path)]) == 0
    capsys.readouterr()
    assert main(['verify', path, '--report', str(report_path)]) == 0
    assert 'y1: pass' in capsys.readouterr().out

    stored = json.loads(report_path.read_text(encoding='utf-8'))
    stored['eliminants'][0]['eliminant'] = 'y1^2 - 5'
    report_path.write_text(json.dumps(stored), encoding='utf-8')
    assert main(['verify', path, '--report', str(report_path)]) == 1
    assert 'fail at coefficient 0' in capsys.readouterr().out


def test_verify_needs_oracle_block(problem_file, tmp_path):
    document = {key: value for key, value in EXP_PAIR.items() if key != 'oracle'}
    report_path = tmp_path / 'report.json'
    assert main(['solve', problem_file(document), '--out', str(report_path)]) == 0
    assert main(['verify', problem_file(document), '--report', str(report_path)]) == 4
