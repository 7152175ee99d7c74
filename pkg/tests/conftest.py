import json
from pathlib import Path
from typing import Any, Callable, Dict

import pytest

from app.algebra.basefield import FunctionFieldDomain, rational_function_field
from app.algebra.mpoly import PolyRing
from app.cli.parser import parse_operator
from app.logdiff import system as system_module
from app.logdiff.models import OdeProblem
from app.utils.enums import CaseTag
from app.utils.settings import SETTINGS


@pytest.fixture(autouse=True)
def verified_groebner(monkeypatch):
    """Every Groebner basis computed under test passes the S-polynomial post-check."""
    monkeypatch.setattr(SETTINGS, 'verify_groebner', True)


@pytest.fixture
def K() -> FunctionFieldDomain:
    return rational_function_field(0)


@pytest.fixture
def K5() -> FunctionFieldDomain:
    return rational_function_field(5)


@pytest.fixture
def ring_factory(K) -> Callable[[int], PolyRing]:
    def make(nvars: int) -> PolyRing:
        return PolyRing(K, nvars)
    return make


@pytest.fixture
def linear_problem(K) -> Callable[..., OdeProblem]:
    """Build a reciprocal or power problem from operator expressions."""
    def make(l1: str, l2: str, case: CaseTag = CaseTag.RECIPROCAL, q: int = None, domain=None) -> OdeProblem:
        domain = domain or K
        return OdeProblem(case=case, l1=parse_operator(l1, domain), l2=parse_operator(l2, domain), q=q)
    return make


@pytest.fixture
def problem_file(tmp_path: Path) -> Callable[[Dict[str, Any]], str]:
    """Write a problem document to a temporary JSON file and return its path."""
    counter = {'n': 0}

    def write(document: Dict[str, Any]) -> str:
        counter['n'] += 1
        path = tmp_path / f"problem_{counter['n']}.json"
        path.write_text(json.dumps(document), encoding='utf-8')
        return str(path)
    return write


@pytest.fixture
def first_equation_vanishes(monkeypatch):
    """Make the reduction of the first assembled equation come out identically zero."""
    real = system_module.reduce_high_variables
    calls = []

    def reduce(equation, forms, n):
        calls.append(n)
        reduced = real(equation, forms, n)
        return reduced.ring.zero if len(calls) == 1 else reduced

    monkeypatch.setattr(system_module, 'reduce_high_variables', reduce)
