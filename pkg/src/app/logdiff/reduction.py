from typing import List, Sequence, Union

from app.algebra.mpoly import MPoly, PolyRing, delta_derive
from app.logdiff.models import NonlinearSpec, OdeSpec, ReductionForm
from app.utils.errors import DomainError, HypothesisError
from app.utils.logging import logger


def seed_form(l1: Union[OdeSpec, NonlinearSpec], ring: PolyRing) -> MPoly:
    """R_0 with y_n = R_0."""
    n = l1.order
    if isinstance(l1, NonlinearSpec):
        bad = l1.weight_violations()
        if bad:
            raise HypothesisError(
                f"solved form terms {', '.join(bad)} have weight >= n = {n}", ['weight(g) < n']
            )
        return l1.solved.lift(ring)
    acc = ring.constant(-l1.a(0))
    for i in range(1, n):
        acc = acc - ring.gen(i) * l1.a(i)
    return acc


def reduce_high_variables(f: MPoly, forms: Sequence[ReductionForm], n: int) -> MPoly:
    """Replace every y_j with j >= n by its stored form, highest index first."""
    for j in range(f.max_variable(), n - 1, -1):
        if f.degree_in(j) <= 0:
            continue
        k = j - n
        if k >= len(forms):
            raise DomainError(f"no reduction form stored for y{j} (have {len(forms)})")
        f = f.substitute(j, forms[k].expression)
    return f


def reduction_forms(l1: Union[OdeSpec, NonlinearSpec], count: int, ring: PolyRing) -> List[ReductionForm]:
    """R_0, ..., R_{count-1} with y_{n+k} = R_k, each free of y_j for j >= n."""
    n = l1.order
    if n < 2:
        raise HypothesisError(f"reduction forms need N_1 >= 2, got {n}", ['N_1 > 1'])
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if ring.nvars < n:
        raise DomainError(f"reduction forms for order {n} need a ring with at least {n} variables")
    forms = [ReductionForm(n, seed_form(l1, ring))]
    y1 = ring.gen(1)
    for k in range(1, count):
        previous = forms[-1].expression
        expression = reduce_high_variables(y1 * previous + delta_derive(previous), forms, n)
        forms.append(ReductionForm(n + k, expression))
    logger.debug({'message': 'reduction forms built', 'order': n, 'count': count})
    return forms
