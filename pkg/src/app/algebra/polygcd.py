"""GCDs over Q[z..] and GF(p)[z..] through sympy's sparse polynomial rings.

Polynomials cross the boundary as plain dicts exponent tuple -> coefficient,
with `Fraction` coefficients in characteristic 0 and `int` residues in
characteristic p.
"""
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Tuple

from sympy.polys.domains import GF, QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

Plain = Dict[Tuple[int, ...], Any]


@lru_cache(maxsize=None)
def sparse_ring(characteristic: int, nvars: int) -> PolyRing:
    domain = QQ if characteristic == 0 else GF(characteristic)
    return ring(','.join(f"z{i}" for i in range(nvars)), domain)[0]


def to_sparse(poly: Plain, characteristic: int, nvars: int) -> PolyElement:
    target = sparse_ring(characteristic, nvars)
    domain = target.domain
    if characteristic == 0:
        terms = {m: domain(c.numerator, c.denominator) for m, c in poly.items()}
    else:
        terms = {m: domain(c) for m, c in poly.items()}
    return target.from_dict(terms)


def from_sparse(poly: PolyElement, characteristic: int) -> Plain:
    if characteristic == 0:
        return {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in poly.terms()}
    return {m: int(c) % characteristic for m, c in poly.terms()}


def gcd_cofactors(a: Plain, b: Plain, characteristic: int, nvars: int) -> Tuple[Plain, Plain, Plain]:
    """(h, a/h, b/h) for a gcd h; h is only defined up to a unit of the coefficient field."""
    h, ca, cb = to_sparse(a, characteristic, nvars).cofactors(to_sparse(b, characteristic, nvars))
    return from_sparse(h, characteristic), from_sparse(ca, characteristic), from_sparse(cb, characteristic)
