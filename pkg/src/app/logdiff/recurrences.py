"""The polynomials p_n and p_{n,q}.

p_n(y_1, ..., y_n) = y * D^n(1/y) and p_{n,q} = D^n(y^q) / y^q, written in the
quotient variables y_j = D^j y / y. Both are weighted-homogeneous of weight n.
"""
from functools import lru_cache
from math import comb
from typing import Optional

from app.algebra.basefield import rational_function_field
from app.algebra.mpoly import MPoly, PolyRing
from app.utils.errors import DomainError, HypothesisError


def _default_ring(n: int) -> PolyRing:
    return PolyRing(rational_function_field(0), max(n, 1))


def _check_index(n: int, ring: PolyRing, label: str) -> None:
    if n < 0:
        raise DomainError(f"{label} needs n >= 0, got {n}")
    if n > ring.nvars:
        raise DomainError(f"{label} with n={n} needs y{n}, outside {ring}")
    p = ring.domain.characteristic
    if p and n >= p:
        raise HypothesisError(
            f"{label} with n={n} needs n! invertible: requires n < p (p={p})", ['n < p']
        )


@lru_cache(maxsize=None)
def _p_reciprocal(n: int, ring: PolyRing) -> MPoly:
    if n == 0:
        return ring.one
    acc = ring.zero
    for j in range(1, n + 1):
        acc = acc + _p_reciprocal(n - j, ring) * ring.gen(j) * comb(n, j)
    return -acc


@lru_cache(maxsize=None)
def _p_power(n: int, q: int, ring: PolyRing) -> MPoly:
    if n == 0:
        return ring.one
    if q == 1:
        return ring.gen(n)
    acc = ring.gen(n)
    for j in range(n):
        y_j = ring.one if j == 0 else ring.gen(j)
        acc = acc + y_j * _p_power(n - j, q - 1, ring) * comb(n, j)
    return acc


def p_reciprocal(n: int, ring: Optional[PolyRing] = None) -> MPoly:
    """p_n = -sum_{j=1}^{n} C(n, j) p_{n-j} y_j with p_0 = 1."""
    ring = ring or _default_ring(n)
    _check_index(n, ring, 'p_n')
    return _p_reciprocal(n, ring)


def p_power(n: int, q: int, ring: Optional[PolyRing] = None) -> MPoly:
    """p_{n,q} = y_n + sum_{j=0}^{n-1} C(n, j) y_j p_{n-j,q-1} with p_{n,1} = y_n and y_0 = 1."""
    if q < 1:
        raise DomainError(f"p_(n,q) needs q >= 1, got {q}")
    ring = ring or _default_ring(n)
    _check_index(n, ring, 'p_(n,q)')
    return _p_power(n, q, ring)


def phi_truncate(f: MPoly, n: int) -> MPoly:
    """Send y_j to 0 for every j >= n."""
    if n < 1:
        raise DomainError(f"truncation index must be >= 1, got {n}")
    return MPoly(f.ring, {m: c for m, c in f.terms.items() if not any(m[n - 1:])})
