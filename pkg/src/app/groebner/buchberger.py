"""Buchberger's algorithm over K[y_1, ..., y_N] for a coefficient field K."""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple, Union

from app.algebra.mpoly import (
    MPoly,
    Monomial,
    PolyRing,
    TermOrder,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from app.utils.errors import DomainError
from app.utils.logging import logger
from app.utils.settings import SETTINGS

Terms = Dict[Monomial, Any]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic generators sorted by increasing leading monomial."""

    generators: Tuple[MPoly, ...]
    order: TermOrder
    ring: PolyRing

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant and bool(self.generators[0])

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _reduce(terms: Terms, basis: Sequence[Tuple[Monomial, Terms]], key, zero: Any) -> Terms:
    """Full reduction of `terms` by monic (leading monomial, terms) pairs."""
    p = dict(terms)
    remainder: Terms = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, g in basis:
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                for gm, gc in g.items():
                    t = mono_mul(gm, shift)
                    v = p.get(t, zero) - c * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            remainder[m] = c
            del p[m]
    return remainder


def _monic(terms: Terms, key, one: Any) -> Tuple[Monomial, Terms]:
    lm = max(terms, key=key)
    inv = one / terms[lm]
    return lm, {m: c * inv for m, c in terms.items()}


def _s_terms(f: Tuple[Monomial, Terms], g: Tuple[Monomial, Terms], zero: Any) -> Terms:
    lcm = mono_lcm(f[0], g[0])
    sf, sg = mono_div(lcm, f[0]), mono_div(lcm, g[0])
    acc = {mono_mul(m, sf): c for m, c in f[1].items()}
    for m, c in g[1].items():
        t = mono_mul(m, sg)
        v = acc.get(t, zero) - c
        if v:
            acc[t] = v
        else:
            acc.pop(t, None)
    return acc


def _as_pairs(basis: Union['GroebnerBasis', Sequence[MPoly]], order: TermOrder) -> List[Tuple[Monomial, Terms]]:
    pairs = []
    for g in basis:
        if g:
            pairs.append(_monic(g.terms, order.key, g.domain.one))
    return pairs


def s_polynomial(f: MPoly, g: MPoly, order: Optional[TermOrder] = None) -> MPoly:
    order = order or f.ring.order
    pf = _monic(f.terms, order.key, f.domain.one)
    pg = _monic(g.terms, order.key, g.domain.one)
    return MPoly(f.ring, _s_terms(pf, pg, f.domain.zero))


def normal_form(f: MPoly, gb: Union['GroebnerBasis', Sequence[MPoly]], order: Optional[TermOrder] = None) -> MPoly:
    """Remainder of f with no term divisible by a leading monomial of gb."""
    if order is None:
        order = gb.order if isinstance(gb, GroebnerBasis) else f.ring.order
    basis = _as_pairs(gb, order)
    return MPoly(f.ring, _reduce(f.terms, basis, order.key, f.domain.zero))


def _chain_skip(i: int, j: int, lms: List[Monomial], pending: Set[Tuple[int, int]]) -> bool:
    lcm = mono_lcm(lms[i], lms[j])
    for k in range(len(lms)):
        if k in (i, j):
            continue
        if mono_divides(lms[k], lcm) and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def buchberger(gens: Sequence[MPoly], order: Optional[TermOrder] = None, chain_criterion: Optional[bool] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`.

    Pairs are taken by the normal strategy (smallest lcm first); pairs with
    coprime leading monomials are skipped. The chain criterion is applied when
    enabled here or through the CHAIN_CRITERION setting. With VERIFY_GROEBNER
    set, every S-polynomial of the result is checked to reduce to zero.
    """
    nonzero = [g for g in gens if g]
    if not gens:
        raise DomainError("buchberger needs at least one generator")
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise DomainError("generators live in different polynomial rings")
    order = order or ring.order
    key = order.key
    zero, one = ring.domain.zero, ring.domain.one
    use_chain = SETTINGS.chain_criterion if chain_criterion is None else chain_criterion

    unit = GroebnerBasis((ring.one,), order, ring)
    basis: List[Tuple[Monomial, Terms]] = []
    for g in nonzero:
        lm, terms = _monic(g.terms, key, one)
        if not any(lm):
            return unit
        basis.append((lm, terms))

    pending: Set[Tuple[int, int]] = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def selection(pair: Tuple[int, int]) -> tuple:
        lcm = mono_lcm(basis[pair[0]][0], basis[pair[1]][0])
        return mono_degree(lcm), key(lcm), pair

    reductions = 0
    while pending:
        i, j = min(pending, key=selection)
        pending.discard((i, j))
        lm_i, lm_j = basis[i][0], basis[j][0]
        if all(a == 0 or b == 0 for a, b in zip(lm_i, lm_j)):
            continue
        if use_chain and _chain_skip(i, j, [b[0] for b in basis], pending):
            continue
        h = _reduce(_s_terms(basis[i], basis[j], zero), basis, key, zero)
        reductions += 1
        if not h:
            continue
        lm, terms = _monic(h, key, one)
        if not any(lm):
            logger.debug({'message': 'unit ideal reached', 'reductions': reductions})
            return unit
        new = len(basis)
        basis.append((lm, terms))
        pending.update((k, new) for k in range(new))

    reduced = _interreduce(basis, key, zero)
    logger.debug({'message': 'groebner basis computed', 'generators': len(reduced), 'reductions': reductions})
    gb = GroebnerBasis(tuple(MPoly(ring, terms) for _, terms in reduced), order, ring)
    if SETTINGS.verify_groebner and not verify_groebner(gb):
        raise DomainError("Groebner basis post-check failed")
    return gb


def _interreduce(basis: List[Tuple[Monomial, Terms]], key, zero: Any) -> List[Tuple[Monomial, Terms]]:
    minimal: List[Tuple[Monomial, Terms]] = []
    for idx, (lm, terms) in enumerate(basis):
        redundant = False
        for jdx, (other, _) in enumerate(basis):
            if jdx == idx or not mono_divides(other, lm):
                continue
            if other != lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            minimal.append((lm, terms))
    reduced = []
    for idx, (lm, terms) in enumerate(minimal):
        others = [b for jdx, b in enumerate(minimal) if jdx != idx]
        tail = {m: c for m, c in terms.items() if m != lm}
        rest = _reduce(tail, others, key, zero)
        rest[lm] = terms[lm]
        reduced.append((lm, rest))
    reduced.sort(key=lambda item: key(item[0]))
    return reduced


def verify_groebner(gb: GroebnerBasis) -> bool:
    """Every S-polynomial of basis pairs reduces to zero."""
    if gb.is_unit:
        return True
    key = gb.order.key
    zero = gb.ring.domain.zero
    basis = _as_pairs(gb, gb.order)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if _reduce(_s_terms(basis[i], basis[j], zero), basis, key, zero):
                logger.error({'message': 'S-polynomial did not reduce to zero', 'pair': (i, j)})
                return False
    return True
