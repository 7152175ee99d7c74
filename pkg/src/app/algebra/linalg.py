from typing import Any, Callable, Dict, Hashable, List, Optional, Tuple

from app.algebra.basefield import Domain, FunctionFieldDomain, UPoly, upoly_lcm

Row = Dict[Hashable, Any]


class LinearDependenceFinder:
    """Incremental fraction-free (Bareiss) elimination.

    Vectors are sparse dicts key -> coefficient over `domain`. Over k(x) every
    incoming vector is scaled into k[x] by the lcm of its denominators, so rows
    hold polynomials and each elimination step ends in an exact division by
    the previous pivot. `add` returns None while the vectors seen so far stay
    independent; on the first dependence it returns coefficients c_0..c_k in
    `domain` with c_k = 1 and sum(c_i * v_i) = 0.
    """

    def __init__(self, domain: Domain, pivot_key: Optional[Callable[[Hashable], Any]] = None):
        self.domain = domain
        self.pivot_key = pivot_key
        self.polynomial = isinstance(domain, FunctionFieldDomain)
        self.ring_one = UPoly(domain.base, (1,), domain.var) if self.polynomial else domain.one
        # (pivot, row, combination of the scaled inputs that produced the row)
        self.rows: List[Tuple[Hashable, Row, Dict[int, Any]]] = []
        self.scales: List[Any] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _integral(self, vector: Row) -> Tuple[Any, Row]:
        if not self.polynomial:
            return self.ring_one, {k: c for k, c in vector.items() if c}
        common = self.ring_one
        for c in vector.values():
            if c and c.den.degree > 0:
                common = upoly_lcm(common, c.den)
        return common, {k: c.num * (common // c.den) for k, c in vector.items() if c}

    def _step(self, target: Dict, row: Dict, lead: Any, c: Any, previous: Any) -> Dict:
        """(lead*target - c*row) / previous; the division is exact."""
        out = {}
        for key in set(target) | (set(row) if c else set()):
            t = target.get(key)
            value = lead * t if t is not None else None
            if c and key in row:
                term = c * row[key]
                value = -term if value is None else value - term
            if value:
                out[key] = value // previous if self.polynomial else value / previous
        return out

    def add(self, vector: Row) -> Optional[List[Any]]:
        scale, v = self._integral(vector)
        index = len(self.scales)
        self.scales.append(scale)
        combo: Dict[int, Any] = {index: self.ring_one}
        previous = self.ring_one
        for pivot, row, row_combo in self.rows:
            lead = row[pivot]
            c = v.get(pivot)
            v = self._step(v, row, lead, c, previous)
            combo = self._step(combo, row_combo, lead, c, previous)
            previous = lead
        if not v:
            return self._relation(combo)
        pivot = max(v, key=self.pivot_key) if self.pivot_key else max(v)
        self.rows.append((pivot, v, combo))
        return None

    def _relation(self, combo: Dict[int, Any]) -> List[Any]:
        coeffs = [
            self.domain.convert(combo[t] * self.scales[t]) if t in combo else self.domain.zero
            for t in range(len(self.scales))
        ]
        last = coeffs[-1]
        return [c / last for c in coeffs]
