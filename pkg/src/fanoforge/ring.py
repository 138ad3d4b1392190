"""Truncated graded polynomial algebras with an integration functional.

Polynomials are dicts ``{exponents: coefficient}``. Coefficients are
Fractions so that inverses like (1+x)^-1 and Todd-type expressions stay
exact. A ring knows the degree of each generator, the dimension above
which everything vanishes, an optional monomial reduction, and how to
integrate a top-degree monomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

Poly = dict


class GradedRing:
    def __init__(self, names: Sequence[str], degrees: Sequence[int], dim: int,
                 integrate_monomial: Callable[[tuple], Fraction | int],
                 reduce_monomial: Callable[[tuple], Mapping[tuple, Fraction]] | None = None):
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.dim = dim
        self._int = integrate_monomial
        self._red = reduce_monomial

    # construction -----------------------------------------------------
    def zero(self) -> Poly:
        return {}

    def const(self, c) -> Poly:
        return {(0,) * len(self.names): Fraction(c)} if c else {}

    def gen(self, name_or_index) -> Poly:
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * len(self.names)
        e[i] = 1
        return {tuple(e): Fraction(1)}

    def linear(self, coeffs: Sequence, indices: Sequence[int] | None = None) -> Poly:
        """Degree-one element sum c_k * gen(indices[k])."""
        indices = range(len(coeffs)) if indices is None else indices
        out: Poly = {}
        for c, i in zip(coeffs, indices):
            if c:
                out = self.add(out, self.scale(self.gen(i), c))
        return out

    def degree(self, mono: tuple) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    # arithmetic -------------------------------------------------------
    def _normalize(self, mono: tuple, coeff) -> Poly:
        if self.degree(mono) > self.dim:
            return {}
        red = self._red(mono) if self._red is not None else None
        if red is None:
            return {mono: coeff if isinstance(coeff, Fraction) else Fraction(coeff)}
        out: Poly = {}
        for m, c in red.items():
            for mm, cc in self._normalize(m, c).items():
                out[mm] = out.get(mm, 0) + cc * coeff
        return {m: c for m, c in out.items() if c}

    def add(self, *polys: Poly) -> Poly:
        out: Poly = {}
        for p in polys:
            for m, c in p.items():
                out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c}

    def scale(self, p: Poly, k) -> Poly:
        k = Fraction(k)
        return {m: c * k for m, c in p.items() if c * k}

    def neg(self, p: Poly) -> Poly:
        return self.scale(p, -1)

    def sub(self, p: Poly, q: Poly) -> Poly:
        return self.add(p, self.neg(q))

    def mul(self, *polys: Poly) -> Poly:
        out = self.const(1)
        for q in polys:
            qd = [(m2, c2, self.degree(m2)) for m2, c2 in q.items()]
            res: Poly = {}
            for m1, c1 in out.items():
                d1 = self.degree(m1)
                for m2, c2, d2 in qd:
                    if d1 + d2 > self.dim:
                        continue
                    m = tuple(a + b for a, b in zip(m1, m2))
                    red = self._red(m) if self._red is not None else None
                    if red is None:
                        res[m] = res.get(m, 0) + c1 * c2
                        continue
                    for mm, cc in self._normalize(m, c1 * c2).items():
                        res[mm] = res.get(mm, 0) + cc
            out = {m: c for m, c in res.items() if c}
        return out

    def power(self, p: Poly, k: int) -> Poly:
        return self.mul(*([p] * k)) if k else self.const(1)

    def part(self, p: Poly, deg: int) -> Poly:
        return {m: c for m, c in p.items() if self.degree(m) == deg}

    def inverse(self, p: Poly) -> Poly:
        """Inverse of 1 + (positive degree terms)."""
        c0 = self.part(p, 0)
        if c0 != self.const(1):
            raise ValueError("inverse only for elements with constant term 1")
        nil = self.sub(p, self.const(1))
        out = self.const(1)
        term = self.const(1)
        for _ in range(self.dim):
            term = self.neg(self.mul(term, nil))
            out = self.add(out, term)
        return out

    def integrate(self, p: Poly) -> Fraction:
        total = Fraction(0)
        for m, c in p.items():
            if self.degree(m) == self.dim:
                total += c * Fraction(self._int(m))
        return total


def projective_product(dims: Sequence[int]) -> GradedRing:
    """Chow ring of a product of projective spaces, hyperplane classes h_i."""
    dims = tuple(dims)

    def integ(m):
        return 1 if tuple(m) == dims else 0

    def red(m):
        if any(e > d for e, d in zip(m, dims)):
            return {}
        return None

    return GradedRing([f"h{i + 1}" for i in range(len(dims))], [1] * len(dims), sum(dims), integ, red)


def chern_of_projective_product(R: GradedRing, dims: Sequence[int]) -> Poly:
    out = R.const(1)
    for i, n in enumerate(dims):
        out = R.mul(out, R.power(R.add(R.const(1), R.gen(i)), n + 1))
    return out
