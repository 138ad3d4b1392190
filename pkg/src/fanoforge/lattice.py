"""Divisor and curve classes, rational cones and bounded lattice-point search.

Everything is exact: integers for classes, ``Fraction`` inside the LP.
Records are duck-typed here (``id``, ``rank``, ``pairing``, ``rays``,
``eff``) so this module does not depend on the catalog.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp


class LatticeError(ValueError):
    """Malformed input to a lattice operation."""


class RecordMismatch(LatticeError):
    pass


class UnboundedSystem(LatticeError):
    def __init__(self, direction):
        self.direction = tuple(direction)
        super().__init__(f"inequality system is unbounded along direction {self.direction}")


def _vec(v) -> tuple[int, ...]:
    out = tuple(int(x) for x in v)
    if any(out[i] != v[i] for i in range(len(out))):
        raise LatticeError(f"non-integer coordinates {tuple(v)}")
    return out


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, int(x))
    if g == 0:
        raise LatticeError("zero vector has no primitive form")
    return tuple(int(x) // g for x in v)


@dataclass(frozen=True, order=True)
class DivisorClass:
    record_id: str
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _vec(self.coords))

    def _same(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.record_id != self.record_id:
            raise RecordMismatch(f"{self.record_id} vs {other.record_id}")
        if len(other.coords) != len(self.coords):
            raise LatticeError("rank mismatch")
        return other

    def __add__(self, other):
        other = self._same(other)
        return DivisorClass(self.record_id, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        other = self._same(other)
        return DivisorClass(self.record_id, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivisorClass(self.record_id, tuple(-a for a in self.coords))

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.record_id, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def rank(self):
        return len(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True, order=True)
class CurveClass:
    record_id: str
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _vec(self.coords))

    @property
    def rank(self):
        return len(self.coords)


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def rank_of(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rk, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        p = next((r for r in range(rk, len(m)) if m[r][c] != 0), None)
        if p is None:
            continue
        m[rk], m[p] = m[p], m[rk]
        for r in range(len(m)):
            if r != rk and m[r][c] != 0:
                f = m[r][c] / m[rk][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rk])]
        rk += 1
    return rk


def solve_linear(mat: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Unique solution of a square system, or None when singular."""
    n = len(mat)
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(mat, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        m[c] = [v / m[c][c] for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return tuple(r[-1] for r in m)


def _normal(rows: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    # generalized cross product of n-1 vectors in Z^n
    out = []
    for j in range(n):
        minor = [[r[k] for k in range(n) if k != j] for r in rows]
        d = determinant(minor) if minor else Fraction(1)
        out.append(int(d) * (-1) ** j)
    return tuple(out)


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone given by primitive integer generators."""

    generators: tuple[tuple[int, ...], ...]
    dual_generators: tuple[tuple[int, ...], ...] | None = None
    _facets: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        gens = tuple(_vec(g) for g in self.generators)
        if not gens:
            raise LatticeError("cone needs at least one generator")
        n = len(gens[0])
        for g in gens:
            if len(g) != n:
                raise LatticeError("generators of unequal length")
            if not any(g):
                raise LatticeError("zero generator")
            if primitive(g) != g:
                raise LatticeError(f"generator {g} is not primitive")
        object.__setattr__(self, "generators", gens)
        if self.dual_generators is not None:
            object.__setattr__(self, "dual_generators", tuple(_vec(g) for g in self.dual_generators))

    @property
    def dim(self):
        return len(self.generators[0])

    def contains(self, v: Sequence) -> bool:
        """Exact LP feasibility of v = sum t_i g_i with t >= 0."""
        n = self.dim
        if len(v) != n:
            raise LatticeError("dimension mismatch")
        if not any(v):
            return True
        a_eq = [[g[i] for g in self.generators] for i in range(n)]
        return lp.feasible_point(a_eq=a_eq, b_eq=list(v), n=len(self.generators), nonneg=True) is not None

    def facets(self) -> tuple[tuple[int, ...], ...]:
        """Primitive inward normals u with u.x >= 0 cutting out the cone.

        Only for full-dimensional cones.
        """
        if self._facets:
            return self._facets[0]
        n = self.dim
        gens = self.generators
        if rank_of(gens) != n:
            raise LatticeError("facets requested for a cone that is not full-dimensional")
        if n == 1:
            res = (primitive((gens[0][0],)),)
        else:
            found = set()
            for sub in itertools.combinations(gens, n - 1):
                if rank_of(sub) != n - 1:
                    continue
                u = _normal(sub, n)
                vals = [dot(u, g) for g in gens]
                if all(x >= 0 for x in vals):
                    found.add(primitive(u))
                elif all(x <= 0 for x in vals):
                    found.add(primitive(tuple(-x for x in u)))
            res = tuple(sorted(found))
        self._facets.append(res)
        return res

    def rational_coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coordinates of v in the generator basis (simplicial cones only)."""
        n = self.dim
        if len(self.generators) != n:
            return None
        mat = [[g[i] for g in self.generators] for i in range(n)]
        return solve_linear(mat, v)


# ---------------------------------------------------------------- records

def _check(d, Z):
    if d.record_id != Z.id:
        raise RecordMismatch(f"class on {d.record_id} used with record {Z.id}")
    if len(d.coords) != Z.rank:
        raise LatticeError(f"class {d.coords} has wrong length for rank {Z.rank}")


def pair(d: DivisorClass, c: CurveClass, Z) -> int:
    _check(d, Z)
    _check(c, Z)
    if Z.pairing is None:
        raise LatticeError(f"record {Z.id} has no pairing matrix")
    return pair_coords(d.coords, c.coords, Z.pairing)


def pair_coords(d: Sequence[int], c: Sequence[int], pairing) -> int:
    return sum(d[i] * pairing[i][j] * c[j] for i in range(len(d)) for j in range(len(c)) if d[i] and c[j])


def is_ample(d: DivisorClass, Z) -> bool:
    _check(d, Z)
    if not Z.rays:
        raise LatticeError(f"record {Z.id} has no extremal curve classes")
    return all(pair_coords(d.coords, r, Z.pairing) > 0 for r in Z.rays)


def is_nef(d: DivisorClass, Z) -> bool:
    _check(d, Z)
    if not Z.rays:
        raise LatticeError(f"record {Z.id} has no extremal curve classes")
    return all(pair_coords(d.coords, r, Z.pairing) >= 0 for r in Z.rays)


def is_effective(d: DivisorClass, Z) -> bool:
    _check(d, Z)
    return Z.eff.contains(d.coords)


# ---------------------------------------------------------------- enumeration

@dataclass(frozen=True)
class Inequality:
    """coeffs . x  >  rhs  (strict)  or  coeffs . x  >=  rhs."""

    coeffs: tuple[int, ...]
    rhs: int
    strict: bool = False

    def holds(self, x: Sequence[int]) -> bool:
        v = dot(self.coeffs, x)
        return v > self.rhs if self.strict else v >= self.rhs

    def integral(self) -> tuple[tuple[int, ...], int]:
        # over integer points a strict bound tightens by one
        r = Fraction(self.rhs)
        if self.strict:
            return self.coeffs, math.floor(r) + 1
        return self.coeffs, math.ceil(r)


def ample_system(Z, offset: Sequence[int], sign: int = -1) -> list[Inequality]:
    """Inequalities on x saying that offset + sign*x is ample on Z."""
    out = []
    for r in Z.rays:
        col = [sum(Z.pairing[i][j] * r[j] for j in range(Z.rank)) for i in range(Z.rank)]
        out.append(Inequality(tuple(sign * c for c in col), -dot(offset, col), True))
    return out


def effective_system(Z) -> list[Inequality]:
    return [Inequality(u, 0) for u in Z.eff.facets()]


def _bounded_check(system: Sequence[Inequality], n: int):
    # the recession cone {x : a.x >= 0} is trivial iff the rows have full
    # rank and some strictly positive combination of them vanishes
    rows = [ineq.coeffs for ineq in system]
    if rows and rank_of(rows) == n:
        a_eq = [[r[j] for r in rows] for j in range(n)]
        # y = 1 + s with s >= 0 keeps every weight strictly positive
        shift = [-sum(r[j] for r in rows) for j in range(n)]
        if lp.feasible_point(a_eq=a_eq, b_eq=shift, nonneg=True) is not None:
            return
    _unbounded_direction(system, n)


def _unbounded_direction(system: Sequence[Inequality], n: int):
    a_ub = [[-c for c in ineq.coeffs] for ineq in system]
    b_ub = [0] * len(system)
    for k in range(n):
        row = [0] * n
        row[k] = 1
        a_ub += [row, [-x for x in row]]
        b_ub += [1, 1]
    for j in range(n):
        for s in (1, -1):
            c = [0] * n
            c[j] = s
            res = lp.maximize(c, a_ub, b_ub)
            if res.status == lp.OPTIMAL and res.value > 0:
                scale = 1
                for v in res.x:
                    scale = scale * v.denominator // math.gcd(scale, v.denominator)
                direction = [int(v * scale) for v in res.x]
                raise UnboundedSystem(primitive(direction))


def lattice_points(system: Sequence[Inequality], n: int) -> list[tuple[int, ...]]:
    """All integer points of a bounded system, lexicographically sorted."""
    for ineq in system:
        if len(ineq.coeffs) != n:
            raise LatticeError("inequality has wrong length")
    if n == 0:
        return [()] if all(ineq.holds(()) for ineq in system) else []
    _bounded_check(system, n)
    tight = [ineq.integral() for ineq in system]
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int]):
        k = len(prefix)
        if k == n:
            x = tuple(prefix)
            if all(ineq.holds(x) for ineq in system):
                out.append(x)
            return
        if k == n - 1:
            # one variable left: each inequality is a bound, no LP needed
            lo_v, hi_v = None, None
            for coeffs, rhs in tight:
                a, r = coeffs[k], rhs - dot(coeffs[:k], prefix)
                if a > 0:
                    b = -((-r) // a)
                    lo_v = b if lo_v is None else max(lo_v, b)
                elif a < 0:
                    b = math.floor(Fraction(r, a))
                    hi_v = b if hi_v is None else min(hi_v, b)
                elif r > 0:
                    return
            if lo_v is None or hi_v is None:
                raise UnboundedSystem(tuple(int(i == k) for i in range(n)))
            for v in range(lo_v, hi_v + 1):
                out.append(tuple(prefix) + (v,))
            return
        # reduce system to remaining variables
        a_ub, b_ub = [], []
        for coeffs, rhs in tight:
            fixed = dot(coeffs[:k], prefix)
            a_ub.append([-c for c in coeffs[k:]])
            b_ub.append(fixed - rhs)
        m = n - k
        c = [0] * m
        c[0] = 1
        hi = lp.maximize(c, a_ub, b_ub)
        if hi.status == lp.INFEASIBLE:
            return
        c[0] = -1
        lo = lp.maximize(c, a_ub, b_ub)
        for v in range(math.ceil(-lo.value), math.floor(hi.value) + 1):
            prefix.append(v)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


def enumerate_lattice_points(Z, system: Iterable[Inequality]) -> list[DivisorClass]:
    system = list(system)
    return [DivisorClass(Z.id, x) for x in lattice_points(system, Z.rank)]


def brute_force_points(system: Sequence[Inequality], box: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    ranges = [range(lo, hi + 1) for lo, hi in box]
    return [x for x in itertools.product(*ranges) if all(i.holds(x) for i in system)]
