"""The numerical profile of a base variety."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..lattice import Cone, CurveClass, DivisorClass


@dataclass(frozen=True)
class IrreducibleRules:
    """Which classes may stand for a smooth irreducible hypersurface.

    A class qualifies when it is nef and nonzero and not k*v (k >= 2) for a
    listed fibration class v, or when it is one of the listed exceptional
    prime divisors.
    """

    exceptional: tuple[tuple[int, ...], ...] = ()
    no_multiples: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class Factorization:
    """Z = W x Z0, with the coordinate indices belonging to each factor."""

    w: str
    z0: str
    w_indices: tuple[int, ...]
    z0_indices: tuple[int, ...]


@dataclass(frozen=True)
class VarietyRecord:
    id: str
    name: str
    dim: int
    rank: int
    basis: tuple[str, ...]
    curve_basis: tuple[str, ...]
    pairing: tuple[tuple[int, ...], ...]
    nef: Cone
    eff: Cone
    rays: tuple[tuple[int, ...], ...]
    minus_K: tuple[int, ...]
    form: Mapping[tuple[int, ...], int]
    degree: int
    c2: tuple[int, ...] | None = None
    euler: int | None = None
    h12: int | None = None
    delta: int | None = None
    automorphisms: tuple[tuple[tuple[int, ...], ...], ...] = ()
    irreducible: IrreducibleRules = field(default_factory=IrreducibleRules)
    toric: tuple[tuple[int, ...], ...] | None = None
    negative_support_free: bool = False
    products: tuple[Factorization, ...] = ()
    recipe: Mapping | None = None

    def cls(self, coords: Sequence[int]) -> DivisorClass:
        return DivisorClass(self.id, tuple(coords))

    def curve(self, coords: Sequence[int]) -> CurveClass:
        return CurveClass(self.id, tuple(coords))

    @property
    def K(self) -> DivisorClass:
        return -self.cls(self.minus_K)

    @property
    def anticanonical(self) -> DivisorClass:
        return self.cls(self.minus_K)

    def zero(self) -> DivisorClass:
        return self.cls((0,) * self.rank)

    def unit(self, i: int) -> DivisorClass:
        v = [0] * self.rank
        v[i] = 1
        return self.cls(v)

    def form_entry(self, idx: Sequence[int]) -> int:
        return self.form.get(tuple(sorted(idx)), 0)

    @property
    def is_toric(self) -> bool:
        return self.toric is not None

    def __hash__(self):
        return hash(self.id)

    def __eq__(self, other):
        return isinstance(other, VarietyRecord) and other.id == self.id and other.pairing == self.pairing \
            and dict(other.form) == dict(self.form) and other.minus_K == self.minus_K
