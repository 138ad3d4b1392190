"""Intersection numbers on a record and the geometry of a surface inside a 3-fold."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .lattice import DivisorClass, LatticeError, RecordMismatch, is_effective, is_nef


class ChowError(ValueError):
    pass


class UnsupportedHodgeBranch(ChowError):
    pass


class InadmissibleSurface(ChowError):
    pass


def _coords(d: DivisorClass, Z):
    if d.record_id != Z.id:
        raise RecordMismatch(f"class on {d.record_id} used with record {Z.id}")
    if len(d.coords) != Z.rank:
        raise LatticeError("rank mismatch")
    return d.coords


def intersect(Z, *classes: DivisorClass) -> int:
    """Degree of the product of dim(Z) divisor classes."""
    if len(classes) != Z.dim:
        raise ChowError(f"need {Z.dim} classes on a {Z.dim}-dimensional record, got {len(classes)}")
    vecs = [_coords(d, Z) for d in classes]
    total = 0
    for idx in itertools.product(*[[i for i, x in enumerate(v) if x] for v in vecs]):
        coeff = 1
        for v, i in zip(vecs, idx):
            coeff *= v[i]
        total += coeff * Z.form_entry(idx)
    return total


def triple_product(d1: DivisorClass, d2: DivisorClass, d3: DivisorClass, Z) -> int:
    if Z.dim != 3:
        raise ChowError(f"triple product needs a 3-fold, {Z.id} has dimension {Z.dim}")
    return intersect(Z, d1, d2, d3)


def surface_product(d1: DivisorClass, d2: DivisorClass, S) -> int:
    if S.dim != 2:
        raise ChowError(f"{S.id} is not a surface")
    return intersect(S, d1, d2)


def c2_dot(d: DivisorClass, Z) -> int:
    if Z.dim != 3 or Z.c2 is None:
        raise ChowError(f"{Z.id} carries no c2 pairing")
    return sum(a * b for a, b in zip(_coords(d, Z), Z.c2))


def euler_characteristic(Z, L: DivisorClass) -> Fraction:
    """Riemann-Roch for a line bundle on a 3-fold with chi(O) = 1."""
    c1 = Z.anticanonical
    val = (Fraction(triple_product(L, L, L, Z), 6)
           + Fraction(triple_product(c1, L, L, Z), 4)
           + Fraction(triple_product(c1, c1, L, Z) + c2_dot(L, Z), 12)
           + Fraction(c2_dot(c1, Z), 24))
    return val


@dataclass(frozen=True)
class SurfaceGeometry:
    kA_squared: int
    chi_top: int
    h01: int
    h02: int
    h11: int
    branch: str = ""

    def betti_ok(self) -> bool:
        return self.chi_top == 2 - 4 * self.h01 + 2 * self.h02 + self.h11

    def noether_ok(self) -> bool:
        return 12 * (1 - self.h01 + self.h02) == self.kA_squared + self.chi_top

    @property
    def chi_O(self) -> int:
        return 1 - self.h01 + self.h02


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise InadmissibleSurface(f"{what}: {num}/{den} is not an integer")
    return q


def surface_geometry(A: DivisorClass, Z) -> SurfaceGeometry:
    """K_A^2, topological Euler number and Hodge numbers of a smooth A in Z.

    Three cases for K_Z + A: not effective, zero, or effective with A nef
    and big (then Kawamata-Viehweg gives h01 = 0 and h02 = h0(K_Z + A)).
    """
    if Z.dim != 3:
        raise ChowError("surface geometry needs a 3-fold")
    K = Z.K
    KA = K + A
    kA2 = triple_product(KA, KA, A, Z)
    chi = c2_dot(A, Z) + triple_product(KA, A, A, Z)
    total = kA2 + chi
    if KA.is_zero():
        h01, h02 = 0, 1
        if total != 24:
            raise InadmissibleSurface(f"anticanonical surface with K^2 + e = {total}, expected 24")
        branch = "anticanonical"
    elif not is_effective(KA, Z):
        h02 = 0
        h01 = 1 - _exact_div(total, 12, "Noether quotient")
        branch = "adjoint not effective"
    elif is_nef(A, Z) and triple_product(A, A, A, Z) > 0:
        h01 = 0
        chi_O = _exact_div(total, 12, "Noether quotient")
        h02 = chi_O - 1
        rr = euler_characteristic(Z, KA)
        if rr != h02:
            raise InadmissibleSurface(f"h02 from Noether ({h02}) disagrees with Riemann-Roch ({rr})")
        branch = "adjoint effective, A nef and big"
    else:
        raise UnsupportedHodgeBranch(
            f"K_Z + A = {KA.coords} is effective and nonzero while A = {A.coords} is not nef and big")
    if h01 < 0 or h02 < 0:
        raise InadmissibleSurface(f"negative Hodge number (h01={h01}, h02={h02})")
    h11 = chi + 4 * h01 - 2 * h02 - 2
    if h11 < 1:
        raise InadmissibleSurface(f"h11 = {h11} is impossible for a projective surface")
    return SurfaceGeometry(kA2, chi, h01, h02, h11, branch)
