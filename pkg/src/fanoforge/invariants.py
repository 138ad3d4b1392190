"""Numerical invariants of the varieties produced by the construction.

For a surface base only the anticanonical degree of the resulting 3-fold
is computed. For a 3-fold base Z the result X is a 4-fold, obtained by
blowing up the P1-bundle Y = P(O + O(D)) along a surface V isomorphic to
A; its invariants come from the bundle formulas on Y followed by the
blow-up corrections along V.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from fractions import Fraction

from .chow import SurfaceGeometry, c2_dot, surface_geometry, surface_product, triple_product
from .lattice import DivisorClass


class InvariantError(ArithmeticError):
    pass


@dataclass(frozen=True, order=True)
class InvariantVector:
    c1_4: int
    c1sq_c2: int
    h0_minusK: int
    h11: int
    h12: int
    h13: int
    h22: int

    def as_tuple(self) -> tuple[int, ...]:
        return astuple(self)

    def riemann_roch_ok(self) -> bool:
        """h0(-K) = 1 + c1^4/6 + c1^2 c2/12 on a Fano 4-fold."""
        return 12 * (self.h0_minusK - 1) == 2 * self.c1_4 + self.c1sq_c2


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InvariantError(f"{what} = {x} is not an integer")
    return int(x)


# ------------------------------------------------------------------ 3-fold outputs

def minus_K_cubed(Zs, A: DivisorClass, D: DivisorClass) -> int:
    """Anticanonical degree of the 3-fold built over a surface."""
    if Zs.dim != 2:
        raise InvariantError(f"{Zs.id} is not a surface")
    mk = Zs.anticanonical
    D1, D2 = D, A - D
    return (surface_product(D1, D1, Zs) + surface_product(D2, D2, Zs) + 6 * surface_product(mk, mk, Zs)
            - 3 * surface_product(mk, D1 + D2, Zs))


# ------------------------------------------------------------------ 4-fold outputs

@dataclass(frozen=True)
class StageInvariants:
    K4: int
    K2c2: int
    chi: int


def p1bundle_invariants(Z, E_c1: DivisorClass, E_c2_dot: int = 0) -> StageInvariants:
    """K^4, K^2 c2 and chi(-K) of P(E) over a Fano 3-fold.

    E_c2_dot is K_Z . c2(E); it vanishes for O + O(D).
    """
    K = -Z.anticanonical
    K3 = triple_product(K, K, K, Z)
    Kc1c1 = triple_product(K, E_c1, E_c1, Z)
    Kc2W = c2_dot(K, Z)
    K4 = -8 * Kc1c1 + 32 * E_c2_dot - 8 * K3
    K2c2 = -2 * Kc1c1 + 8 * E_c2_dot - 2 * K3 - 4 * Kc2W
    chi = 1 + 6 * E_c2_dot - Fraction(3, 2) * (K3 + Kc1c1) - Fraction(Kc2W, 3)
    return StageInvariants(K4, K2c2, _integral(chi, "chi(-K) of the P1-bundle"))


@dataclass(frozen=True)
class BlowupTerms:
    """Intersection data of the blown-up surface V inside Y."""

    KY_sq: int       # (K_Y|_V)^2
    KV_KY: int       # K_V . K_Y|_V
    c2N: int         # c2 of the normal bundle
    KV_sq: int       # K_V^2
    chiO: int        # chi(O_V)


def blowup_terms(Z, A: DivisorClass, D: DivisorClass, sg: SurfaceGeometry) -> BlowupTerms:
    K = -Z.anticanonical
    KmD = K - D
    KpA = K + A
    return BlowupTerms(
        KY_sq=triple_product(KmD, KmD, A, Z),
        KV_KY=triple_product(KpA, KmD, A, Z),
        c2N=triple_product(D, A, A, Z),
        KV_sq=triple_product(KpA, KpA, A, Z),
        chiO=sg.chi_O,
    )


def blowup_invariants(Y: StageInvariants, Z, A: DivisorClass, D: DivisorClass, sg: SurfaceGeometry,
                      terms: BlowupTerms | None = None) -> StageInvariants:
    t = terms or blowup_terms(Z, A, D, sg)
    if t.KV_sq != sg.kA_squared:
        raise InvariantError("K_V^2 disagrees with the surface geometry")
    K4 = Y.K4 - 3 * t.KY_sq - 2 * t.KV_KY + t.c2N - t.KV_sq
    K2c2 = Y.K2c2 - 12 * t.chiO + 2 * t.KV_sq - 2 * t.KV_KY - 2 * t.c2N
    chi = Y.chi - t.chiO - Fraction(t.KY_sq + t.KV_KY, 2)
    return StageInvariants(K4, K2c2, _integral(chi, "chi(-K) after the blow-up"))


def hodge_4fold(Z, A: DivisorClass, sg: SurfaceGeometry) -> tuple[int, int, int, int]:
    if Z.h12 is None:
        raise InvariantError(f"{Z.id} carries no h12 datum")
    rho = Z.rank
    return rho + 2, Z.h12 + sg.h01, sg.h02, 2 * rho + sg.h11


def invariants_4fold(c) -> InvariantVector:
    Z, A, D = c.record, c.A, c.D
    if Z.dim != 3:
        raise InvariantError(f"{Z.id} is not a 3-fold")
    sg = surface_geometry(A, Z)
    Y = p1bundle_invariants(Z, D)
    X = blowup_invariants(Y, Z, A, D, sg)
    h11, h12, h13, h22 = hodge_4fold(Z, A, sg)
    v = InvariantVector(X.K4, X.K2c2, X.chi, h11, h12, h13, h22)
    if not v.riemann_roch_ok():
        raise InvariantError(f"Riemann-Roch fails for {c}: {v}")
    return v


# ------------------------------------------------------------------ independent route through the Chow ring

def ring_invariants(c) -> tuple[int, int]:
    """c1^4 and c1^2 c2 of the 4-fold computed in its Chow ring.

    Generators are the divisor basis of Z, the tautological class xi of
    Y = P(O + O(D)) (with xi^2 = D xi), the exceptional divisor E and c2(Z).
    V is the complete intersection xi . A, and integrals of E^k are pushed
    down through the Segre classes of its normal bundle O(xi) + O(A).
    """
    from functools import lru_cache

    from .ring import GradedRing

    Z, A, D = c.record, c.A, c.D
    n = Z.rank
    XI, E, C2 = n, n + 1, n + 2

    @lru_cache(maxsize=None)
    def on_Z(mono) -> int:
        if mono[C2] > 1:
            return 0
        divs = [Z.unit(i) for i in range(n) for _ in range(mono[i])]
        if mono[C2]:
            return c2_dot(divs[0], Z)
        return triple_product(*divs, Z)

    def on_Y(poly) -> Fraction:
        total = Fraction(0)
        for m, coeff in poly.items():
            k = m[XI]
            if k == 0:
                continue
            rest = list(m)
            rest[XI] = 0
            lowered = R.mul({tuple(rest): Fraction(1)}, Dpow[k - 1])
            total += coeff * sum(cc * on_Z(mm) for mm, cc in lowered.items())
        return total

    @lru_cache(maxsize=None)
    def integ(m):
        e = m[E]
        if e == 1:
            return 0
        base = list(m)
        base[E] = 0
        if e == 0:
            return on_Y({tuple(base): Fraction(1)})
        seg = R.part(segre, e - 2)
        return (-1) ** (e - 1) * on_Y(R.mul({tuple(base): Fraction(1)}, V, seg))

    R = GradedRing([*Z.basis, "xi", "E", "c2"], [1] * (n + 2) + [2], 4, integ)
    Dp = R.linear(D.coords)
    Dpow = [R.power(Dp, k) for k in range(4)]
    Ap = R.linear(A.coords)
    xi, Ex, c2Z = R.gen(XI), R.gen(E), R.gen(C2)
    V = R.mul(xi, Ap)
    segre = R.inverse(R.mul(R.add(R.const(1), xi), R.add(R.const(1), Ap)))
    c1Z = R.linear(Z.minus_K)
    c1Y = R.add(c1Z, R.scale(xi, 2), R.neg(Dp))
    c2Y = R.add(c2Z, R.mul(c1Z, R.sub(R.scale(xi, 2), Dp)))
    c1X = R.sub(c1Y, Ex)
    c2X = R.sub(R.add(c2Y, V), R.mul(c1Y, Ex))
    c1_4 = R.integrate(R.power(c1X, 4))
    c1sq_c2 = R.integrate(R.mul(c1X, c1X, c2X))
    return _integral(c1_4, "c1^4 by the ring"), _integral(c1sq_c2, "c1^2 c2 by the ring")


# ------------------------------------------------------------------ products of two del Pezzo surfaces

def product_surfaces_invariants(S1, S2) -> InvariantVector:
    """Invariants of S1 x S2 for rational surfaces, by the Kunneth formula."""
    d1, d2 = S1.degree, S2.degree
    e1, e2 = S1.euler, S2.euler
    h1, h2 = e1 - 2, e2 - 2
    c1_4 = 6 * d1 * d2
    c1sq_c2 = d1 * e2 + d2 * e1 + 2 * d1 * d2
    h0 = _integral(1 + Fraction(c1_4, 6) + Fraction(c1sq_c2, 12), "h0 of the product")
    return InvariantVector(c1_4, c1sq_c2, h0, h1 + h2, 0, 0, 2 + h1 * h2)


__all__ = ["InvariantError", "InvariantVector", "StageInvariants", "BlowupTerms", "minus_K_cubed",
           "p1bundle_invariants", "blowup_terms", "blowup_invariants", "hodge_4fold", "invariants_4fold",
           "product_surfaces_invariants", "ring_invariants"]
