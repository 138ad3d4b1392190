"""The default catalog, assembled from recipes plus per-variety cone data.

Run ``python -m fanoforge.catalog.build`` to regenerate the shipped JSON.
"""

from __future__ import annotations

import sys
from pathlib import Path

from . import recipes as R
from .record import Factorization, IrreducibleRules, VarietyRecord

UNIT2 = [(1, 0), (0, 1)]
UNIT3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
ID3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
SWAP2 = [[0, 1], [1, 0]]
DUAL2 = [[0, 1], [1, 0]]


def _perm(p):
    n = len(p)
    return [[1 if p[j] == i else 0 for j in range(n)] for i in range(n)]


# ------------------------------------------------------------------ auxiliary

def p1_record() -> VarietyRecord:
    return R.make_record(R.projective_space(1), id="P1", name="P1", degree=2, curve_basis=("P1",),
                         pairing=[[1]], nef=[(1,)], eff=[(1,)], rays=[(1,)], toric=[(1,)],
                         negative_support_free=True, delta=0)


def bl2p2_record() -> VarietyRecord:
    # basis: f = line through the two points, e1, e2
    form = {(0, 0): -1, (0, 1): 1, (0, 2): 1, (1, 1): -1, (2, 2): -1}
    p = R.Profile(2, ("f", "e1", "e2"), form, (3, 2, 2), None, 5, {"kind": "blowup_points", "of": "P2", "points": 2})
    return R.make_record(p, id="Bl2P2", name="blow-up of P2 in two points", degree=7, curve_basis=("f", "e1", "e2"),
                         pairing=[[-1, 1, 1], [1, -1, 0], [1, 0, -1]], nef=[(1, 1, 1), (1, 1, 0), (1, 0, 1)],
                         eff=[(1, 0, 0), (0, 1, 0), (0, 0, 1)], rays=[(1, 0, 0), (0, 1, 0), (0, 0, 1)],
                         automorphisms=[_perm([0, 2, 1])],
                         toric=[(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1)],
                         irreducible=IrreducibleRules(exceptional=((1, 0, 0), (0, 1, 0), (0, 0, 1)),
                                                      no_multiples=((1, 1, 0), (1, 0, 1))), delta=1)


def p3_record() -> VarietyRecord:
    return R.make_record(R.projective_space(3), id="P3", name="P3", degree=64, curve_basis=("line",),
                         pairing=[[1]], nef=[(1,)], eff=[(1,)], rays=[(1,)], toric=[(1,)], h12=0, delta=0,
                         negative_support_free=True)


def quadric_profile():
    return R.complete_intersection([4], [[2]])


# ------------------------------------------------------------------ surfaces

def surfaces() -> list[VarietyRecord]:
    p2 = R.make_record(R.projective_space(2), id="P2", name="P2", degree=9, curve_basis=("line",),
                       pairing=[[1]], nef=[(1,)], eff=[(1,)], rays=[(1,)], toric=[(1,)],
                       negative_support_free=True, delta=0)
    f1p = R.Profile(2, ("f", "e"), {(0, 0): 0, (0, 1): 1, (1, 1): -1}, (3, 2), None, 4,
                    {"kind": "blowup_points", "of": "P2", "points": 1})
    f1p = R.Profile(2, f1p.basis, R._clean(f1p.form), f1p.minus_K, None, 4, f1p.recipe)
    f1 = R.make_record(f1p, id="F1", name="Hirzebruch surface F1", degree=8, curve_basis=("f", "e"),
                       pairing=[[0, 1], [1, -1]], nef=[(1, 0), (1, 1)], eff=UNIT2, rays=UNIT2,
                       toric=[(1, 0), (0, 1), (1, 1)],
                       irreducible=IrreducibleRules(exceptional=((0, 1),), no_multiples=((1, 0),)), delta=1)
    p1 = p1_record()
    q = R.derive_product_record(p1, p1, id="P1xP1", name="P1 x P1", degree=8, automorphisms=[SWAP2],
                                irreducible=IrreducibleRules(no_multiples=tuple(UNIT2)),
                                negative_support_free=True, delta=1,
                                products=(Factorization("P1", "P1", (0,), (1,)),))
    return [p2, f1, q]


# ------------------------------------------------------------------ Picard rank two

def _rho2(p, id, name, degree, eff, h12, exceptional=(), no_multiples=(), toric=None, autos=(), nsf=False,
          pairing=DUAL2, products=()):
    return R.make_record(p, id=id, name=name, degree=degree, curve_basis=("l1", "l2"), pairing=pairing,
                         nef=UNIT2, eff=eff, rays=UNIT2, h12=h12, delta=1, automorphisms=autos,
                         irreducible=IrreducibleRules(exceptional=tuple(exceptional), no_multiples=tuple(no_multiples)),
                         toric=toric, negative_support_free=nsf, products=products)


def rank_two(surf) -> list[VarietyRecord]:
    P1 = R.projective_space(1)
    P2 = R.projective_space(2)
    P3 = R.projective_space(3)
    Q = quadric_profile()
    out = []
    p = R.double_cover(R.product(P1, P2), (1, 1))
    out.append(_rho2(p, "2-18", "double cover of P1 x P2 branched in a (2,2) divisor", 24, UNIT2, 2,
                     no_multiples=[(1, 0)], nsf=True))
    p = R.complete_intersection([2, 2], [[1, 2]])
    out.append(_rho2(p, "2-24", "divisor of bidegree (1,2) in P2 x P2", 30, UNIT2, 0, nsf=True))
    p = R.complete_intersection([1, 3], [[1, 2]])
    out.append(_rho2(p, "2-25", "divisor of bidegree (1,2) in P1 x P3", 32, [(1, 0), (-1, 2)], 1,
                     exceptional=[(-1, 2)], no_multiples=[(1, 0)]))
    p = R.rebase(R.blowup_curve(P3, [3], 0), [(2, -1), (1, 0)], ("H1", "H2"))
    out.append(_rho2(p, "2-27", "blow-up of P3 along a twisted cubic", 38, [(1, 0), (-1, 2)], 0,
                     exceptional=[(-1, 2)]))
    p = R.rebase(R.blowup_curve(Q, [2], 0), [(1, -1), (1, 0)], ("H1", "H2"))
    out.append(_rho2(p, "2-29", "blow-up of a quadric 3-fold along a conic", 40, [(1, 0), (-1, 1)], 0,
                     exceptional=[(-1, 1)], no_multiples=[(1, 0)]))
    p = R.rebase(R.blowup_curve(P3, [2], 0), [(1, 0), (2, -1)], ("H1", "H2"))
    out.append(_rho2(p, "2-30", "blow-up of P3 along a conic", 46, [(2, -1), (-1, 1)], 0,
                     exceptional=[(2, -1), (-1, 1)]))
    p = R.rebase(R.blowup_curve(Q, [1], 0), [(1, -1), (1, 0)], ("H1", "H2"))
    out.append(_rho2(p, "2-31", "blow-up of a quadric 3-fold along a line", 46, [(1, 0), (-1, 1)], 0,
                     exceptional=[(-1, 1)]))
    p = R.complete_intersection([2, 2], [[1, 1]])
    out.append(_rho2(p, "2-32", "divisor of bidegree (1,1) in P2 x P2", 48, UNIT2, 0, autos=[SWAP2], nsf=True))
    p = R.rebase(R.blowup_curve(P3, [1], 0), [(1, -1), (1, 0)], ("H1", "H2"))
    out.append(_rho2(p, "2-33", "blow-up of P3 along a line", 54, [(1, 0), (-1, 1)], 0,
                     exceptional=[(-1, 1)], no_multiples=[(1, 0)], toric=[(1, 0), (0, 1), (-1, 1)], nsf=True))
    p1rec = p1_record()
    p2rec = surf["P2"]
    r = R.derive_product_record(
        p1rec, p2rec, id="2-34", name="P1 x P2", degree=54, h12=0, delta=1,
        irreducible=IrreducibleRules(no_multiples=((1, 0),)), negative_support_free=True,
        products=(Factorization("P1", "P2", (0,), (1,)), Factorization("P2", "P1", (1,), (0,))))
    out.append(r)
    p = R.p1_bundle_over_surface(P2, (1,))
    p = R.rebase(p, [(1, 0), (0, 1)], ("H1", "H2"))
    out.append(_rho2(p, "2-35", "P(O + O(1)) over P2, the blow-up of P3 at a point", 56, [(1, 0), (-1, 1)], 0,
                     exceptional=[(-1, 1)], toric=[(1, 0), (0, 1), (-1, 1)]))
    p = R.rebase(R.p1_bundle_over_surface(P2, (2,)), [(1, 0), (0, 1)], ("H1", "H2"))
    out.append(_rho2(p, "2-36", "P(O + O(2)) over P2", 62, [(1, 0), (-2, 1)], 0,
                     exceptional=[(-2, 1)], toric=[(1, 0), (0, 1), (-2, 1)]))
    return out


# ------------------------------------------------------------------ Picard rank three

def rank_three(surf) -> list[VarietyRecord]:
    P3 = R.projective_space(3)
    out = []
    swap12 = _perm([1, 0, 2])

    p = R.complete_intersection([1, 1, 2], [[1, 1, 1]])
    out.append(R.make_record(
        p, id="3-17", name="divisor of tridegree (1,1,1) in P1 x P1 x P2", degree=36, curve_basis=("l1", "l2", "l3"),
        pairing=ID3, nef=UNIT3, eff=[(1, 0, 0), (0, 1, 0), (-1, 1, 1), (1, -1, 1)], rays=UNIT3, h12=0, delta=2,
        automorphisms=[swap12],
        irreducible=IrreducibleRules(exceptional=((-1, 1, 1), (1, -1, 1)), no_multiples=((1, 0, 0), (0, 1, 0)))))

    p = R.complete_intersection([1, 2, 2], [[1, 1, 0], [0, 1, 1]])
    out.append(R.make_record(
        p, id="3-24", name="complete intersection of (1,1,0) and (0,1,1) in P1 x P2 x P2", degree=42,
        curve_basis=("l1", "l2", "l3"), pairing=ID3, nef=UNIT3, eff=[(1, 0, 0), (-1, 1, 0), (1, -1, 1)],
        rays=UNIT3, h12=0, delta=2,
        irreducible=IrreducibleRules(exceptional=((-1, 1, 0), (1, -1, 1)), no_multiples=((1, 0, 0),))))

    p = R.blowup_curve(R.blowup_curve(P3, [1], 0, "E1"), [1, 0], 0, "E2")
    p = R.rebase(p, UNIT3, ("H", "E1", "E2"))
    out.append(R.make_record(
        p, id="3-25", name="blow-up of P3 along two disjoint lines", degree=44, curve_basis=("e1", "e2", "f"),
        pairing=[[0, 0, 1], [-1, 0, 1], [0, -1, 1]], nef=[(1, 0, 0), (1, -1, 0), (1, 0, -1)],
        eff=[(1, -1, 0), (1, 0, -1), (0, 1, 0), (0, 0, 1)], rays=UNIT3, h12=0, delta=2,
        automorphisms=[_perm([0, 2, 1])], toric=[(0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1)],
        irreducible=IrreducibleRules(exceptional=((0, 1, 0), (0, 0, 1)), no_multiples=((1, -1, 0), (1, 0, -1)))))

    p1rec = p1_record()
    sixperms = [_perm(q) for q in ([1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1])]
    facts = tuple(Factorization("P1", "P1xP1", (k,), tuple(i for i in range(3) if i != k)) for k in (2, 1, 0))
    out.append(R.derive_product_record(
        surf["P1xP1"], p1rec, id="3-27", name="P1 x P1 x P1", degree=48, h12=0, delta=1,
        automorphisms=sixperms, irreducible=IrreducibleRules(no_multiples=tuple(UNIT3)),
        negative_support_free=True, products=facts))

    out.append(R.derive_product_record(
        surf["F1"], p1rec, id="3-28", name="F1 x P1", degree=48, h12=0, delta=1,
        irreducible=IrreducibleRules(exceptional=((0, 1, 0),), no_multiples=((1, 0, 0), (0, 0, 1))),
        negative_support_free=True,
        products=(Factorization("P1", "F1", (2,), (0, 1)), Factorization("F1", "P1", (0, 1), (2,)))))

    p = R.p1_bundle_over_surface(surf["F1"], (1, 1))
    p = R.rebase(p, [(1, 1, 0), (0, 1, 0), (-1, -1, 1)], ("H", "Et", "E"))
    out.append(R.make_record(
        p, id="3-30", name="P(O + O(-l)) over F1", degree=50, curve_basis=("f", "l", "e"),
        pairing=[[0, 1, 0], [0, 0, -1], [1, -1, 0]], nef=[(1, 0, 0), (1, -1, 0), (1, 0, 1)],
        eff=[(0, 0, 1), (1, -1, 0), (0, 1, 0)], rays=[(1, 0, 0), (0, 1, -1), (0, 0, 1)], h12=0, delta=2,
        toric=[(0, 0, 1), (1, 0, 1), (0, 1, 0), (1, -1, 0), (1, 0, 0)],
        irreducible=IrreducibleRules(exceptional=((0, 0, 1), (0, 1, 0)), no_multiples=((1, -1, 0),))))

    p = R.p1_bundle_over_surface(surf["P1xP1"], (1, 1))
    p = R.rebase(p, [(1, 0, 0), (0, 1, 0), (-1, -1, 1)], ("H1", "H2", "E"))
    out.append(R.make_record(
        p, id="3-31", name="P(O + O(-1,-1)) over P1 x P1", degree=52, curve_basis=("f", "e1", "e2"),
        pairing=[[0, 0, 1], [0, 1, 0], [1, -1, -1]], nef=[(1, 0, 0), (0, 1, 0), (1, 1, 1)],
        eff=[(1, 0, 0), (0, 1, 0), (0, 0, 1)], rays=UNIT3, h12=0, delta=2, automorphisms=[swap12],
        toric=[(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)],
        irreducible=IrreducibleRules(exceptional=((0, 0, 1),), no_multiples=((1, 0, 0), (0, 1, 0)))))
    return out


def rank_four() -> list[VarietyRecord]:
    s = bl2p2_record()
    return [R.derive_product_record(
        s, p1_record(), id="Bl2P2xP1", name="Bl2P2 x P1", degree=42, h12=0, delta=2,
        automorphisms=[_perm([0, 2, 1, 3])],
        irreducible=IrreducibleRules(exceptional=((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)),
                                     no_multiples=((0, 0, 0, 1), (1, 1, 0, 0), (1, 0, 1, 0))),
        products=(Factorization("P1", "Bl2P2", (3,), (0, 1, 2)), Factorization("Bl2P2", "P1", (0, 1, 2), (3,))))]


def default_records() -> list[VarietyRecord]:
    surf = {r.id: r for r in surfaces()}
    return list(surf.values()) + rank_two(surf) + rank_three(surf) + rank_four()


def main(argv=None):
    from .io import dump_catalog
    target = Path(argv[0]) if argv else Path(__file__).parent / "data" / "catalog.json"
    dump_catalog(default_records(), target)
    print(f"wrote {target}")


if __name__ == "__main__":
    main(sys.argv[1:])
