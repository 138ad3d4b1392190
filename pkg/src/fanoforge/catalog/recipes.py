"""Recipes that compute the intersection data of standard constructions.

A recipe returns a ``Profile``: basis labels, the top intersection form,
the anticanonical class, and c2 data (a linear form for 3-folds, the Euler
number for surfaces). Cones and metadata are attached by the catalog
builder, which knows the geometry of each specific variety.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from ..lattice import Cone, LatticeError, solve_linear
from ..ring import GradedRing, chern_of_projective_product, projective_product
from .record import Factorization, IrreducibleRules, VarietyRecord


class RecipeError(ValueError):
    pass


@dataclass(frozen=True)
class Profile:
    dim: int
    basis: tuple[str, ...]
    form: dict
    minus_K: tuple[int, ...]
    c2: tuple[int, ...] | None = None
    euler: int | None = None
    recipe: dict = field(default_factory=dict)

    @property
    def rank(self):
        return len(self.basis)

    def entry(self, idx):
        return self.form.get(tuple(sorted(idx)), 0)

    def product(self, *vecs) -> int:
        """Degree of a product of dim(self) classes given as coordinate vectors."""
        if len(vecs) != self.dim:
            raise RecipeError("wrong number of factors")
        total = 0
        for idx in itertools.product(range(self.rank), repeat=self.dim):
            c = 1
            for v, i in zip(vecs, idx):
                c *= v[i]
                if not c:
                    break
            if c:
                total += c * self.entry(idx)
        return total


def _clean(form):
    return {k: int(v) for k, v in sorted(form.items()) if v}


def _profile_of(r) -> Profile:
    if isinstance(r, Profile):
        return r
    return Profile(r.dim, tuple(r.basis), dict(r.form), tuple(r.minus_K), r.c2, r.euler, dict(r.recipe or {}))


# ------------------------------------------------------------------ basics

def projective_space(n: int) -> Profile:
    c2 = None
    euler = n + 1
    if n == 3:
        c2 = (6,)
    return Profile(n, ("h",), {(0,) * n: 1}, (n + 1,), c2, euler,
                   {"kind": "projective_space", "n": n})


def rebase(p: Profile, new_basis: Sequence[Sequence[int]], labels: Sequence[str]) -> Profile:
    """Express a profile in a new basis; rows of new_basis are old coordinates."""
    B = [tuple(v) for v in new_basis]
    n = p.rank
    if len(B) != n or len(labels) != n:
        raise RecipeError("new basis has the wrong size")
    form = {}
    for idx in itertools.combinations_with_replacement(range(n), p.dim):
        form[idx] = p.product(*[B[i] for i in idx])
    # coordinates of -K in the new basis: solve sum x_i B_i = minus_K
    cols = [[B[i][j] for i in range(n)] for j in range(n)]
    sol = solve_linear(cols, p.minus_K)
    if sol is None or any(x.denominator != 1 for x in sol):
        raise RecipeError("new basis is not a Z-basis containing -K integrally")
    det = _det_int(B)
    if abs(det) != 1:
        raise RecipeError(f"change of basis has determinant {det}")
    c2 = None
    if p.c2 is not None:
        c2 = tuple(sum(a * b for a, b in zip(p.c2, v)) for v in B)
    rec = dict(p.recipe)
    rec = {"kind": "rebase", "of": rec, "basis": [list(v) for v in B]}
    return Profile(p.dim, tuple(labels), _clean(form), tuple(int(x) for x in sol), c2, p.euler, rec)


def _det_int(rows):
    from ..lattice import determinant
    return int(determinant(rows))


# ------------------------------------------------------------------ products

def _factor_integral(p: Profile, mono_div: tuple, c2_exp: int) -> int:
    deg = sum(mono_div) + 2 * c2_exp
    if deg != p.dim:
        return 0
    if c2_exp:
        if c2_exp == 1 and p.dim == 2 and not any(mono_div):
            return p.euler
        if c2_exp == 1 and p.dim == 3:
            i = mono_div.index(1)
            return p.c2[i]
        return 0
    idx = []
    for i, e in enumerate(mono_div):
        idx += [i] * e
    return p.entry(idx)


def product_ring(p1: Profile, p2: Profile):
    n1, n2 = p1.rank, p2.rank
    names = [f"a{i}" for i in range(n1)] + [f"b{i}" for i in range(n2)] + ["c2a", "c2b"]
    degrees = [1] * (n1 + n2) + [2, 2]
    dim = p1.dim + p2.dim

    def integ(m):
        m1 = m[:n1]
        m2 = m[n1:n1 + n2]
        return _factor_integral(p1, m1, m[-2]) * _factor_integral(p2, m2, m[-1])

    return GradedRing(names, degrees, dim, integ)


def product(p1, p2) -> Profile:
    p1, p2 = _profile_of(p1), _profile_of(p2)
    dim = p1.dim + p2.dim
    if dim not in (2, 3):
        raise RecipeError(f"product of dimension {dim} is not supported")
    R = product_ring(p1, p2)
    n1, n2 = p1.rank, p2.rank
    n = n1 + n2
    c1a = R.linear(p1.minus_K, range(n1))
    c1b = R.linear(p2.minus_K, range(n1, n))
    c2a = R.gen(n) if p1.dim >= 2 else {}
    c2b = R.gen(n + 1) if p2.dim >= 2 else {}
    ct = R.mul(R.add(R.const(1), c1a, c2a), R.add(R.const(1), c1b, c2b))
    c2 = R.part(ct, 2)
    form = {}
    for idx in itertools.combinations_with_replacement(range(n), dim):
        form[idx] = int(R.integrate(R.mul(*[R.gen(i) for i in idx])))
    minus_K = tuple(p1.minus_K) + tuple(p2.minus_K)
    if dim == 3:
        c2v = tuple(int(R.integrate(R.mul(c2, R.gen(i)))) for i in range(n))
        euler = None
    else:
        c2v = None
        euler = int(R.integrate(c2))
    return Profile(dim, _product_labels(p1.basis, p2.basis), _clean(form), minus_K, c2v, euler,
                   {"kind": "product", "factors": [p1.recipe, p2.recipe]})


def _product_labels(b1, b2) -> tuple[str, ...]:
    # products of projective spaces get numbered hyperplane classes
    labels = tuple(b1) + tuple(b2)
    if all(re.fullmatch(r"h|H\d+", x) for x in labels):
        return tuple(f"H{i + 1}" for i in range(len(labels)))
    return labels


# ------------------------------------------------------------------ P1-bundles

def p1_bundle_over_surface(S, D: Sequence[int]) -> Profile:
    """P(O + O(D)) over a surface, basis (pullbacks, xi) with xi^2 = D.xi."""
    S = _profile_of(S)
    if S.dim != 2:
        raise RecipeError("base must be a surface")
    n = S.rank
    xi = n
    form = {}
    for i in range(n):
        for j in range(i, n):
            form[(i, j, xi)] = S.entry((i, j))
    for i in range(n):
        e = [0] * n
        e[i] = 1
        form[(i, xi, xi)] = S.product(e, D)
    form[(xi, xi, xi)] = S.product(D, D)
    c2 = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        c2.append(2 * S.product(S.minus_K, e))
    c2.append(S.euler + S.product(S.minus_K, D))
    minus_K = tuple(k - d for k, d in zip(S.minus_K, D)) + (2,)
    return Profile(3, tuple(f"pi*{b}" for b in S.basis) + ("xi",), _clean(form), minus_K, tuple(c2), None,
                   {"kind": "p1_bundle_over_surface", "base": S.recipe, "D": list(D)})


# ------------------------------------------------------------------ divisors

def complete_intersection(dims: Sequence[int], degrees: Sequence[Sequence[int]]) -> Profile:
    """Complete intersection of divisors of given multidegree in a product of projective spaces."""
    dims = tuple(dims)
    R = projective_product(dims)
    k = len(dims)
    dim = sum(dims) - len(degrees)
    if dim not in (2, 3):
        raise RecipeError(f"expected a surface or 3-fold, got dimension {dim}")
    divs = [R.linear(d) for d in degrees]
    cls = R.mul(*divs) if divs else R.const(1)
    ct = chern_of_projective_product(R, dims)
    normal = R.const(1)
    for d in divs:
        normal = R.mul(normal, R.add(R.const(1), d))
    cz = R.mul(ct, R.inverse(normal))
    form = {}
    for idx in itertools.combinations_with_replacement(range(k), dim):
        form[idx] = int(R.integrate(R.mul(cls, *[R.gen(i) for i in idx])))
    minus_K = tuple(n + 1 - sum(d[i] for d in degrees) for i, n in enumerate(dims))
    c2 = R.part(cz, 2)
    if dim == 3:
        c2v = tuple(int(R.integrate(R.mul(cls, c2, R.gen(i)))) for i in range(k))
        euler = None
    else:
        c2v = None
        euler = int(R.integrate(R.mul(cls, c2)))
    return Profile(dim, tuple(f"H{i + 1}" for i in range(k)), _clean(form), minus_K, c2v, euler,
                   {"kind": "complete_intersection", "ambient": list(dims), "degrees": [list(d) for d in degrees]})


# ------------------------------------------------------------------ blow-ups

def blowup_curve(W, curve_dot: Sequence[int], genus: int, label: str = "E") -> Profile:
    """Blow-up of a smooth curve C in a 3-fold; curve_dot[i] = basis_i . C."""
    W = _profile_of(W)
    if W.dim != 3:
        raise RecipeError("blow-up of a curve needs a 3-fold")
    if genus < 0:
        raise RecipeError("negative genus")
    n = W.rank
    e = n
    form = {k: v for k, v in W.form.items()}
    for i in range(n):
        form[(i, e, e)] = -curve_dot[i]
    kc = -sum(a * b for a, b in zip(W.minus_K, curve_dot))  # K_W . C
    form[(e, e, e)] = 2 - 2 * genus + kc
    c2 = tuple(l + c for l, c in zip(W.c2, curve_dot)) + (-kc,)
    minus_K = tuple(W.minus_K) + (-1,)
    return Profile(3, tuple(W.basis) + (label,), _clean(form), minus_K, c2, None,
                   {"kind": "blowup_curve", "of": W.recipe, "curve_dot": list(curve_dot), "genus": genus})


# ------------------------------------------------------------------ double covers

def double_cover(W, L: Sequence[int]) -> Profile:
    """Double cover of a 3-fold branched along a smooth member of |2L|."""
    W = _profile_of(W)
    if W.dim != 3:
        raise RecipeError("double cover recipe is for 3-folds")
    n = W.rank
    form = {k: 2 * v for k, v in W.form.items()}
    c2 = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        c2.append(2 * (W.c2[i] - W.product(W.minus_K, L, e) + 2 * W.product(L, L, e)))
    minus_K = tuple(k - l for k, l in zip(W.minus_K, L))
    return Profile(3, tuple(W.basis), _clean(form), minus_K, tuple(c2), None,
                   {"kind": "double_cover", "of": W.recipe, "L": list(L)})


# ------------------------------------------------------------------ record assembly

def make_record(p: Profile, *, id: str, name: str, degree: int, curve_basis, pairing, nef, eff, rays,
                h12=None, delta=None, automorphisms=(), irreducible=IrreducibleRules(), toric=None,
                negative_support_free=False, products=()) -> VarietyRecord:
    return VarietyRecord(
        id=id, name=name, dim=p.dim, rank=p.rank, basis=tuple(p.basis), curve_basis=tuple(curve_basis),
        pairing=tuple(tuple(r) for r in pairing), nef=Cone(tuple(map(tuple, nef))), eff=Cone(tuple(map(tuple, eff))),
        rays=tuple(tuple(r) for r in rays), minus_K=tuple(p.minus_K), form=dict(p.form), degree=degree,
        c2=p.c2, euler=p.euler, h12=h12, delta=delta,
        automorphisms=tuple(tuple(tuple(r) for r in m) for m in automorphisms),
        irreducible=irreducible, toric=None if toric is None else tuple(tuple(t) for t in toric),
        negative_support_free=negative_support_free, products=tuple(products), recipe=p.recipe)


def derive_product_record(r1: VarietyRecord, r2: VarietyRecord, *, id: str | None = None, name: str | None = None,
                          **meta) -> VarietyRecord:
    """Product record: Kunneth form, block pairing, product cones."""
    p = product(r1, r2)
    n1, n2 = r1.rank, r2.rank

    def embed(v, first):
        return tuple(v) + (0,) * n2 if first else (0,) * n1 + tuple(v)

    pairing = [list(row) + [0] * n2 for row in r1.pairing] + [[0] * n1 + list(row) for row in r2.pairing]
    nef = [embed(g, True) for g in r1.nef.generators] + [embed(g, False) for g in r2.nef.generators]
    eff = [embed(g, True) for g in r1.eff.generators] + [embed(g, False) for g in r2.eff.generators]
    rays = [embed(g, True) for g in r1.rays] + [embed(g, False) for g in r2.rays]
    deg = meta.pop("degree", None)
    if deg is None:
        deg = p.product(*([p.minus_K] * p.dim))
    toric = meta.pop("toric", "auto")
    if toric == "auto":
        toric = None
        if r1.toric is not None and r2.toric is not None:
            toric = [embed(t, True) for t in r1.toric] + [embed(t, False) for t in r2.toric]
    products = meta.pop("products", None)
    if products is None:
        products = (Factorization(r2.id, r1.id, tuple(range(n1, n1 + n2)), tuple(range(n1))),)
    return make_record(p, id=id or f"{r1.id}x{r2.id}", name=name or f"{r1.name} x {r2.name}", degree=deg,
                       curve_basis=tuple(r1.curve_basis) + tuple(r2.curve_basis), pairing=pairing, nef=nef,
                       eff=eff, rays=rays, toric=toric, products=products, **meta)


def derive_divisor_record(dims: Sequence[int], degrees: Sequence[Sequence[int]], *, id: str, name: str | None = None,
                          eff=None, **meta) -> VarietyRecord:
    """Complete intersection record with the pulled-back hyperplanes as basis.

    Nef is spanned by the hyperplane classes, so the extremal curves are
    the dual basis. Pass ``eff`` when the effective cone is larger.
    """
    p = complete_intersection(dims, degrees)
    n = p.rank
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    deg = meta.pop("degree", None)
    if deg is None:
        deg = p.product(*([p.minus_K] * p.dim))
    return make_record(p, id=id, name=name or id, degree=deg, curve_basis=tuple(f"l{i + 1}" for i in range(n)),
                       pairing=unit, nef=unit, eff=eff or unit, rays=unit, **meta)


def derive_blowup_curve_record(W, curve_dot: Sequence[int], genus: int, *, id: str, name: str | None = None,
                               curve_basis, pairing, nef, eff, rays, **meta) -> VarietyRecord:
    """Blow-up record; the cone data of the result must be supplied."""
    p = blowup_curve(W, curve_dot, genus)
    deg = meta.pop("degree", None)
    if deg is None:
        deg = p.product(*([p.minus_K] * 3))
    return make_record(p, id=id, name=name or id, degree=deg, curve_basis=curve_basis, pairing=pairing,
                       nef=nef, eff=eff, rays=rays, **meta)


def construction_profile(S, A: Sequence[int], D: Sequence[int]) -> Profile:
    """Blow-up of P(O + O(D)) along the curve cut on the positive section by the pullback of A."""
    S = _profile_of(S)
    Y = p1_bundle_over_surface(S, D)
    n = S.rank
    dots = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        dots.append(S.product(e, A))
    dots.append(S.product(D, A))
    two_g_minus_2 = S.product(A, A) - S.product(S.minus_K, A)
    if two_g_minus_2 % 2:
        raise RecipeError("odd adjunction degree")
    genus = two_g_minus_2 // 2 + 1
    if genus < 0:
        raise RecipeError(f"class {tuple(A)} has negative arithmetic genus")
    return blowup_curve(Y, dots, genus)


def derive_construction_record(Zs: VarietyRecord, A, D, *, id: str | None = None) -> VarietyRecord:
    """3-fold record of the construction over a surface record.

    Basis: pullbacks of the surface basis, the tautological class xi of the
    positive section, and the exceptional divisor. Curve coordinates are
    intersection numbers with this basis, so the pairing is the identity.
    """
    from ..lattice import DivisorClass, is_ample
    if Zs.dim != 2:
        raise RecipeError("construction records are built over surfaces")
    a = tuple(A.coords) if isinstance(A, DivisorClass) else tuple(A)
    d = tuple(D.coords) if isinstance(D, DivisorClass) else tuple(D)
    d2 = tuple(x - y for x, y in zip(a, d))
    for part in (d, d2):
        rest = tuple(k - x for k, x in zip(Zs.minus_K, part))
        if not is_ample(Zs.cls(rest), Zs):
            raise RecipeError(f"-K - {part} is not ample on {Zs.id}; the construction is not Fano")
    p = construction_profile(Zs, a, d)
    n = Zs.rank
    N = n + 2

    # a curve c on the surface, given by its pairing row with the surface basis
    def row(c):
        return [sum(Zs.pairing[i][j] * c[j] for j in range(n)) for i in range(n)]

    gens = [tuple([0] * n + [0, -1]), tuple([0] * n + [1, 1])]
    for ray in Zs.rays:
        r = row(ray)
        gens.append(tuple(r + [0, 0]))
        dc = sum(x * y for x, y in zip(d, r))
        ac = sum(x * y for x, y in zip(a, r))
        gens.append(tuple(r + [dc, ac]))
    ray_cone = Cone(tuple(_prim(g) for g in gens))
    nef = ray_cone.facets()
    rays = Cone(nef).facets()
    eff = [tuple([0] * n + [0, 1]), _prim(a + (0, -1)), _prim(tuple(-x for x in d) + (1, 0)),
           tuple([0] * n + [1, -1])]
    eff += [tuple(g) + (0, 0) for g in Zs.eff.generators]
    eff = _extremal_generators(eff)
    unit = [tuple(int(i == j) for j in range(N)) for i in range(N)]
    genus = p.recipe["genus"]
    name = id or f"C({Zs.id};{','.join(map(str, a))};{','.join(map(str, d))})"
    h12 = (Zs.h12 or 0) + genus
    # the output has defect at least 2 and at most rank - 1
    delta = 2 if N - 1 == 2 else None
    return make_record(p, id=name, name=f"construction over {Zs.id} with A={a}, D={d}",
                       degree=p.product(*([p.minus_K] * 3)), curve_basis=tuple(f"c{i + 1}" for i in range(N)),
                       pairing=unit, nef=nef, eff=eff, rays=rays, h12=h12, delta=delta)


def _prim(v):
    from ..lattice import primitive
    return primitive(tuple(v))


def _extremal_generators(gens):
    """Drop generators that lie in the cone spanned by the others."""
    gens = sorted(set(_prim(g) for g in gens if any(g)))
    keep = list(gens)
    for g in gens:
        others = [h for h in keep if h != g]
        if others and Cone(tuple(others)).contains(g):
            keep = others
    return keep
