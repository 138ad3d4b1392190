"""Consistency checks for a single record.

``validate_record`` never raises on bad data; it returns the list of
violations, empty when the record is sound.
"""

from __future__ import annotations

import itertools

from ..lattice import Cone, determinant, dot, primitive
from .record import VarietyRecord


def _mat_vec(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _form_value(r: VarietyRecord, vecs) -> int:
    total = 0
    for idx in itertools.product(range(r.rank), repeat=r.dim):
        c = 1
        for v, i in zip(vecs, idx):
            c *= v[i]
        if c:
            total += c * r.form_entry(idx)
    return total


def _same_cone(a: Cone, b: Cone) -> bool:
    return all(b.contains(g) for g in a.generators) and all(a.contains(g) for g in b.generators)


def _shape(r: VarietyRecord) -> list[str]:
    out = []
    n = r.rank
    if len(r.basis) != n:
        out.append(f"basis has {len(r.basis)} labels for rank {n}")
    if len(r.pairing) != n or any(len(row) != n for row in r.pairing):
        out.append("pairing is not rank x rank")
    for name, vecs in (("nef", r.nef.generators), ("eff", r.eff.generators), ("rays", r.rays),
                       ("toric", r.toric or ()), ("exceptional", r.irreducible.exceptional),
                       ("no_multiples", r.irreducible.no_multiples)):
        for v in vecs:
            if len(v) != n:
                out.append(f"{name} vector {v} has length {len(v)}")
    if len(r.minus_K) != n:
        out.append("minus_K has the wrong length")
    if r.c2 is not None and len(r.c2) != n:
        out.append("c2 has the wrong length")
    for key in r.form:
        if len(key) != r.dim or any(not 0 <= i < n for i in key):
            out.append(f"form index {key} out of range")
    for m in r.automorphisms:
        if len(m) != n or any(len(row) != n for row in m):
            out.append("automorphism matrix is not rank x rank")
    return out


def validate_record(r: VarietyRecord) -> list[str]:
    problems = _shape(r)
    if problems:
        return problems
    n = r.rank
    if determinant(r.pairing) == 0:
        problems.append("pairing is degenerate")
    if not r.rays:
        problems.append("no extremal rays")
    for ray in r.rays:
        val = sum(r.minus_K[i] * r.pairing[i][j] * ray[j] for i in range(n) for j in range(n))
        if val <= 0:
            problems.append(f"-K is not positive on extremal ray {ray}")
    deg = _form_value(r, [r.minus_K] * r.dim)
    if deg != r.degree:
        problems.append(f"(-K)^{r.dim} = {deg} but the stored degree is {r.degree}")
    if r.dim == 3 and r.c2 is not None and dot(r.c2, r.minus_K) != 24:
        problems.append(f"c2.(-K) = {dot(r.c2, r.minus_K)}, expected 24")
    if r.dim == 2 and r.euler is not None and r.degree + r.euler != 12:
        problems.append(f"K^2 + e = {r.degree + r.euler}, expected 12 for a rational surface")

    # nef cone = dual of the cone spanned by the extremal rays
    ray_normals = sorted(primitive(tuple(sum(r.pairing[i][j] * ray[j] for j in range(n)) for i in range(n)))
                         for ray in r.rays)
    if r.nef.dim == n:
        facets = sorted(r.nef.facets())
        if facets != ray_normals:
            problems.append(f"nef facets {facets} do not match the extremal rays {ray_normals}")
    else:
        problems.append("nef cone is not full-dimensional")
    for g in r.nef.generators:
        if not r.eff.contains(g):
            problems.append(f"nef generator {g} is not effective")
    for name, vecs in (("toric", r.toric or ()), ("exceptional", r.irreducible.exceptional),
                       ("no_multiples", r.irreducible.no_multiples)):
        for v in vecs:
            if not r.eff.contains(v):
                problems.append(f"{name} class {v} is not effective")
    if _same_cone(r.nef, r.eff) and not r.negative_support_free:
        problems.append("effective cone equals nef cone but negative_support_free is false")

    for f in r.products:
        if sorted(f.w_indices + f.z0_indices) != list(range(n)):
            problems.append(f"factorization {f.w} x {f.z0} does not partition the basis")

    problems.extend(_automorphism_problems(r))
    return problems


def _automorphism_problems(r: VarietyRecord) -> list[str]:
    out = []
    mats = [tuple(map(tuple, m)) for m in r.automorphisms]
    n = r.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    group = set(mats) | {ident}
    nef = {tuple(g) for g in r.nef.generators}
    eff = {tuple(g) for g in r.eff.generators}
    tor = {tuple(t) for t in r.toric} if r.toric is not None else None
    basis_vecs = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for m in mats:
        if abs(determinant(m)) != 1:
            out.append(f"automorphism {m} is not invertible over the integers")
            continue
        if _mat_vec(m, r.minus_K) != tuple(r.minus_K):
            out.append(f"automorphism {m} moves -K")
        if {_mat_vec(m, g) for g in nef} != nef:
            out.append(f"automorphism {m} does not preserve the nef cone generators")
        if {_mat_vec(m, g) for g in eff} != eff:
            out.append(f"automorphism {m} does not preserve the effective cone generators")
        if tor is not None and {_mat_vec(m, t) for t in tor} != tor:
            out.append(f"automorphism {m} does not preserve the toric classes")
        if r.c2 is not None:
            # c2 is a linear form; invariance means c2(Mv) = c2(v) for all v
            if any(dot(r.c2, _mat_vec(m, b)) != dot(r.c2, b) for b in basis_vecs):
                out.append(f"automorphism {m} does not preserve c2")
        for idx in itertools.combinations_with_replacement(range(n), r.dim):
            vecs = [basis_vecs[i] for i in idx]
            if _form_value(r, [_mat_vec(m, v) for v in vecs]) != _form_value(r, vecs):
                out.append(f"automorphism {m} does not preserve the intersection form")
                break
    for a in group:
        for b in group:
            prod = tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
            if prod not in group:
                out.append("automorphism list is not closed under composition")
                return out
    return out
