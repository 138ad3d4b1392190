"""From enumerated candidates to classified families.

Every candidate is anchored, when possible, to the expected table row that
describes the same construction up to symmetry. Candidates become one
family when they carry the same recorded toric polytope tag; no other
merging is done. Families with equal invariants are then examined by
``ambiguity_scan``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from ..catalog import load_catalog
from ..catalog.recipes import derive_construction_record
from ..construct import ConstructionCandidate, DoubleCandidate, enumerate_construction_a, \
    enumerate_double_candidates
from ..invariants import InvariantVector, invariants_4fold, minus_K_cubed
from ..lattice import is_ample
from .assess import DefectReport, defect_assess, product_assess, product_factors, threefold_family, toric_assess
from .canonical import canonicalize
from .golden import coords, facts, load_golden

RHO4_BASES = ("2-18", "2-24", "2-25", "2-27", "2-29", "2-30", "2-31", "2-32", "2-33", "2-34", "2-35", "2-36")
RHO5_BASES = ("3-17", "3-24", "3-25", "3-27", "3-28", "3-30", "3-31")
RHO6_BASES = ("Bl2P2xP1",)
SURFACE_BASES = ("F1", "P1xP1")
UNTAGGED_TORIC = "Yes"


class ClassifyError(ValueError):
    pass


Anchor = tuple  # (table id, row number)


@dataclass(frozen=True)
class Construction:
    """One classified candidate: the unit behind a row of a per-base table."""

    candidate: ConstructionCandidate
    invariants: InvariantVector
    toric: bool
    product: str | None
    anchor: Anchor | None
    tag: str | None  # recorded toric polytope tag of the anchored row
    base_label: str  # how the base is named in tables
    double: DoubleCandidate | None = None

    @property
    def table(self) -> str:
        return self.anchor[0] if self.anchor else self.candidate.Z


@dataclass
class FamilyRecord:
    rho: int
    provenance: list[ConstructionCandidate]
    invariants: InvariantVector
    toric: str | None
    product: str | None
    defect: DefectReport | None
    expected_anchor: Anchor | None
    constructions: list[Construction] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.provenance:
            raise ClassifyError("a family needs at least one construction")

    @property
    def anchors(self) -> list[Anchor]:
        return list(dict.fromkeys(c.anchor for c in self.constructions if c.anchor is not None))

    @property
    def is_toric(self) -> bool:
        return self.toric is not None

    @property
    def neither(self) -> bool:
        return not self.is_toric and not self.product

    def label(self) -> str:
        if self.anchors:
            return ",".join(f"{t}/{r}" for t, r in self.anchors)
        c = self.provenance[0]
        return f"{c.Z}:A={c.A}:D={c.D}"


# ------------------------------------------------------------------ anchors

@lru_cache(maxsize=None)
def _golden_body(table: str) -> tuple[dict, ...]:
    name = "tables_rho4.csv" if table.startswith("2-") else "tables_rho5.csv"
    return tuple(r for r in load_golden(name) if r["table"] == table)


def _anchor_map(Z) -> dict:
    """Canonical key -> (row, recorded tag) for the expected rows of a base, first row wins."""
    if Z.id not in RHO4_BASES + RHO5_BASES:
        return {}
    out = {}
    for r in _golden_body(Z.id):
        try:
            c = canonicalize(ConstructionCandidate.of(Z, coords(r["A"]), coords(r["D"])))
        except ValueError:
            continue
        out.setdefault(c.key(), (int(r["row"]), r["toric"] or None))
    return out


@lru_cache(maxsize=None)
def _enumerate(Z) -> tuple[ConstructionCandidate, ...]:
    return tuple(enumerate_construction_a(Z))


def constructions_over(Z, catalog) -> list[Construction]:
    anchors = _anchor_map(Z)
    out = []
    for c in _enumerate(Z):
        hit = anchors.get(c.key())
        anchor = (Z.id, hit[0]) if hit else None
        is_toric = toric_assess(c)
        tag = hit[1] if hit and is_toric else None
        out.append(Construction(c, invariants_4fold(c), is_toric, product_assess(c, catalog), anchor, tag, Z.id))
    return out


# ------------------------------------------------------------------ double constructions over P2

def double_toric(d: DoubleCandidate) -> bool:
    """Both layers blow up torus-invariant loci: lines in P2 and their pullbacks."""
    return d.A.coords == (1,) and d.A2.coords == (1,)


def _layer_record(P2, A, D):
    rec = derive_construction_record(P2, A, D)
    return rec, threefold_family(P2.id, rec.degree)


def _double_anchor(d: DoubleCandidate):
    rows = load_golden("tables_double.csv")
    key = _double_norm(d)
    for r in rows:
        a, dd, a2, dd2 = (int(r[k]) for k in ("A", "D", "A2", "DD"))
        if _double_norm_values(a, dd, a2, dd2) == key:
            return ("double", int(r["row"])), (r["toric"] or None)
    return None, None


def _double_norm_values(a, d, a2, d2):
    one = (a, min(d, a - d))
    two = (a2, min(d2, a2 - d2))
    return min(one + two, two + one)


def _double_norm(d: DoubleCandidate):
    return _double_norm_values(d.A.coords[0], d.D.coords[0], d.A2.coords[0], d.D2.coords[0])


def double_constructions(catalog) -> list[list[Construction]]:
    """Each two-step family with one construction per layer order."""
    P2 = catalog["P2"]
    out = []
    for d in enumerate_double_candidates(P2):
        anchor, tag = _double_anchor(d)
        group = []
        seen = set()
        for first in (d, d.swapped()):
            key = (first.A, min(first.D, first.A - first.D))
            if key in seen:
                continue
            seen.add(key)
            rec, mm = _layer_record(P2, first.A.coords, first.D.coords)
            n = rec.rank
            A2 = (first.A2.coords[0],) + (0,) * (n - 1)
            D2 = (first.D2.coords[0],) + (0,) * (n - 1)
            c = ConstructionCandidate.of(rec, A2, D2)
            is_toric = double_toric(first)
            group.append(Construction(c, invariants_4fold(c), is_toric, product_assess(c, catalog), anchor,
                                      tag if is_toric else None, mm or rec.id, first))
        vs = {g.invariants for g in group}
        if len(vs) != 1:
            raise ClassifyError(f"layer orders of {d} disagree on invariants: {vs}")
        out.append(group)
    return out


# ------------------------------------------------------------------ families

def _family(rho: int, cons: list[Construction]) -> FamilyRecord:
    vs = {c.invariants for c in cons}
    if len(vs) != 1:
        raise ClassifyError("constructions of one family disagree on invariants: "
                            + "; ".join(f"{c.candidate}: {c.invariants}" for c in cons))
    toric = None
    if any(c.toric for c in cons):
        toric = next((c.tag for c in cons if c.tag), UNTAGGED_TORIC)
    product = next((c.product for c in cons if c.product), None)
    anchor = next((c.anchor for c in cons if c.anchor), None)
    f = FamilyRecord(rho, [c.candidate for c in cons], cons[0].invariants, toric, product, None, anchor, cons)
    f.defect = defect_assess(f)
    return f


def merge_by_tag(rho: int, groups: list[list[Construction]]) -> list[FamilyRecord]:
    """One family per recorded toric tag; every other group stays on its own."""
    by_tag: dict[str, list[Construction]] = {}
    order: list = []
    for g in groups:
        tag = next((c.tag for c in g if c.tag and c.tag != UNTAGGED_TORIC), None)
        if tag is None:
            order.append(g)
            continue
        if tag not in by_tag:
            by_tag[tag] = []
            order.append(tag)
        by_tag[tag].extend(g)
    return [_family(rho, by_tag[x] if isinstance(x, str) else x) for x in order]


def _catalog(catalog):
    return catalog if catalog is not None else load_catalog()


def _need(catalog, ids):
    missing = [i for i in ids if i not in catalog]
    if missing:
        raise ClassifyError("catalog lacks records needed for this scope: " + ", ".join(missing))


def per_base_constructions(bases, catalog=None) -> dict[str, list[Construction]]:
    cat = _catalog(catalog)
    _need(cat, bases)
    return {b: constructions_over(cat[b], cat) for b in bases}


def rho4_families(catalog=None) -> list[FamilyRecord]:
    cons = per_base_constructions(RHO4_BASES, catalog)
    return merge_by_tag(4, [[c] for b in RHO4_BASES for c in cons[b]])


def double_families(catalog=None) -> list[FamilyRecord]:
    cat = _catalog(catalog)
    _need(cat, ("P2",))
    return [_family(5, g) for g in double_constructions(cat)]


def rho5_families(catalog=None) -> list[FamilyRecord]:
    cat = _catalog(catalog)
    cons = per_base_constructions(RHO5_BASES, cat)
    groups = [[c] for b in RHO5_BASES for c in cons[b]]
    groups += double_constructions(cat)
    return merge_by_tag(5, groups)


def rho6_families(catalog=None) -> list[FamilyRecord]:
    cons = per_base_constructions(RHO6_BASES, catalog)
    return [_family(6, [c]) for b in RHO6_BASES for c in cons[b]]


@dataclass(frozen=True)
class ThreefoldFamily:
    candidate: ConstructionCandidate
    minus_K3: int
    family: str | None
    note: str | None


def threefold_families(surface: str, catalog=None) -> list[ThreefoldFamily]:
    cat = _catalog(catalog)
    _need(cat, (surface,))
    S = cat[surface]
    out = []
    for c in _enumerate(S):
        deg = minus_K_cubed(S, c.A, c.D)
        note = facts()["threefold_notes"].get(f"{surface}/{deg}")
        out.append(ThreefoldFamily(c, deg, threefold_family(surface, deg), note))
    return out


# ------------------------------------------------------------------ ambiguities

@dataclass(frozen=True)
class PairVerdict:
    first: str
    second: str
    rule: str | None  # "T", "R1", "R2" or None when no rule separates them


@dataclass(frozen=True)
class AmbiguityGroup:
    invariants: InvariantVector
    members: tuple[str, ...]
    pairs: tuple[PairVerdict, ...]
    status: str  # "distinct by rules", "unresolved by rules"
    recorded: tuple[str, ...] = ()

    @property
    def unresolved(self) -> tuple[PairVerdict, ...]:
        return tuple(p for p in self.pairs if p.rule is None)


@dataclass(frozen=True)
class AmbiguityReport:
    groups: tuple[AmbiguityGroup, ...]

    @property
    def unresolved(self) -> tuple[AmbiguityGroup, ...]:
        return tuple(g for g in self.groups if g.status != "distinct by rules")


def _ample_part(c: ConstructionCandidate) -> bool:
    Z = c.record
    return is_ample(c.D, Z) or is_ample(c.A - c.D, Z)


def _r2(f: FamilyRecord, g: FamilyRecord) -> bool:
    for c in f.provenance:
        if not _ample_part(c):
            continue
        for d in g.provenance:
            if d.record.id != c.record.id and d.record.negative_support_free:
                return True
    return False


def separate(f: FamilyRecord, g: FamilyRecord) -> str | None:
    """The first rule that proves two families with equal invariants distinct.

    T: exactly one is toric, or both carry different recorded polytope tags.
    R1: their product descriptions differ.
    R2: one has a construction with D or A - D ample, the other a construction
    over a different base with no divisor negative on all curves of its support.
    """
    if f.is_toric != g.is_toric:
        return "T"
    if f.toric and g.toric and UNTAGGED_TORIC not in (f.toric, g.toric) and f.toric != g.toric:
        return "T"
    if product_factors(f.product) != product_factors(g.product):
        return "R1"
    if _r2(f, g) or _r2(g, f):
        return "R2"
    return None


def _recorded_for(members: list[FamilyRecord]) -> tuple[str, ...]:
    anchors = {f"{t}/{r}" for f in members for t, r in f.anchors}
    out = []
    for entry in facts()["ambiguities"]:
        if set(entry["members"]) & anchors:
            out.append(f"{'; '.join(entry['members'])}: {entry['verdict']} ({entry['fact']})")
    return tuple(out)


def ambiguity_scan(families: list[FamilyRecord]) -> AmbiguityReport:
    groups: dict[InvariantVector, list[FamilyRecord]] = {}
    for f in families:
        groups.setdefault(f.invariants, []).append(f)
    out = []
    for inv in sorted(groups):
        members = groups[inv]
        if len(members) < 2:
            continue
        pairs = tuple(PairVerdict(a.label(), b.label(), separate(a, b))
                      for a, b in itertools.combinations(members, 2))
        status = "distinct by rules" if all(p.rule for p in pairs) else "unresolved by rules"
        out.append(AmbiguityGroup(inv, tuple(f.label() for f in members), pairs, status, _recorded_for(members)))
    return AmbiguityReport(tuple(out))


def count_neither(families: list[FamilyRecord]) -> int:
    return sum(1 for f in families if f.neither)


__all__ = ["AmbiguityGroup", "AmbiguityReport", "ClassifyError", "Construction", "FamilyRecord", "PairVerdict",
           "RHO4_BASES", "RHO5_BASES", "RHO6_BASES", "SURFACE_BASES", "ThreefoldFamily", "ambiguity_scan",
           "constructions_over", "count_neither", "double_constructions", "double_families", "double_toric",
           "merge_by_tag", "per_base_constructions", "rho4_families", "rho5_families", "rho6_families",
           "separate", "threefold_families"]
