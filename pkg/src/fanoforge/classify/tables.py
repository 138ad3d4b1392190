"""Table generation, rendering and comparison with the expected tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Mapping

from ..catalog import load_catalog
from .assess import product_factors
from .canonical import canonicalize
from .families import RHO4_BASES, RHO5_BASES, RHO6_BASES, SURFACE_BASES, UNTAGGED_TORIC, AmbiguityReport, \
    Construction, FamilyRecord, ambiguity_scan, double_constructions, merge_by_tag, per_base_constructions, \
    rho6_families, threefold_families
from .golden import GoldenError, coords, load_golden
from ..construct import ConstructionCandidate

SCOPES = ("threefolds", "rho4", "rho5", "rho6", "double", "all")

BODY_COLUMNS = ("table", "row", "A", "D", "D2", "c1_4", "c1sq_c2", "h0", "h12", "h22", "h13", "toric", "product")
THREEFOLD_COLUMNS = ("table", "row", "A", "D", "D2", "minusK3", "family")
DOUBLE_COLUMNS = ("row", "A", "D", "D2", "A2", "DD", "DD2", "c1_4", "c1sq_c2", "h0", "h12", "h13", "h22", "toric",
                  "product")
RHO6_COLUMNS = ("row", "Z", "A", "D", "D2", "product", "c1_4", "c1sq_c2", "h0", "h12", "h13", "h22")
APPENDIX_COLUMNS = ("row", "rho", "c1_4", "c1sq_c2", "h0", "h12", "h13", "h22", "toric", "product", "Z",
                    "description")
GOLDEN_FILES = {"double": "tables_double.csv", "rho6": "rho6.csv", "appendix_rho4": "appendix_rho4.csv",
                "appendix_rho5": "appendix_rho5.csv"}
# divisor classes are compared up to symmetry through the row anchor, never as printed
CLASS_COLUMNS = ("A", "D", "D2", "A2", "DD", "DD2")
INVARIANT_COLUMNS = ("c1_4", "c1sq_c2", "h0", "h12", "h13", "h22")
NUMERIC_COLUMNS = INVARIANT_COLUMNS + ("row", "rho", "dim", "degree", "minusK3", "h11", "bundle_c1_4",
                                       "bundle_c1sq_c2", "bundle_h0")


class TableError(ValueError):
    pass


@dataclass
class Table:
    name: str
    kind: str
    columns: tuple[str, ...]
    rows: list[dict] = field(default_factory=list)


@dataclass
class TableSet:
    scope: str
    tables: dict[str, Table]
    families: dict[str, list[FamilyRecord]] = field(default_factory=dict)
    ambiguities: AmbiguityReport | None = None

    def __iter__(self):
        return iter(self.tables.values())


def _fmt(v) -> str:
    return " ".join(str(x) for x in v)


def _inv_cells(v) -> dict:
    return {"c1_4": str(v.c1_4), "c1sq_c2": str(v.c1sq_c2), "h0": str(v.h0_minusK), "h12": str(v.h12),
            "h13": str(v.h13), "h22": str(v.h22)}


def _toric_cell(c: Construction) -> str:
    if not c.toric:
        return ""
    return c.tag or UNTAGGED_TORIC


# ------------------------------------------------------------------ per-base tables

def _number(items, anchored_row, golden_rows):
    """Rows keep their anchored number; the rest follow the largest expected number."""
    nxt = max([int(r["row"]) for r in golden_rows] or [0]) + 1
    out = []
    for it in items:
        n = anchored_row(it)
        if n is None:
            n, nxt = nxt, nxt + 1
        out.append((n, it))
    return sorted(out, key=lambda p: p[0])


def _known_rows(name: str) -> list[dict]:
    try:
        return _golden_rows(name)
    except GoldenError:
        return []


def body_table(base: str, cons: list[Construction]) -> Table:
    golden = _known_rows(base)
    rows = []
    for n, c in _number(cons, lambda c: c.anchor[1] if c.anchor else None, golden):
        cand = c.candidate
        row = {"table": base, "row": str(n), "A": _fmt(cand.A.coords), "D": _fmt(cand.D.coords),
               "D2": _fmt(cand.D2.coords), **_inv_cells(c.invariants), "toric": _toric_cell(c),
               "product": c.product or ""}
        rows.append(row)
    return Table(base, "body", BODY_COLUMNS, rows)


def threefold_table(surface: str, catalog) -> Table:
    golden = _known_rows(surface)
    S = catalog[surface]
    anchors = {}
    for r in golden:
        c = canonicalize(ConstructionCandidate.of(S, coords(r["A"]), coords(r["D"])))
        anchors.setdefault(c.key(), int(r["row"]))
    fams = threefold_families(surface, catalog)
    rows = []
    for n, f in _number(fams, lambda f: anchors.get(f.candidate.key()), golden):
        c = f.candidate
        rows.append({"table": surface, "row": str(n), "A": _fmt(c.A.coords), "D": _fmt(c.D.coords),
                     "D2": _fmt(c.D2.coords), "minusK3": str(f.minus_K3), "family": f.family or ""})
    return Table(surface, "threefold", THREEFOLD_COLUMNS, rows)


def double_table(groups: list[list[Construction]]) -> Table:
    golden = _golden_rows("double")
    rows = []
    for n, g in _number(groups, lambda g: g[0].anchor[1] if g[0].anchor else None, golden):
        c = g[0]
        d = c.double
        rows.append({"row": str(n), "A": str(d.A.coords[0]), "D": str(d.D.coords[0]),
                     "D2": str(d.A.coords[0] - d.D.coords[0]), "A2": str(d.A2.coords[0]),
                     "DD": str(d.D2.coords[0]), "DD2": str(d.A2.coords[0] - d.D2.coords[0]),
                     **_inv_cells(c.invariants), "toric": _toric_cell(c), "product": c.product or ""})
    return Table("double", "double", DOUBLE_COLUMNS, rows)


def rho6_table(fams: list[FamilyRecord]) -> Table:
    rows = []
    for i, f in enumerate(fams, 1):
        c = f.provenance[0]
        rows.append({"row": str(i), "Z": c.Z, "A": _fmt(c.A.coords), "D": _fmt(c.D.coords),
                     "D2": _fmt(c.D2.coords), "product": f.product or "", **_inv_cells(f.invariants)})
    return Table("rho6", "rho6", RHO6_COLUMNS, rows)


# ------------------------------------------------------------------ final lists

def _appendix_index(name: str) -> dict:
    """anchor -> (appendix row, position within its description)."""
    out = {}
    for r in load_golden(name):
        for pos, ref in enumerate(r["description"].split(";")):
            t, _, n = ref.rpartition("-")
            out[(t, int(n))] = (int(r["row"]), pos)
    return out


def _anchor_text(a) -> str:
    return f"{a[0]}-{a[1]}"


def appendix_table(name: str, fams: list[FamilyRecord]) -> Table:
    index = _appendix_index(name)
    big = 10 ** 9

    def where(f):
        hits = [index[a] for a in f.anchors if a in index]
        return min(hits) if hits else (big, 0)

    def order_key(f):
        v = f.invariants
        return (v.c1_4, where(f)[0], v.c1sq_c2, v.h0_minusK, f.label())

    rows = []
    for i, f in enumerate(sorted(fams, key=order_key), 1):
        cons = sorted(f.constructions, key=lambda c: index.get(c.anchor, (big, big))[1] if c.anchor else big)
        bases = list(dict.fromkeys(c.base_label for c in cons))
        desc = list(dict.fromkeys(_anchor_text(c.anchor) if c.anchor else
                                  f"{c.candidate.Z}:{_fmt(c.candidate.A.coords)}:{_fmt(c.candidate.D.coords)}"
                                  for c in cons))
        rows.append({"row": str(i), "rho": str(f.rho), **_inv_cells(f.invariants), "toric": f.toric or "",
                     "product": f.product or "", "Z": ";".join(bases), "description": ";".join(desc)})
    return Table(name.removesuffix(".csv"), "appendix", APPENDIX_COLUMNS, rows)


# ------------------------------------------------------------------ generation

def generate_tables(scope: str = "all", catalog=None) -> TableSet:
    if scope not in SCOPES:
        raise TableError(f"unknown scope {scope!r}; expected one of {', '.join(SCOPES)}")
    cat = catalog if catalog is not None else load_catalog()
    tables: dict[str, Table] = {}
    families: dict[str, list[FamilyRecord]] = {}
    want = {"threefolds", "rho4", "rho5", "rho6", "double"} if scope == "all" else {scope}
    if "threefolds" in want:
        for s in SURFACE_BASES:
            tables[s] = threefold_table(s, cat)
    if "rho4" in want:
        cons = per_base_constructions(RHO4_BASES, cat)
        for b in RHO4_BASES:
            tables[b] = body_table(b, cons[b])
        families["rho4"] = merge_by_tag(4, [[c] for b in RHO4_BASES for c in cons[b]])
        tables["appendix_rho4"] = appendix_table("appendix_rho4.csv", families["rho4"])
    doubles = double_constructions(cat) if want & {"rho5", "double"} else None
    if "rho5" in want:
        cons = per_base_constructions(RHO5_BASES, cat)
        for b in RHO5_BASES:
            tables[b] = body_table(b, cons[b])
        families["rho5"] = merge_by_tag(5, [[c] for b in RHO5_BASES for c in cons[b]] + doubles)
    if want & {"rho5", "double"}:
        tables["double"] = double_table(doubles)
    if "rho5" in want:
        tables["appendix_rho5"] = appendix_table("appendix_rho5.csv", families["rho5"])
    if "rho6" in want:
        families["rho6"] = rho6_families(cat)
        tables["rho6"] = rho6_table(families["rho6"])
    if scope == "double":
        families["double"] = merge_by_tag(5, doubles)
    fams = [f for v in families.values() for f in v]
    return TableSet(scope, tables, families, ambiguity_scan(fams) if fams else None)


# ------------------------------------------------------------------ rendering

def render(ts: TableSet, fmt: str = "markdown") -> str:
    if fmt == "markdown":
        return "\n".join(_markdown(t) for t in ts)
    if fmt == "csv":
        parts = []
        for t in ts:
            buf = io.StringIO()
            w = csv.DictWriter(buf, t.columns, lineterminator="\n")
            w.writeheader()
            w.writerows(t.rows)
            parts.append(f"# {t.name}\n" + buf.getvalue())
        return "\n".join(parts)
    if fmt == "json":
        data = {"scope": ts.scope,
                "tables": [{"name": t.name, "kind": t.kind, "columns": list(t.columns),
                            "rows": [{k: _json_cell(k, r[k]) for k in t.columns} for r in t.rows]} for t in ts]}
        return json.dumps(data, indent=1, sort_keys=False) + "\n"
    raise TableError(f"unknown format {fmt!r}")


def tables_from_json(text: str) -> TableSet:
    """Read back the JSON rendering; cells become strings again."""
    try:
        data = json.loads(text)
        tables = {}
        for t in data["tables"]:
            rows = [{k: str(v) for k, v in r.items()} for r in t["rows"]]
            tables[t["name"]] = Table(t["name"], t["kind"], tuple(t["columns"]), rows)
        return TableSet(data["scope"], tables)
    except (ValueError, KeyError, TypeError) as exc:
        raise TableError(f"not a table file written by this tool: {exc}") from exc


def _json_cell(column, value):
    if column in NUMERIC_COLUMNS:
        return int(value)
    return value


def _markdown(t: Table) -> str:
    head = "| " + " | ".join(t.columns) + " |"
    sep = "|" + "|".join("---" for _ in t.columns) + "|"
    body = ["| " + " | ".join(r[c] for c in t.columns) + " |" for r in t.rows]
    return "\n".join([f"### {t.name}", "", head, sep, *body, ""])


# ------------------------------------------------------------------ comparison

@dataclass(frozen=True, order=True)
class DiffEntry:
    table: str
    row: str
    column: str
    expected: str
    got: str

    def __str__(self):
        return f"{self.table} row {self.row} [{self.column}]: expected {self.expected!r}, got {self.got!r}"


@dataclass
class DiffReport:
    entries: list[DiffEntry]
    tables: list[str]

    @property
    def ok(self) -> bool:
        return not self.entries

    def for_table(self, name: str) -> list[DiffEntry]:
        return [e for e in self.entries if e.table == name]

    def lines(self) -> list[str]:
        return [str(e) for e in self.entries]


def _golden_rows(name: str) -> list[dict]:
    if name in RHO4_BASES:
        return [r for r in load_golden("tables_rho4.csv") if r["table"] == name]
    if name in RHO5_BASES:
        return [r for r in load_golden("tables_rho5.csv") if r["table"] == name]
    if name in SURFACE_BASES:
        return [r for r in load_golden("tables_threefolds.csv") if r["table"] == name]
    if name in GOLDEN_FILES:
        return load_golden(GOLDEN_FILES[name])
    raise GoldenError(f"no golden table named {name}")


def shipped_golden(names) -> dict[str, list[dict]]:
    return {n: _golden_rows(n) for n in names}


def _same_cell(column: str, expected: str, got: str) -> bool:
    if column == "product":
        return product_factors(expected) == product_factors(got)
    return expected == got


def _pair_key(row: dict, keys=("D", "D2")) -> tuple:
    return tuple(sorted(row[k] for k in keys))


def _compare_rows(name: str, columns, expected: dict, got: dict, out: list):
    for col in columns:
        if col in ("table", "row") or col not in expected:
            continue
        if col in CLASS_COLUMNS:
            continue
        if not _same_cell(col, expected[col], got.get(col, "")):
            out.append(DiffEntry(name, expected["row"], col, expected[col], got.get(col, "")))


def _diff_by_row(t: Table, golden: list[dict], out: list, key_check=None):
    mine = {r["row"]: r for r in t.rows}
    theirs = {r["row"]: r for r in golden}
    for n, exp in theirs.items():
        got = mine.get(n)
        if got is None:
            out.append(DiffEntry(t.name, n, "*", "row present", "row missing"))
            continue
        if key_check is not None and not key_check(exp, got):
            out.append(DiffEntry(t.name, n, "A/D", f"{exp['A']} | {_pair_key(exp)}", f"{got['A']} | {_pair_key(got)}"))
        _compare_rows(t.name, t.columns, exp, got, out)
    for n in mine:
        if n not in theirs:
            out.append(DiffEntry(t.name, n, "*", "row absent", "row present"))


def _diff_appendix(t: Table, golden: list[dict], out: list):
    def refs(row):
        return set(x for x in row["description"].split(";") if x)

    by_ref = {}
    for r in golden:
        for ref in refs(r):
            by_ref[ref] = r["row"]
    matched = []
    used = set()
    for r in t.rows:
        hits = sorted({by_ref[x] for x in refs(r) if x in by_ref}, key=int)
        if not hits:
            out.append(DiffEntry(t.name, r["row"], "*", "row absent", f"row present ({r['description']})"))
            continue
        if len(hits) > 1:
            out.append(DiffEntry(t.name, r["row"], "description", " / ".join(hits), r["description"]))
        g = next(x for x in golden if x["row"] == hits[0])
        used.add(g["row"])
        matched.append(int(g["row"]))
        for col in t.columns:
            if col == "row":
                continue
            if not _same_cell(col, g[col], r[col]):
                out.append(DiffEntry(t.name, g["row"], col, g[col], r[col]))
    for g in golden:
        if g["row"] not in used:
            out.append(DiffEntry(t.name, g["row"], "*", "row present", "row missing"))
    for a, b in zip(matched, matched[1:]):
        if a > b:
            out.append(DiffEntry(t.name, str(b), "order", f"after row {b - 1}", f"after row {a}"))


def diff_expected(ts: TableSet, golden: Mapping[str, list[dict]] | None = None) -> DiffReport:
    golden = shipped_golden(ts.tables) if golden is None else golden
    missing = [n for n in ts.tables if n not in golden]
    if missing:
        raise GoldenError("expected tables do not cover this scope: " + ", ".join(missing))
    out: list[DiffEntry] = []
    for name, t in ts.tables.items():
        exp = golden[name]
        if t.kind == "appendix":
            _diff_appendix(t, exp, out)
        elif t.kind == "double":
            _diff_by_row(t, exp, out, lambda e, g: (e["A"], _pair_key(e), e["A2"], _pair_key(e, ("DD", "DD2")))
                         in {(g["A"], _pair_key(g), g["A2"], _pair_key(g, ("DD", "DD2"))),
                             (g["A2"], _pair_key(g, ("DD", "DD2")), g["A"], _pair_key(g))})
        else:
            _diff_by_row(t, exp, out, None)
    return DiffReport(out, list(ts.tables))


__all__ = ["APPENDIX_COLUMNS", "BODY_COLUMNS", "DiffEntry", "DiffReport", "SCOPES", "Table", "TableError",
           "TableSet", "diff_expected", "generate_tables", "render", "shipped_golden", "tables_from_json"]
