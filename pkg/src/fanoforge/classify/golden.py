"""Expected tables shipped with the package, and the corrections applied to them.

Golden files hold the values exactly as printed. ``errata.csv`` lists the
cells that are demonstrably wrong; each entry is checked when loaded (the
printed value must be the one in the file, and the correction must pass
its stated check) and then applied. Nothing else is ever patched.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"

BODY_FILES = ("tables_rho4.csv", "tables_rho5.csv")
NUMERIC = ("c1_4", "c1sq_c2", "h0", "h12", "h13", "h22", "minusK3", "rho", "row")


class GoldenError(ValueError):
    pass


@dataclass(frozen=True)
class Erratum:
    file: str
    row_key: str
    column: str
    printed: str
    corrected: str
    check: str
    note: str


def _read(name: str) -> list[dict]:
    path = GOLDEN / name
    if not path.exists():
        raise GoldenError(f"missing golden file {name}")
    with path.open(newline="") as fh:
        return [dict(r) for r in csv.DictReader(fh)]


def _row_key(name: str, row: dict) -> str:
    return f"{row['table']}/{row['row']}" if "table" in row else row["row"]


def _rr_ok(row: dict) -> bool:
    h0 = 1 + Fraction(int(row["c1_4"]), 6) + Fraction(int(row["c1sq_c2"]), 12)
    return h0 == int(row["h0"])


def _pair_ok(row: dict) -> bool:
    A, D, D2 = ([int(x) for x in row[k].split()] for k in ("A", "D", "D2"))
    return [d + e for d, e in zip(D, D2)] == A


_CHECKS = {"rr": _rr_ok, "pair": _pair_ok}


@lru_cache(maxsize=None)
def errata() -> tuple[Erratum, ...]:
    return tuple(Erratum(**r) for r in _read("errata.csv"))


def _apply(name: str, rows: list[dict]) -> list[dict]:
    by_key = {_row_key(name, r): r for r in rows}
    fixes = [e for e in errata() if e.file == name]
    for e in fixes:
        row = by_key.get(e.row_key)
        if row is None:
            raise GoldenError(f"erratum for {name} row {e.row_key} names no row")
        if row[e.column] != e.printed:
            raise GoldenError(f"erratum for {name} {e.row_key}.{e.column}: file has {row[e.column]!r}, "
                              f"erratum expects {e.printed!r}")
    # every printed row named by an 'rr' or 'pair' erratum must fail its check before and pass after
    touched = {}
    for e in fixes:
        touched.setdefault(e.row_key, []).append(e)
    for key, es in touched.items():
        row = by_key[key]
        before = dict(row)
        for e in es:
            row[e.column] = e.corrected
        for kind in {e.check for e in es} & set(_CHECKS):
            if _CHECKS[kind](before) or not _CHECKS[kind](row):
                raise GoldenError(f"erratum for {name} {key} does not pass its {kind} check")
    return rows


@lru_cache(maxsize=None)
def _load(name: str, corrected: bool) -> tuple[dict, ...]:
    rows = _read(name)
    if corrected:
        rows = _apply(name, rows)
    return tuple(rows)


def load_golden(name: str, corrected: bool = True) -> list[dict]:
    """Rows of a golden file as dicts of strings (copies; safe to mutate)."""
    return [dict(r) for r in _load(name, corrected)]


def golden_files() -> list[str]:
    return sorted(p.name for p in GOLDEN.glob("*.csv") if p.name != "errata.csv")


@lru_cache(maxsize=None)
def facts() -> dict:
    return json.loads((DATA / "facts.json").read_text())


def coords(cell: str) -> tuple[int, ...]:
    return tuple(int(x) for x in cell.split())


__all__ = ["Erratum", "GoldenError", "coords", "errata", "facts", "golden_files", "load_golden"]
