"""Base varieties: records, the shipped catalog, and derived records."""

from __future__ import annotations

import os
from pathlib import Path

from .io import CatalogError, dumps_catalog, parse_catalog
from .record import Factorization, IrreducibleRules, VarietyRecord
from .recipes import derive_product_record
from .validate import validate_record

DEFAULT_PATH = Path(__file__).parent / "data" / "catalog.json"
ENV_VAR = "FANOFORGE_CATALOG"


class Catalog:
    """Records keyed by id, in file order."""

    def __init__(self, records=()):
        self._records = {}
        for r in records:
            if r.id in self._records:
                raise CatalogError(f"duplicate record id {r.id}")
            self._records[r.id] = r

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records.values())

    def __contains__(self, key):
        return key in self._records

    def ids(self):
        return list(self._records)

    def get(self, key: str) -> VarietyRecord:
        try:
            return self._records[key]
        except KeyError:
            raise CatalogError(f"unknown variety id {key!r}") from None

    __getitem__ = get

    def threefolds(self):
        return [r for r in self if r.dim == 3]

    def surfaces(self):
        return [r for r in self if r.dim == 2]


def default_catalog_path() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else DEFAULT_PATH


def load_catalog(path=None) -> Catalog:
    """Load and validate a catalog file; any invalid record rejects the whole file."""
    p = Path(path) if path is not None else default_catalog_path()
    try:
        text = p.read_text()
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {p}: {exc}") from exc
    records = parse_catalog(text)
    for r in records:
        problems = validate_record(r)
        if problems:
            raise CatalogError(f"record {r.id} is invalid: " + "; ".join(problems))
    return Catalog(records)


__all__ = ["Catalog", "CatalogError", "Factorization", "IrreducibleRules", "VarietyRecord", "DEFAULT_PATH",
           "ENV_VAR", "default_catalog_path", "derive_product_record", "dumps_catalog", "load_catalog",
           "validate_record"]
