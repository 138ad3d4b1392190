import dataclasses
import json

import pytest

from fanoforge.catalog import ENV_VAR, Catalog, CatalogError, DEFAULT_PATH, default_catalog_path, \
    derive_product_record, dumps_catalog, load_catalog, parse_catalog, validate_record
from fanoforge.catalog import recipes as R
from fanoforge.catalog.build import bl2p2_record, default_records, p1_record
from fanoforge.catalog.recipes import derive_construction_record, derive_divisor_record


def test_shipped_catalog_contents(catalog):
    assert len(catalog.surfaces()) == 3
    assert len(catalog.threefolds()) == 20


def test_shipped_file_matches_the_builder():
    assert DEFAULT_PATH.read_text() == dumps_catalog(default_records())


def test_every_record_validates(catalog):
    for r in catalog:
        assert validate_record(r) == [], r.id


def test_roundtrip(catalog):
    text = dumps_catalog(catalog)
    assert dumps_catalog(parse_catalog(text)) == text


def test_empty_file_is_an_empty_catalog(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("")
    assert len(load_catalog(p)) == 0


def _mutated(tmp_path, **changes):
    data = json.loads(DEFAULT_PATH.read_text())
    rec = next(r for r in data["records"] if r["id"] == "3-27")
    rec.update(changes)
    p = tmp_path / "cat.json"
    p.write_text(json.dumps(data))
    return p


def test_grr_violation_is_rejected(tmp_path):
    with pytest.raises(CatalogError, match="expected 24"):
        load_catalog(_mutated(tmp_path, c2=[4, 4, 5]))


def test_floats_are_rejected(tmp_path):
    with pytest.raises(CatalogError, match="floating point"):
        load_catalog(_mutated(tmp_path, degree=48.0))


def test_schema_violation_names_the_field(tmp_path):
    with pytest.raises(CatalogError, match="schema"):
        load_catalog(_mutated(tmp_path, rank="three"))


def test_environment_variable_overrides_the_path(tmp_path, monkeypatch):
    p = tmp_path / "mine.json"
    p.write_text(dumps_catalog([r for r in load_catalog() if r.dim == 2]))
    monkeypatch.setenv(ENV_VAR, str(p))
    assert default_catalog_path() == p
    assert len(load_catalog()) == 3


def test_duplicate_ids_are_rejected(catalog):
    r = catalog["P2"]
    with pytest.raises(CatalogError):
        Catalog([r, r])


def test_unknown_id(catalog):
    with pytest.raises(CatalogError, match="unknown variety"):
        catalog["9-99"]


def test_product_with_a_line():
    F1 = load_catalog()["F1"]
    r = derive_product_record(F1, p1_record(), id="F1xP1")
    assert r.minus_K == (3, 2, 2)
    assert sorted(r.eff.generators) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert validate_record(r) == []


def test_product_of_bl2p2_with_a_line(catalog):
    r = derive_product_record(bl2p2_record(), p1_record())
    want = {(1, 1, 1, 0), (1, 1, 0, 0), (1, 0, 1, 0), (0, 0, 0, 1)}
    assert set(r.nef.generators) == want
    assert r.degree == 42
    assert set(catalog["Bl2P2xP1"].nef.generators) == want


def test_cube_of_lines():
    P1 = p1_record()
    r = derive_product_record(derive_product_record(P1, P1), P1)
    assert r.form == {(0, 1, 2): 1}


def test_bundle_records_over_p2(catalog):
    P2 = catalog["P2"]
    # D1^2 + D2^2 + 6(-K)^2 - 3(-K).(D1 + D2) with -K = 3h
    assert derive_construction_record(P2, (1,), (1,)).degree == 1 + 0 + 54 - 9
    assert derive_construction_record(P2, (2,), (1,)).degree == 1 + 1 + 54 - 18
    for a, d in [((1,), (1,)), ((2,), (1,)), ((1,), (0,))]:
        r = derive_construction_record(P2, a, d)
        assert sum(x * y for x, y in zip(r.c2, r.minus_K)) == 24


def test_divisor_records():
    r = derive_divisor_record([2, 2], [[1, 1]], id="W")
    assert r.minus_K == (2, 2)
    # (2h1 + 2h2)^3 (h1 + h2) on P2 x P2
    assert r.degree == 48
    r = derive_divisor_record([1, 1, 2], [[1, 1, 1]], id="V")
    assert -sum(x * y for x, y in zip(r.c2, r.minus_K)) == -24


def test_h12_of_the_12_divisor(catalog):
    assert catalog["2-25"].h12 == 1


def test_blowups_of_p3_along_curves():
    P3 = R.projective_space(3)
    line = R.blowup_curve(P3, [1], 0)
    conic = R.blowup_curve(P3, [2], 0)
    assert line.product(*[line.minus_K] * 3) == 54
    assert conic.product(*[conic.minus_K] * 3) == 46
    for p in (line, conic):
        assert sum(x * y for x, y in zip(p.c2, p.minus_K)) == 24


def test_non_ample_anticanonical_is_reported(catalog):
    r = dataclasses.replace(catalog["3-27"], minus_K=(2, 2, 0), degree=0)
    assert any("not positive on extremal ray" in p for p in validate_record(r))


def test_broken_automorphism_is_named(catalog):
    r = catalog["3-28"]
    bad = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    problems = validate_record(dataclasses.replace(r, automorphisms=r.automorphisms + (bad,)))
    assert any(str(bad) in p for p in problems)


def test_basis_labels_are_distinct(catalog):
    for r in catalog:
        assert len(set(r.basis)) == len(r.basis), r.id
    assert catalog["2-34"].basis == ("H1", "H2")
