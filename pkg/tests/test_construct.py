import pytest
from hypothesis import given, strategies as st

from fanoforge.classify.canonical import automorphism_group, canonicalize
from fanoforge.classify.golden import coords, load_golden
from fanoforge.construct import BVerdict, BundleData, ConstructionCandidate, ConstructionError, DoubleCandidate, \
    RecordedVerdict, bundle_euler, check_construction_b, curve_line_bundle_euler, double_key, \
    elm_second_degree, enumerate_construction_a, enumerate_double_candidates, enumerate_double_p2, \
    ext1_dimension, fano_check_A, fano_check_double, is_admissible, maruyama_elm, no_section_scan, \
    p1xp1_cohomology
from fanoforge.lattice import is_ample, is_effective


def test_fano_check_examples(catalog):
    F1, Q = catalog["F1"], catalog["P1xP1"]
    e = (0, 1)
    assert fano_check_A(ConstructionCandidate.of(F1, e, e))
    assert not fano_check_A(ConstructionCandidate.of(Q, (1, 1), (2, 0)))


def test_fano_check_needs_effective_a(catalog):
    F1 = catalog["F1"]
    with pytest.raises(ConstructionError):
        fano_check_A(ConstructionCandidate.of(F1, (-1, 0), (0, 0)))


@given(st.sampled_from(["F1", "P1xP1", "2-34", "3-27", "2-35", "3-28"]), st.data())
def test_fano_check_is_symmetric(catalog, zid, data):
    Z = catalog[zid]
    vec = st.lists(st.integers(-3, 3), min_size=Z.rank, max_size=Z.rank)
    A, D = Z.cls(data.draw(vec)), Z.cls(data.draw(vec))
    if not is_effective(A, Z):
        return
    c = ConstructionCandidate(A, D, Z)
    assert fano_check_A(c) == fano_check_A(c.flipped())
    for m in automorphism_group(Z):
        img = ConstructionCandidate.of(Z, _apply(m, A.coords), _apply(m, D.coords))
        assert fano_check_A(img) == fano_check_A(c)


def _apply(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def test_enumeration_counts(catalog):
    assert len(enumerate_construction_a(catalog["F1"])) == 4
    assert len(enumerate_construction_a(catalog["2-34"])) == 37


def test_enumeration_over_the_cube_of_lines(catalog):
    # the expected table lists 23 rows, two of which are one orbit of the coordinate permutations
    Z = catalog["3-27"]
    rows = {int(r["row"]): r for r in load_golden("tables_rho5.csv") if r["table"] == "3-27"}
    assert len(rows) == 23
    same = [canonicalize(ConstructionCandidate.of(Z, coords(rows[n]["A"]), coords(rows[n]["D"]))) for n in (5, 6)]
    assert same[0] == same[1]
    assert len(enumerate_construction_a(Z)) == 22


def test_enumerated_candidates_are_post_checked(catalog):
    for zid in ("F1", "P1xP1", "2-34", "3-28", "2-35"):
        Z = catalog[zid]
        for c in enumerate_construction_a(Z):
            assert is_effective(c.A, Z) and is_admissible(c.A, Z)
            mk = Z.anticanonical
            assert is_ample(mk - c.D, Z) and is_ample(mk - c.D2, Z)
            assert canonicalize(c) == c


# ------------------------------------------------------------------ bundle generalisation

def test_k_section_family(catalog):
    Q = catalog["P1xP1"]
    E = BundleData.split_bundle(Q, (1, 0), (1, 0))
    for k in (1, 2, 3):
        v = check_construction_b(Q, Q.cls((k, 1)), E)
        assert v.value == BVerdict.FANO
        assert v.witnesses["I"] and v.witnesses["II"]
    v = check_construction_b(Q, Q.cls((4, 1)), E)
    assert v.value == BVerdict.NONFANO
    assert v.witnesses["I"] is False


def test_sufficient_but_not_necessary(catalog):
    Q = catalog["P1xP1"]
    E = BundleData.split_bundle(Q, (2, 0), (2, 0))
    assert E.quotient_D.coords == (4, 0)
    v = check_construction_b(Q, Q.cls((1, 1)), E)
    assert v.value == BVerdict.UNKNOWN
    assert (v.witnesses["I"], v.witnesses["II"], v.witnesses["III"]) == (True, False, True)


@given(st.integers(-2, 3), st.integers(-2, 3), st.integers(0, 3), st.integers(0, 3))
def test_trivial_extension_is_the_split_construction(catalog, d1, d2, a1, a2):
    Q = catalog["P1xP1"]
    A = Q.cls((a1, a2))
    if not is_admissible(A, Q):
        return
    E = BundleData.split_bundle(Q, (0, 0), (d1, d2))
    v = check_construction_b(Q, A, E)
    assert v.value != BVerdict.UNKNOWN
    assert (v.value == BVerdict.FANO) == fano_check_A(ConstructionCandidate(A, Q.cls((d1, d2)), Q))


def test_non_split_bundles_use_recorded_verdicts(catalog):
    Q = catalog["P1xP1"]
    D = Q.cls((2, 0))
    E = BundleData(Q.id, D, 0, D, None)
    v = check_construction_b(Q, Q.cls((1, 1)), E)
    assert v.value == BVerdict.UNKNOWN
    assert v.witnesses["II"] is None
    twist = (Q.anticanonical - D).coords
    oracle = {("II", Q.id, D.coords, 0, twist, None): RecordedVerdict(True, "test record")}
    assert check_construction_b(Q, Q.cls((1, 1)), E, oracle).value == BVerdict.FANO


def test_bundle_without_section_sequence_is_rejected(catalog):
    Q = catalog["P1xP1"]
    E = BundleData(Q.id, Q.cls((1, 1)), 1, None, None)
    with pytest.raises(ConstructionError):
        check_construction_b(Q, Q.cls((1, 1)), E)


def test_cohomology_of_line_bundles():
    assert p1xp1_cohomology(0, 0) == (1, 0, 0)
    assert p1xp1_cohomology(-2, 0) == (0, 1, 0)
    assert p1xp1_cohomology(1, 1) == (4, 0, 0)
    assert ext1_dimension(1, 0) == 1
    assert ext1_dimension(1, 1) == 0


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_serre_duality_on_the_quadric(a, b):
    h0, h1, h2 = p1xp1_cohomology(a, b)
    assert (h2, h1, h0) == p1xp1_cohomology(-2 - a, -2 - b)
    # Riemann-Roch: chi(O(a,b)) = (a+1)(b+1)
    assert h0 - h1 + h2 == (a + 1) * (b + 1)


def test_scan_certificate():
    cert = no_section_scan()
    assert cert.window == 5
    assert len(cert.rows) == 121
    assert cert.overlap == ()
    assert cert.verify()
    assert cert.tail_argument


def test_elementary_transformation(catalog):
    Q = catalog["P1xP1"]
    E = BundleData.split_bundle(Q, (0, 0), (0, 0))
    E2 = maruyama_elm(E, Q.cls((1, 1)), 1, Q)
    assert E2.c1.coords == (-1, -1) and E2.c2 == 1
    ref = BundleData.split_bundle(Q, (-1, 0), (0, -1))
    assert (ref.c1, ref.c2) == (E2.c1, E2.c2)


def test_elementary_transformation_twice_is_a_twist(catalog):
    Q = catalog["P1xP1"]
    A = Q.cls((1, 1))
    E = BundleData.split_bundle(Q, (1, 0), (0, 2))
    E1 = maruyama_elm(E, A, 1, Q)
    E2 = maruyama_elm(E1, A, elm_second_degree(Q, E.c1, A, 1), Q)
    twisted = BundleData.split_bundle(Q, (0, -1), (-1, 1))
    assert (E2.c1, E2.c2) == (twisted.c1, twisted.c2)


def test_elementary_transformation_along_a_fibre(catalog):
    Q = catalog["P1xP1"]
    A = Q.cls((1, 0))
    E = BundleData.split_bundle(Q, (0, 0), (1, 0))
    E2 = maruyama_elm(E, A, 0, Q)
    assert E2.c1.coords == (0, 0) and E2.c2 == 0


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 2),
       st.integers(0, 2), st.integers(-4, 4))
def test_euler_characteristics_add_up(catalog, a1, a2, b1, b2, x, y, deg):
    Q = catalog["P1xP1"]
    if x == y == 0:
        return
    A = Q.cls((x, y))
    E = BundleData.split_bundle(Q, (a1, a2), (b1, b2))
    E2 = maruyama_elm(E, A, deg, Q)
    assert bundle_euler(Q, E.c1, E.c2) == bundle_euler(Q, E2.c1, E2.c2) + curve_line_bundle_euler(Q, A, deg)


# ------------------------------------------------------------------ two steps over P2

def test_double_checks(catalog):
    P2 = catalog["P2"]

    def dc(a, d, a2, d2):
        return DoubleCandidate(P2.cls((a,)), P2.cls((d,)), P2.cls((a2,)), P2.cls((d2,)), P2)

    assert fano_check_double(dc(1, 1, 1, 1))
    assert fano_check_double(dc(2, 1, 2, 1))
    assert not fano_check_double(dc(3, 1, 1, 1))
    assert double_key(dc(1, 1, 2, 1)) == double_key(dc(2, 1, 1, 1))


def test_double_enumeration(catalog):
    fams = enumerate_double_p2(catalog)
    assert len(fams) == 3
    by_c14 = {f.invariants.c1_4: f.invariants for f in fams}
    v = by_c14[310]
    assert (v.c1sq_c2, v.h0_minusK) == (172, 67)


def test_double_enumeration_is_symmetric_in_the_layers(catalog):
    from fanoforge.classify.families import double_constructions
    cands = enumerate_double_candidates(catalog["P2"])
    keys = {double_key(c) for c in cands}
    assert keys == {double_key(c.swapped()) for c in cands}
    for group in double_constructions(catalog):
        assert len({g.invariants for g in group}) == 1
