import pytest
from hypothesis import given, strategies as st

from fanoforge.catalog.build import bl2p2_record
from fanoforge.chow import surface_geometry
from fanoforge.classify.canonical import orbit
from fanoforge.construct import ConstructionCandidate
from fanoforge.invariants import InvariantVector, blowup_invariants, hodge_4fold, invariants_4fold, \
    minus_K_cubed, p1bundle_invariants, product_surfaces_invariants, ring_invariants


def test_threefold_degrees(catalog):
    F1, Q = catalog["F1"], catalog["P1xP1"]
    assert minus_K_cubed(F1, F1.cls((0, 1)), F1.cls((-1, 0))) == 46
    assert minus_K_cubed(Q, Q.cls((2, 2)), Q.cls((1, 1))) == 28


@given(st.sampled_from(["F1", "P1xP1", "P2"]), st.data())
def test_threefold_degree_is_symmetric(catalog, sid, data):
    S = catalog[sid]
    vec = st.lists(st.integers(-4, 4), min_size=S.rank, max_size=S.rank)
    A, D = S.cls(data.draw(vec)), S.cls(data.draw(vec))
    assert minus_K_cubed(S, A, D) == minus_K_cubed(S, A, A - D)


def test_worked_pipeline(catalog):
    Z = catalog["2-34"]
    H1 = Z.unit(0)
    Y = p1bundle_invariants(Z, H1)
    assert (Y.K4, Y.K2c2, Y.chi) == (432, 204, 90)
    X = blowup_invariants(Y, Z, H1, H1, surface_geometry(H1, Z))
    assert (X.K4, X.K2c2, X.chi) == (378, 192, 80)


def test_trivial_bundle_is_a_product(catalog):
    for Z in catalog.threefolds():
        Y = p1bundle_invariants(Z, Z.zero())
        assert Y.K4 == 8 * Z.degree


def test_hodge_numbers(catalog):
    Z = catalog["2-18"]
    H2 = Z.unit(1)
    _, h12, _, h22 = hodge_4fold(Z, H2, surface_geometry(H2, Z))
    assert (h12, h22) == (2, 10)
    W = catalog["2-32"]
    _, _, h13, h22 = hodge_4fold(W, W.anticanonical, surface_geometry(W.anticanonical, W))
    assert (h13, h22) == (1, 24)
    C = catalog["3-27"]
    A = C.cls((2, 2, 2))
    _, _, h13, h22 = hodge_4fold(C, A, surface_geometry(A, C))
    assert (h13, h22) == (1, 26)


def test_full_vectors(catalog):
    Z = catalog["2-34"]
    v = invariants_4fold(ConstructionCandidate.of(Z, (1, 0), (1, 0)))
    assert v == InvariantVector(378, 192, 80, 4, 0, 0, 5)
    W = catalog["2-32"]
    v = invariants_4fold(ConstructionCandidate.of(W, (2, 2), (1, 1)))
    assert v == InvariantVector(180, 144, 43, 4, 0, 1, 24)
    C = catalog["3-27"]
    v = invariants_4fold(ConstructionCandidate.of(C, (0, 0, 1), (1, 1, 1)))
    assert (v.c1_4, v.c1sq_c2, v.h0_minusK) == (394, 196, 83)


def test_product_of_two_blown_up_planes():
    S = bl2p2_record()
    v = product_surfaces_invariants(S, S)
    assert v.c1_4 == 6 * 7 * 7
    assert v.riemann_roch_ok()


def test_rho6_construction_is_the_product(catalog):
    Z = catalog["Bl2P2xP1"]
    S = bl2p2_record()
    v = invariants_4fold(ConstructionCandidate.of(Z, (0, 0, 0, 1), (0, 0, 0, 0)))
    assert v == product_surfaces_invariants(S, S)


def test_ring_oracle_on_a_spread_of_candidates(constructions):
    # the acceptance suite runs the oracle on every candidate
    for c in constructions[::4]:
        v = c.invariants
        assert ring_invariants(c.candidate) == (v.c1_4, v.c1sq_c2), str(c.candidate)


def test_h11_is_rho_plus_two(constructions):
    for c in constructions:
        assert c.invariants.h11 == c.candidate.record.rank + 2


def test_symmetries_leave_invariants_alone(constructions):
    for c in constructions[::3]:
        cand = c.candidate
        assert invariants_4fold(cand.flipped()) == c.invariants
        for img in orbit(cand):
            assert invariants_4fold(img) == c.invariants


@pytest.mark.parametrize("zid", ["2-34", "3-27", "2-32"])
def test_riemann_roch_holds_for_all_outputs(catalog, zid):
    from fanoforge.construct import enumerate_construction_a
    for c in enumerate_construction_a(catalog[zid]):
        assert invariants_4fold(c).riemann_roch_ok()
