import pytest
from hypothesis import given, strategies as st

from fanoforge.construct import pair_region
from fanoforge.lattice import Cone, Inequality, LatticeError, RecordMismatch, UnboundedSystem, ample_system, \
    brute_force_points, is_ample, is_effective, is_nef, lattice_points, pair


def test_pairing_on_the_11_divisor(catalog):
    Z = catalog["2-32"]
    H1 = Z.unit(0)
    assert pair(H1, Z.curve((1, 0)), Z) == 0
    assert pair(H1, Z.curve((0, 1)), Z) == 1


def test_pairing_with_zero_class(catalog):
    for Z in catalog:
        assert pair(Z.zero(), Z.curve((1,) * Z.rank), Z) == 0


def test_anticanonical_meets_exceptional_curve_once(catalog):
    F1 = catalog["F1"]
    assert pair(F1.anticanonical, F1.curve((0, 1)), F1) == 1


def test_ampleness(catalog):
    S = catalog["P1xP1"]
    assert not is_ample(S.cls((0, 2)), S)
    assert is_ample(S.cls((1, 1)), S)
    assert is_nef(S.cls((0, 2)), S)
    for Z in catalog:
        assert is_ample(Z.anticanonical, Z), Z.id


def test_effectiveness(catalog):
    F1 = catalog["F1"]
    assert is_effective(F1.cls((0, 1)), F1)
    assert not is_effective(F1.cls((-1, 0)), F1)
    assert is_effective(F1.zero(), F1)
    Z = catalog["Bl2P2xP1"]
    assert is_effective(Z.cls((0, 0, 0, 2)), Z)
    assert not is_effective(Z.cls((0, 1, -1, 0)), Z)


def test_classes_from_different_records_do_not_mix(catalog):
    with pytest.raises(RecordMismatch):
        catalog["F1"].unit(0) + catalog["P1xP1"].unit(0)


def test_cone_rejects_bad_generators():
    with pytest.raises(LatticeError):
        Cone(((2, 0), (0, 1)))
    with pytest.raises(LatticeError):
        Cone(((0, 0),))


def test_single_point_system():
    assert lattice_points([Inequality((1,), 0), Inequality((-1,), 0)], 1) == [(0,)]


def test_unbounded_system_is_reported():
    with pytest.raises(UnboundedSystem):
        lattice_points([Inequality((1, 0), 0), Inequality((-1, 0), -3)], 2)


def test_split_region_for_a_22_curve(catalog):
    S = catalog["P1xP1"]
    A = (2, 2)
    system = ample_system(S, S.minus_K, -1)
    system += ample_system(S, tuple(k - a for k, a in zip(S.minus_K, A)), 1)
    pts = lattice_points(system, 2)
    assert pts == [(1, 1)]
    assert brute_force_points(system, [(-3, 3)] * 2) == pts


def test_hypersurface_choices_on_the_rank_four_base(catalog):
    Z = catalog["Bl2P2xP1"]
    found = {(d1 + d2).coords for d1, d2 in pair_region(Z) if is_effective(d1 + d2, Z)}
    assert found - {(0, 0, 0, 0)} == {(0, 0, 0, 1), (0, 0, 0, 2)}


@st.composite
def boxed_systems(draw):
    n = draw(st.integers(1, 3))
    box = [(draw(st.integers(-4, 0)), draw(st.integers(0, 4))) for _ in range(n)]
    system = []
    for i, (lo, hi) in enumerate(box):
        e = tuple(int(i == j) for j in range(n))
        system.append(Inequality(e, lo))
        system.append(Inequality(tuple(-x for x in e), -hi))
    for _ in range(draw(st.integers(0, 3))):
        coeffs = tuple(draw(st.integers(-3, 3)) for _ in range(n))
        system.append(Inequality(coeffs, draw(st.integers(-6, 6)), draw(st.booleans())))
    return system, box, n


@given(boxed_systems())
def test_enumeration_agrees_with_brute_force(data):
    system, box, n = data
    assert lattice_points(system, n) == brute_force_points(system, box)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_cone_membership_matches_facets(v):
    c = Cone(((1, 0), (1, 2)))
    by_facets = all(sum(u * x for u, x in zip(f, v)) >= 0 for f in c.facets())
    assert c.contains(v) == by_facets
