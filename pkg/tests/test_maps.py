import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import chi_form_scan
from twogroup_maps.catalog import build, catalog_all
from twogroup_maps.engine import element_order, parse_element
from twogroup_maps.errors import GroupError, KindMismatchError
from twogroup_maps.maps import MapRecord, MapType, chi, chi_form, classify, orbit_sample, passes_filter, realize
from twogroup_maps.reference import expected_rows
from twogroup_maps.triples import GenTuple, Kind, enumerate_tuples, orbit_partition

EXHAUSTIVE = [g for g in catalog_all(256) if g.ell <= 6]


def T(g, kind, *words):
    return GenTuple(kind, tuple(parse_element(g, x) for x in words))


def test_chi_examples():
    d16 = build("Dihedral", 3)
    assert chi(d16, T(d16, Kind.REVERSING, "b", "a*b", "a^4"), MapType.TYPE2_STAR) == 1
    qz = build("QuaternionCentralZ4", 2)
    assert chi(qz, T(qz, Kind.REVERSING, "a*d", "a*c*d", "c*d"), MapType.TYPE2_STAR) == -2
    z8 = build("Cyclic", 3)
    assert chi(z8, T(z8, Kind.ROTARY_PAIR, "a", "a^4"), MapType.TYPE2_P_EX) == -2


def test_chi_rejects_inadmissible_tuples():
    d16 = build("Dihedral", 3)
    with pytest.raises(KindMismatchError):
        chi(d16, T(d16, Kind.REVERSING, "b", "a*b", "a^4"), MapType.TYPE1)
    with pytest.raises(KindMismatchError):
        realize(d16, T(d16, Kind.ROTARY_PAIR, "a", "b"), MapType.TYPE2_STAR)


def test_realize_examples():
    for ell, want in ((2, 0), (3, -2)):
        g = build("Dihedral", ell)
        r = realize(g, T(g, Kind.REGULAR, "b", "a*b", f"a^{2 ** (ell - 1)}*b"), MapType.TYPE1)
        assert r.stab_orders["<x,z>"] == 4
        assert r.chi == want == 2 - 2 ** (ell - 1)
    z = build("CyclicTimesZ2", 1)
    assert realize(z, T(z, Kind.REGULAR, "a", "a*b", "b"), MapType.TYPE1).chi == 1
    dx = build("DihedralTimesZ2", 3)
    r = realize(dx, T(dx, Kind.REGULAR, "b", "a*b", "c"), MapType.TYPE1)
    assert r.chi == 2 and r.vef == (32 // 16, 32 // 4, 32 // 4)


def test_map_record_checks_euler():
    g = build("Dihedral", 2)
    r = realize(g, T(g, Kind.REVERSING, "b", "a*b", "a^2"), MapType.TYPE2_STAR)
    with pytest.raises(GroupError):
        MapRecord(r.map_type, r.group, r.tuple, r.stab_orders, r.chi + 1, r.vef, r.passes_filter)


def test_type2star_counts_two_face_orbits_even_for_equal_subgroups():
    z = build("CyclicTimesZ2", 1)
    r = realize(z, T(z, Kind.REVERSING, "a", "b", "b"), MapType.TYPE2_STAR)
    # <x,z> = <y,z> here, and both cosets families are still counted
    assert r.stab_orders["<x,z>"] == 4 and r.stab_orders["<y,z>"] == 2
    assert r.vef == (1, 2, 1 + 2)


def test_classify_examples():
    dz = build("DihedralSemiZ2", 3)
    regular = [r for r in classify(dz) if r.map_type is MapType.TYPE1 and r.passes_filter]
    assert sorted(r.chi for r in regular) == [-2, -2]
    p = orbit_partition(dz, enumerate_tuples(dz, Kind.REGULAR))
    assert {p.orbit_of(r.tuple) for r in regular} == {
        p.orbit_of(T(dz, Kind.REGULAR, "b", "a*b", "c")),
        p.orbit_of(T(dz, Kind.REGULAR, "c", "a*b", "b")),
    }
    assert classify(build("Quaternion", 3)) == []
    d16 = build("Dihedral", 3)
    ab = T(d16, Kind.ROTARY_PAIR, "a", "b")
    assert chi(d16, ab, MapType.TYPE2_STAR_EX) == 4 - 2**3
    assert not passes_filter(chi(d16, ab, MapType.TYPE2_STAR_EX))
    assert chi(d16, T(d16, Kind.ROTARY_PAIR, "a*b", "b"), MapType.TYPE2_STAR_EX) == 2


def _table(g):
    parts = {k: orbit_partition(g, enumerate_tuples(g, k)) for k in Kind}
    computed = {}
    all_chi = {}
    for r in classify(g):
        key = (r.map_type, parts[r.map_type.kind].orbit_of(r.tuple))
        all_chi[key] = r.chi
        if r.passes_filter:
            computed[key] = r.chi
    expected = {}
    for row in expected_rows(g.descriptor):
        mt = MapType(row.map_type)
        expected[(mt, parts[mt.kind].orbit_of(T(g, mt.kind, *row.words)))] = row.chi
    return computed, expected, all_chi


@pytest.mark.parametrize("g", EXHAUSTIVE + [build("CyclicTimesZ2", 1)], ids=str)
def test_surviving_maps_reproduce_the_expected_rows(g):
    computed, expected, all_chi = _table(g)
    assert computed == expected
    for key, value in all_chi.items():
        if key not in expected:
            assert value % 4 == 0


@pytest.mark.parametrize("g", EXHAUSTIVE, ids=str)
def test_euler_and_chi_forms(g):
    for r in classify(g):
        v, e, f = r.vef
        assert v - e + f == r.chi
        assert r.passes_filter == (r.chi % 4 in (1, 2, 3))
        if r.passes_filter:
            assert chi_form(r.chi).form != "other"


@pytest.mark.parametrize("g", [g for g in EXHAUSTIVE if g.order <= 64], ids=str)
def test_equivalent_tuples_give_identical_records(g):
    rng = np.random.default_rng(7)
    for kind in Kind:
        p = orbit_partition(g, enumerate_tuples(g, kind))
        for i, c in enumerate(p.classes):
            for mt in MapType.for_kind(kind):
                base = realize(g, c.representative, mt)
                for t in orbit_sample(p, i, 10, rng):
                    r = realize(g, t, mt)
                    assert (r.chi, r.vef, r.stab_orders) == (base.chi, base.vef, base.stab_orders)


@pytest.mark.parametrize("ell", range(2, 7))
def test_d_times_z2_divisibility_claim(ell):
    g = build("DihedralTimesZ2", ell)
    for x in range(2 ** (ell - 2)):
        u = parse_element(g, f"a^{2 * x}*c")
        formula = 4 - 2 ** (ell + 1) + 2 ** (ell + 2) // (2 * element_order(g, u))
        assert formula % 4 == 0
        t = T(g, Kind.REVERSING, "b", "a*b", f"a^{2 * x}*b*c")
        assert chi(g, t, MapType.TYPE2_STAR) == formula


def test_chi_runs_far_beyond_the_exhaustive_range():
    g = build("Dihedral", 30)
    t = T(g, Kind.REVERSING, "b", "a*b", f"a^{2 ** 29}")
    assert chi(g, t, MapType.TYPE2_STAR) == 1
    assert chi(g, t, MapType.TYPE2_P) == 2 - 2**30
    r = realize(g, t, MapType.TYPE2_P)
    assert r.vef[0] - r.vef[1] + r.vef[2] == 2 - 2**30 and r.passes_filter


def test_chi_form_examples():
    assert str(chi_form(1)) == "1"
    assert chi_form(-6).form == "2-2^l" and chi_form(-6).ell == 3
    f = chi_form(-10)
    assert (f.form, f.ell, f.s) == ("2-2^l+2^s", 4, 2)
    assert str(f) == "2-2^4+2^2"
    assert chi_form(0).form == "other" and chi_form(3).form == "other" and chi_form(-4).form == "other"


@given(st.integers(-(10**6), 10**6))
def test_chi_form_agrees_with_a_parameter_scan(value):
    f = chi_form(value)
    assert (f.form, f.ell, f.s) == chi_form_scan(value, 25)


@given(st.integers(2, 60), st.data())
def test_chi_form_recovers_parameters(ell, data):
    s = data.draw(st.integers(2, ell))
    f = chi_form(2 - 2**ell + 2**s)
    if s == ell:
        assert f.form == "2"
    elif s == ell - 1:
        # 2 - 2^l + 2^(l-1) is 2 - 2^(l-1), and the shorter form wins
        assert (f.form, f.ell) == ("2-2^l", s)
    else:
        assert (f.form, f.ell, f.s) == ("2-2^l+2^s", ell, s)


@given(st.integers(-(2**70), 2**70))
def test_filter_uses_the_mathematical_residue(value):
    assert passes_filter(value) == (abs(value) % 4 != 0)


def test_map_type_parsing():
    assert MapType.parse("2*") is MapType.TYPE2_STAR
    assert MapType.parse("type2pex") is MapType.TYPE2_P_EX
    with pytest.raises(ValueError):
        MapType.parse("type3")
