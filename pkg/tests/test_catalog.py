import json

import pytest

from twogroup_maps.catalog import Family, FamilyDescriptor, build, catalog_all, feature_flags
from twogroup_maps.engine import center, dense, involutions, parse_element
from twogroup_maps.errors import ParameterError
from twogroup_maps.reference import FeatureFlags, expected_flags


def labels(groups):
    return {g.label for g in groups}


def test_build_dihedral_of_order_16():
    g = build(Family.DIHEDRAL, 3)
    a, b = g.generator("a"), g.generator("b")
    assert g.order == 16
    assert g.pow(a, 8) == g.identity and g.mul(b, b) == g.identity
    assert g.mul(g.inv(b), g.mul(a, b)) == g.inv(a)


def test_build_central_product_has_c_and_d_squaring_to_a0():
    g = build("QuaternionCentralZ4", 2)
    a0 = parse_element(g, "a^2")
    assert g.order == 16
    assert g.mul(g.generator("c"), g.generator("c")) == a0 == g.mul(g.generator("d"), g.generator("d"))


@pytest.mark.parametrize(
    "family, ell",
    [("SemiDihedral", 2), ("Modular", 1), ("DihedralSemiZ2", 2), ("Cyclic", 1), ("Quaternion", 31), ("Dihedral", 0)],
)
def test_out_of_range_ell_is_a_parameter_error(family, ell):
    with pytest.raises(ParameterError, match="ell"):
        build(family, ell)


def test_unknown_family_is_a_parameter_error():
    with pytest.raises(ParameterError):
        build("Octahedral", 3)


def test_degenerate_identifications_are_normalized():
    assert build("Dihedral", 1).descriptor == FamilyDescriptor(Family.CYCLIC_TIMES_Z2, 1)
    assert build("Modular", 2).descriptor == FamilyDescriptor(Family.DIHEDRAL, 2)
    assert build("Dihedral", 1) is build("CyclicTimesZ2", 1)


def test_catalog_small_orders():
    assert labels(catalog_all(4)) == {"Z4", "Z2^2"}
    assert labels(catalog_all(8)) == {"Z4", "Z8", "Z2^2", "Z4xZ2", "D8", "Q8", "Z2^3"}
    assert labels(catalog_all(16)) - labels(catalog_all(8)) == {
        "Z16", "Z8xZ2", "D16", "SD16", "Z8:Z2", "Q16", "Q8oZ4", "D8xZ2",
    }


def test_catalog_lists_each_group_once():
    groups = catalog_all(128)
    assert len(labels(groups)) == len(groups)
    assert all(g.order <= 128 for g in groups)
    assert {"Z2^2", "Q8", "Z2^3", "Q8oZ4"} <= labels(groups)


def _invariants(g):
    t = dense(g)
    return (g.order, len(involutions(g)), center(g).order, int(t.orders.max()))


def test_distinct_groups_have_distinct_invariants():
    by_order = {}
    for g in catalog_all(64):
        by_order.setdefault(g.order, []).append(_invariants(g))
    for vectors in by_order.values():
        assert len(set(vectors)) == len(vectors)


@pytest.mark.parametrize("g", catalog_all(64), ids=str)
def test_generator_relations_self_test(g):
    g._self_test()
    assert g.relations_hold(g.generators)


def test_descriptor_json_round_trip():
    d = FamilyDescriptor(Family.DIHEDRAL_TIMES_Z2, 3)
    text = json.dumps(d.to_json())
    assert text == '{"family": "DihedralTimesZ2", "ell": 3}'
    assert FamilyDescriptor.from_json(json.loads(text)) == d
    e8 = FamilyDescriptor(Family.ELEMENTARY_ABELIAN_8)
    assert FamilyDescriptor.from_json(e8.to_json()) == e8
    with pytest.raises(ParameterError):
        FamilyDescriptor.from_json({"family": "Nope"})


def test_feature_flag_examples():
    assert feature_flags(build("Dihedral", 3)) == FeatureFlags(True, True, True)
    assert feature_flags(build("Quaternion", 3)) == FeatureFlags(False, False, False)
    assert feature_flags(build("QuaternionCentralZ4", 2)) == FeatureFlags(True, False, False)


@pytest.mark.parametrize("g", [g for g in catalog_all(256) if g.ell <= 6], ids=str)
def test_computed_feature_flags_match_the_expected_table(g):
    assert feature_flags(g) == expected_flags(g.descriptor)


def test_feature_flags_fall_back_to_the_table_at_large_ell():
    g = build("DihedralSemiZ2", 12)
    assert feature_flags(g) == FeatureFlags(True, True, False)
