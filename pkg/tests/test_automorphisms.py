import pytest
from hypothesis import given, settings, strategies as st

from twogroup_maps.automorphisms import (
    Automorphism,
    apply,
    aut_order,
    aut_order_formula,
    brute_force_aut,
    compose,
    explicit_aut,
    identity_automorphism,
    is_homomorphism,
    power,
    rho,
)
from twogroup_maps.catalog import Family, build, catalog_all
from twogroup_maps.engine import parse_element
from twogroup_maps.errors import GroupError, ScaleError

SMALL = catalog_all(64)


def w(g, word):
    return parse_element(g, word)


def aut(g, name):
    return explicit_aut(g).generator(name)


def test_explicit_dihedral_generators_and_order():
    g = build("Dihedral", 3)
    A = explicit_aut(g)
    assert A.order == 32
    assert [f.name for f in A.generators] == ["rho5", "rho-1", "eta"]


def test_degenerate_and_product_orders():
    assert explicit_aut(build("QuaternionCentralZ4", 2)).order == 48
    assert explicit_aut(build("DihedralTimesZ2", 3)).order == 256


def test_brute_force_examples():
    assert brute_force_aut(build("ElementaryAbelian8")).order == 168
    z8 = build("Cyclic", 3)
    A = brute_force_aut(z8)
    assert A.order == 4
    assert A.elements == {rho(z8, x) for x in (1, 3, 5, 7)}
    assert brute_force_aut(build("Quaternion", 2)).order == 24


def test_brute_force_is_gated():
    with pytest.raises(ScaleError):
        brute_force_aut(build("Dihedral", 6))


@pytest.mark.parametrize("g", SMALL, ids=str)
def test_explicit_generators_close_to_the_brute_force_group(g):
    assert explicit_aut(g, materialize=True).elements == brute_force_aut(g).elements


@pytest.mark.parametrize("g", [g for g in catalog_all(256) if g.ell <= 6], ids=str)
def test_closure_size_equals_stated_order(g):
    A = explicit_aut(g)
    assert len(A.materialize().elements) == A.order == aut_order(g)


@pytest.mark.parametrize("family", [f for f in Family if f is not Family.ELEMENTARY_ABELIAN_8])
def test_order_formula_up_to_ell_12(family):
    for ell in range(3, 13):
        g = build(family, ell)
        assert explicit_aut(g).order == aut_order_formula(g)


@pytest.mark.parametrize("g", SMALL, ids=str)
def test_every_generator_is_a_homomorphism_on_the_full_table(g):
    for f in explicit_aut(g).generators:
        assert g.relations_hold(f.images)
        assert is_homomorphism(f)


def test_apply_examples():
    z = build("Cyclic", 4)
    assert apply(rho(z, -1), w(z, "a")) == w(z, "a^-1")
    g = build("DihedralTimesZ2", 3)
    for u in g.elements():
        assert apply(identity_automorphism(g), u) == u
    assert apply(aut(g, "tau"), w(g, "a*b")) == w(g, "a*c*b")


def test_compose_examples():
    z = build("Cyclic", 5)
    assert compose(rho(z, 5), rho(z, -1)) == rho(z, -5)
    g = build("DihedralTimesZ2", 3)
    tau, sigma = aut(g, "tau"), aut(g, "sigma")
    ts = compose(tau, sigma)
    assert compose(ts, ts) == rho(g, 1 + 2 ** (g.ell - 1))
    d = build("Dihedral", 3)
    assert power(aut(d, "eta"), 2).images == (w(d, "a"), w(d, "a^2*b"))


def test_compose_applies_the_left_factor_first():
    g = build("Dihedral", 3)
    f, h = aut(g, "eta"), aut(g, "rho5")
    fh = compose(f, h)
    for u in g.elements():
        assert fh(u) == h(f(u))


def test_automorphism_constructor_rejects_non_automorphisms():
    g = build("Dihedral", 3)
    with pytest.raises(GroupError):
        Automorphism(g, (w(g, "a^2"), w(g, "b")))  # not surjective
    with pytest.raises(GroupError):
        Automorphism(g, (w(g, "a*b"), w(g, "b")))  # a*b has order 2


def test_equality_ignores_names():
    g = build("Dihedral", 3)
    assert Automorphism(g, g.generators, "x") == identity_automorphism(g)
    assert hash(Automorphism(g, g.generators, "x")) == hash(identity_automorphism(g))


@settings(max_examples=60)
@given(st.sampled_from([g for g in SMALL if not g.descriptor.is_degenerate]), st.data())
def test_composition_is_associative_with_identity(g, data):
    elems = sorted(explicit_aut(g, materialize=True).elements, key=lambda f: f.images)
    f, h, k = (data.draw(st.sampled_from(elems)) for _ in range(3))
    one = identity_automorphism(g)
    assert compose(compose(f, h), k) == compose(f, compose(h, k))
    assert compose(one, f) == f == compose(f, one)


@pytest.mark.parametrize("ell", [3, 4])
def test_d_semi_z2_never_sends_even_reflections_to_odd_ones(ell):
    g = build("DihedralSemiZ2", ell)
    for f in explicit_aut(g, materialize=True).elements:
        for i in range(0, g.n, 2):
            img = f((i, 1, 0))
            assert not (img[1:] == (1, 0) and img[0] % 2 == 1)


def test_d_times_z2_does_mix_even_and_odd_reflections():
    # eta sends b to a*b, so the class separation is specific to D:Z2
    g = build("DihedralTimesZ2", 3)
    assert aut(g, "eta")(w(g, "b")) == w(g, "a*b")


def test_relations_cited_for_structure_labels():
    g = build("DihedralSemiZ2", 4)
    tau, sigma = aut(g, "tau"), aut(g, "sigma")
    ts = compose(tau, sigma)
    a0 = w(g, f"a^{g.n // 2}")
    assert compose(ts, ts).images == (g.mul(a0, w(g, "a")), g.mul(a0, w(g, "b")), w(g, "c"))
    for name in ("rho5", "rho-1", "eta0"):
        x = aut(g, name)
        assert compose(compose(sigma, x), sigma) == x
