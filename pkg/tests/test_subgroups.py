import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupcover.catalog import make, scan_catalog
from groupcover.subgroups import (
    ElementSet,
    NotNormal,
    all_subgroups,
    are_isomorphic,
    find_isomorphism,
    generated_subgroup,
    has_quotient_isomorphic,
    lattice_of,
    quotient,
    setwise_product_size,
    subgroups_of_index,
)

from conftest import brute_force_subgroups

SMALL = ["C2xC2", "C8", "D4", "Q8", "C3xC3", "A4", "S3", "C2xC2xC2", "D6", "C4xC2xC2"]


def test_generated_subgroup_examples():
    s3 = make("S3")
    assert generated_subgroup(s3, []).order == 1
    for x in range(s3.order):
        assert generated_subgroup(s3, [x]).order == s3.element_orders[x]
    transposition = next(x for x in range(6) if s3.element_orders[x] == 2)
    three_cycle = next(x for x in range(6) if s3.element_orders[x] == 3)
    assert generated_subgroup(s3, ElementSet.of([transposition, three_cycle], 6)).order == 6


@pytest.mark.parametrize("name,count", [("C2xC2", 5), ("S3", 6), ("D4", 10), ("Q8", 6), ("S4", 30), ("A5", 59)])
def test_subgroup_counts(name, count):
    assert len(all_subgroups(make(name))) == count


def test_a4_maximal_subgroups():
    lat = all_subgroups(make("A4"))
    assert sorted(lat[i].order for i in lat.maximal_ids) == [3, 3, 3, 3, 4]


@pytest.mark.parametrize("name", SMALL)
def test_lattice_matches_brute_force(name):
    g = make(name)
    assert [s.mask for s in sorted(all_subgroups(g).subgroups, key=lambda s: s.mask)] == brute_force_subgroups(g)


@pytest.mark.parametrize("name", SMALL + ["S4", "A5", "F20"])
def test_lattice_invariants(name):
    g = make(name)
    lat = all_subgroups(g)
    masks = {s.mask for s in lat.subgroups}
    assert 1 in masks and (1 << g.order) - 1 in masks
    for s in lat.subgroups:
        assert g.order % s.order == 0
    for a, b in itertools.combinations(lat.subgroups, 2):
        assert a.mask & b.mask in masks
    proper = lat.subgroups[:-1]
    for i in lat.maximal_ids:
        assert not any(lat[i].mask & t.mask == lat[i].mask and t.mask != lat[i].mask for t in proper)
    non_max = set(range(len(proper))) - set(lat.maximal_ids)
    for i in non_max:
        assert any(lat[i].mask & t.mask == lat[i].mask and t.mask != lat[i].mask for t in proper)
    conj = g.conjugation
    for i, s in enumerate(lat.subgroups):
        normal = all({int(conj[x, h]) for h in s.elements} == set(s.elements) for x in range(g.order))
        assert normal == (i in lat.normal_ids)


def test_quotients():
    v = make("C2xC2")
    lat = lattice_of(v)
    assert quotient(v, lat[lat.whole_id]).order == 1
    for s in subgroups_of_index(v, lat, 2):
        assert are_isomorphic(quotient(v, s), make("C2"))
    a4 = make("A4")
    lat = lattice_of(a4)
    v4 = next(s for s in lat.subgroups if s.order == 4)
    assert are_isomorphic(quotient(a4, v4), make("C3"))
    c3 = next(s for s in lat.subgroups if s.order == 3)
    with pytest.raises(NotNormal):
        quotient(a4, c3)


@pytest.mark.parametrize("a,b,expected", [
    ("C4", "C2xC2", False),
    ("C6", "C2xC3", True),
    ("S3", "D3", True),
    ("D4", "Q8", False),
    ("C2xC4", "C4xC2", True),
    ("D6", "S3xC2", True),
    ("A4", "D6", False),
    ("C3xC3xC3", "C9xC3", False),
])
def test_isomorphism_examples(a, b, expected):
    assert are_isomorphic(make(a), make(b)) is expected


def test_isomorphism_is_a_table_preserving_bijection():
    g, h = make("S3xC2"), make("D6")
    phi = find_isomorphism(g, h)
    assert sorted(phi) == list(range(12))
    assert all(phi[g.mul(x, y)] == h.mul(phi[x], phi[y]) for x in range(12) for y in range(12))


def test_isomorphism_equivalence_on_catalog():
    cat = [e for e in scan_catalog(24) if e.order > 1]
    for e in cat:
        assert are_isomorphic(e.group, e.group)
    for a, b in itertools.combinations(cat[:40], 2):
        assert are_isomorphic(a.group, b.group) == are_isomorphic(b.group, a.group)


def test_has_quotient_isomorphic():
    v = make("C2xC2")
    assert has_quotient_isomorphic(v, lattice_of(v), v)
    c8 = make("C8")
    assert not has_quotient_isomorphic(c8, lattice_of(c8), v)
    d4 = make("D4")
    assert has_quotient_isomorphic(d4, lattice_of(d4), v)


def test_subgroups_of_index():
    v = make("C2xC2")
    assert len(subgroups_of_index(v, lattice_of(v), 2)) == 3
    s3 = make("S3")
    assert sorted(s.order for s in subgroups_of_index(s3, lattice_of(s3), 3)) == [2, 2, 2]
    for name in ("A4", "Q8", "C7"):
        g = make(name)
        whole = subgroups_of_index(g, lattice_of(g), 1)
        assert len(whole) == 1 and whole[0].order == g.order
    assert subgroups_of_index(s3, lattice_of(s3), 4) == []


def test_setwise_product_examples():
    v = make("C2xC2")
    lat = lattice_of(v)
    a, b = subgroups_of_index(v, lat, 2)[:2]
    assert setwise_product_size(v, a, a) == 2
    assert setwise_product_size(v, a, b) == 4
    s3 = make("S3")
    lat = lattice_of(s3)
    two = next(s for s in lat.subgroups if s.order == 2)
    three = next(s for s in lat.subgroups if s.order == 3)
    assert setwise_product_size(s3, two, three) == 6


@settings(max_examples=60, deadline=None)
@given(name=st.sampled_from(["S4", "D6", "A4", "Q8xC3", "D4xC2", "F20", "S3xS3"]), data=st.data())
def test_product_formula_property(name, data):
    g = make(name)
    lat = lattice_of(g)
    i = data.draw(st.integers(0, len(lat) - 1))
    j = data.draw(st.integers(0, len(lat) - 1))
    a, b = lat[i], lat[j]
    assert setwise_product_size(g, a, b) * (a.mask & b.mask).bit_count() == a.order * b.order
