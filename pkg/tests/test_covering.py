import pytest

from groupcover.catalog import make, scan_catalog
from groupcover.covering import (
    SigmaValue,
    min_cover,
    sigma_all_proper,
    sigma_classifier,
    sigma_cross_check,
    sigma_exact,
)
from groupcover.subgroups import lattice_of

from conftest import brute_force_sigma


@pytest.mark.parametrize("name,sigma", [
    ("C2xC2", 3), ("S3", 4), ("C3xC3", 4), ("A4", 5),
    ("D5", 6), ("C5xC5", 6), ("F20", 6), ("Q8", 3), ("A5", 10),
])
def test_named_covering_numbers(name, sigma):
    assert sigma_exact(make(name)).sigma == sigma


def test_cyclic_is_uncoverable():
    res = sigma_exact(make("C6"))
    assert res.uncoverable and res.certificate == ()
    assert sigma_exact(make("C1")).uncoverable


@pytest.mark.parametrize("name", ["C2xC2", "A4", "F20", "D7", "S4", "C4xC2xC2"])
def test_certificate_covers_group(name):
    g = make(name)
    lat = lattice_of(g)
    res = sigma_exact(g, lat)
    assert len(res.certificate) == res.sigma
    assert all(i in lat.maximal_ids for i in res.certificate)
    union = 0
    for i in res.certificate:
        union |= lat[i].mask
    assert union == (1 << g.order) - 1


def test_klein_certificate_is_its_three_involution_subgroups():
    g = make("C2xC2")
    lat = lattice_of(g)
    assert [lat[i].order for i in sigma_exact(g, lat).certificate] == [2, 2, 2]


@pytest.mark.parametrize("name", ["C2xC2", "S3", "D4", "Q8", "A4", "C3xC3", "D5", "C2xC2xC2", "D6"])
def test_brute_force_sigma_oracle(name):
    g = make(name)
    lat = lattice_of(g)
    assert sigma_exact(g, lat).sigma == brute_force_sigma(g, lat) == sigma_all_proper(g, lat).sigma


def test_min_cover_small_cases():
    assert min_cover(0b111, [0b011, 0b110]) is not None
    assert len(min_cover(0b1111, [0b0011, 0b1100, 0b0110, 0b1001])) == 2
    assert min_cover(0b111, [0b011]) is None


@pytest.mark.parametrize("name,value", [
    ("C2xC2", SigmaValue.THREE), ("S3", SigmaValue.FOUR), ("C3xC3", SigmaValue.FOUR),
    ("A4", SigmaValue.FIVE), ("D5", SigmaValue.SIX), ("C5xC5", SigmaValue.SIX),
    ("F20", SigmaValue.SIX), ("C9", SigmaValue.UNCOVERABLE), ("D7", SigmaValue.OTHER_OR_UNKNOWN),
])
def test_classifier(name, value):
    cls = sigma_classifier(make(name))
    assert cls.value is value
    assert not cls.disagreements
    for index_form, quotient_form in cls.checks.values():
        assert index_form is None or index_form == quotient_form


def test_cross_check_examples():
    assert sigma_cross_check(make("C2xC2"))
    g = make("C5xC5")
    assert sigma_cross_check(g)
    assert sigma_exact(g).sigma == sigma_classifier(g).sigma == 6


def test_sigma_never_one_two_or_seven_up_to_60():
    for e in scan_catalog(60):
        s = sigma_exact(e.group).sigma
        assert s not in (1, 2, 7), e.name


def test_all_proper_search_agrees_up_to_24():
    for e in scan_catalog(24):
        lat = lattice_of(e.group)
        assert sigma_exact(e.group, lat).sigma == sigma_all_proper(e.group, lat).sigma, e.name
