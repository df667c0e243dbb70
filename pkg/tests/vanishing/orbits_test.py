import pytest

from toric_codes.gf import field_create
from toric_codes.poly import GradedRing
from toric_codes.vanishing import BudgetExceeded, VanishingError
from toric_codes.vanishing.elimination import RationalMap
from toric_codes.vanishing.orbits import (
    Fingerprinter,
    count_cells,
    enumerate_orbit_points,
    group_by_support,
    group_orbit,
    region_points,
)
from toric_codes.vanishing.toric import construct_hirzebruch, construct_wps

GF3 = field_create(3)
GF5 = field_create(5)


@pytest.fixture
def line():
    return GradedRing(GF3, [[1, 1]])


@pytest.fixture
def hirzebruch3():
    toric = construct_hirzebruch(3)
    return toric, toric.ring(GF5)


def values(orbits):
    return [o.values for o in orbits]


def test_affine_orbits_of_the_line(line):
    orbits = enumerate_orbit_points(line)
    assert values(orbits) == [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2)]
    assert count_cells(orbits) == 4


def test_raw_points_are_not_merged(line):
    assert len(enumerate_orbit_points(line, raw=True)) == 9


def test_toric_region_drops_the_irrelevant_locus(line):
    orbits = enumerate_orbit_points(line, "toric", toric=construct_wps([1, 1]))
    assert values(orbits) == [(0, 1), (1, 0), (1, 1), (1, 2)]


def test_irrelevant_orbits_of_hirzebruch(hirzebruch3):
    toric, ring = hirzebruch3
    assert len(region_points(ring, "irrelevant", toric=toric)) == 49
    orbits = enumerate_orbit_points(ring, "irrelevant", toric=toric)
    assert len(orbits) == 10
    assert count_cells(orbits) == 7


def test_torus_over_gf2_is_one_orbit():
    toric = construct_hirzebruch(3)
    ring = toric.ring(field_create(2))
    orbits = enumerate_orbit_points(ring, "torus")
    assert values(orbits) == [(1, 1, 1, 1)]


def test_image_region(line):
    rational_map = RationalMap.identity(GF3, 2, "torus")
    orbits = enumerate_orbit_points(line, "image", rational_map=rational_map)
    assert values(orbits) == [(1, 1), (1, 2)]


@pytest.mark.parametrize(
    ("region", "kwargs", "message"),
    [
        ("toric", {}, "'toric' region needs toric data"),
        ("irrelevant", {}, "'irrelevant' region needs toric data"),
        ("image", {}, "'image' region needs a rational map"),
        (
            "image",
            {"rational_map": RationalMap.identity(GF3, 3)},
            "does not match the ring",
        ),
    ],
)
def test_region_needs_its_data(line, region, kwargs, message):
    with pytest.raises(VanishingError, match=message):
        region_points(line, region, **kwargs)


def test_point_budget(line):
    with pytest.raises(BudgetExceeded, match="9 candidate points, above the cap of 8"):
        enumerate_orbit_points(line, max_points=8)
    assert len(region_points(line, "torus", max_points=4)) == 4


def test_group_orbit(line):
    assert group_orbit(GF3.point([1, 0]), line.beta) == {
        GF3.point([1, 0]),
        GF3.point([2, 0]),
    }


@pytest.mark.parametrize("point", [[1, 2, 3, 4], [0, 2, 0, 3], [4, 0, 1, 0]])
def test_fingerprint_is_constant_on_orbits(hirzebruch3, point):
    _, ring = hirzebruch3
    fingerprint = Fingerprinter(ring.beta)
    orbit = group_orbit(GF5.point(point), ring.beta)
    assert len({fingerprint(p) for p in orbit}) == 1


def test_representatives_are_lexicographically_smallest(hirzebruch3):
    _, ring = hirzebruch3
    fingerprint = Fingerprinter(ring.beta)
    for orbit in enumerate_orbit_points(ring, "torus"):
        members = group_orbit(orbit.rep, ring.beta)
        assert orbit.values == min(tuple(v.value for v in p) for p in members)
        assert all(fingerprint(p) == orbit for p in members)


def test_group_by_support(line):
    cells = group_by_support(enumerate_orbit_points(line))
    assert {support: len(points) for support, points in cells.items()} == {
        (): 1,
        (1,): 1,
        (0,): 1,
        (0, 1): 2,
    }
