import math

import numpy as np
import pytest

from toric_codes.gf import field_create
from toric_codes.groebner import Ideal, ideal_equal
from toric_codes.lattice import (
    EmptySupport,
    IntLattice,
    LatticeError,
    PartialCharacter,
    RankDeficient,
    Support,
    ZeroCoordinateOnSupport,
    beta_annihilates,
    character_lattice_ideal,
    exgcd,
    hermite_normal_form,
    integer_kernel,
    kernel_basis,
    lattice_ideal,
    restrict,
    restricted_lattice,
)
from toric_codes.poly import GradedRing


def hirzebruch(ell):
    return ((1, 0, 1, ell), (0, 1, 0, 1))


@pytest.fixture
def ring():
    return GradedRing(field_create(5), hirzebruch(2))


@pytest.mark.parametrize(
    ("a", "b"), [(4, 6), (-4, 6), (6, -4), (0, 5), (7, 0), (1, 2), (12, 18)]
)
def test_exgcd(a, b):
    m = exgcd(a, b)
    assert m.dot(np.array([a, b], dtype=object)).tolist() == [math.gcd(a, b), 0]
    assert m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] == 1


def test_exgcd_of_zeros_is_identity():
    assert exgcd(0, 0).tolist() == [[1, 0], [0, 1]]


@pytest.mark.parametrize(
    ("rows", "expected"),
    [
        ([[1, -1], [2, 0]], ((1, 1), (0, 2))),
        ([[2, 0], [0, 3]], ((2, 0), (0, 3))),
        ([[2, 4], [3, 6]], ((1, 2),)),
        ([[0, 0], [0, 0]], ()),
    ],
)
def test_hermite_normal_form(rows, expected):
    assert hermite_normal_form(rows) == expected


@pytest.mark.parametrize("ell", [0, 1, 3])
def test_kernel_of_hirzebruch_grading(ell):
    rank, rows = integer_kernel(hirzebruch(ell), 4)
    assert rank == 2
    assert rows == ((1, 0, -1, 0), (0, 1, ell, -1))


def test_kernel_of_restricted_grading():
    lattice = restricted_lattice(hirzebruch(3), [0, 1, 3])
    assert lattice.ambient == (0, 1, 3)
    assert lattice.basis == ((3, 1, -1),)
    assert beta_annihilates(hirzebruch(3), lattice)


def test_restricted_lattice_can_be_zero():
    lattice = restricted_lattice(hirzebruch(3), [0, 1])
    assert lattice.is_zero()
    assert lattice.ambient == (0, 1)
    assert restricted_lattice(hirzebruch(3), []).is_zero()


def test_rank_deficient_matrix():
    with pytest.raises(RankDeficient, match="rank 1 < 2"):
        kernel_basis([[1, 2], [2, 4]])
    lattice = kernel_basis([[1, 2], [2, 4]], check_rank=False)
    assert lattice.basis == ((2, -1),)


def test_restrict():
    assert restrict(hirzebruch(3), [3, 0]) == ((1, 3), (0, 1))
    with pytest.raises(EmptySupport):
        restrict(hirzebruch(3), [])
    with pytest.raises(LatticeError, match="out of range"):
        restrict(hirzebruch(3), [4])


def test_support():
    assert Support([3, 1, 1]) == (1, 3)
    assert Support.of_point([0, 2, 0, 1]) == (1, 3)
    assert Support([1, 3]).complement(4) == (0, 2)


def test_lattice_membership():
    lattice = IntLattice.spanned_by([[2, 0], [0, 3]], [0, 1])
    assert lattice.contains([4, -3])
    assert not lattice.contains([1, 0])
    assert lattice.rank == 2
    with pytest.raises(LatticeError, match="Vector length"):
        lattice.contains([1, 2, 3])


def test_same_lattice_ignores_the_basis():
    first = IntLattice.spanned_by([[1, 1], [0, 2]], [0, 1])
    second = IntLattice.spanned_by([[1, -1], [2, 0]], [0, 1])
    assert first.same_lattice(second)
    assert not first.same_lattice(first.scaled(2))


def test_basis_rows_must_match_ambient():
    with pytest.raises(LatticeError, match="one entry per ambient variable"):
        IntLattice(((1, 2, 3),), (0, 1))


def test_embedded():
    lattice = IntLattice(((3, 1, -1),), (0, 1, 3))
    assert lattice.embedded(4) == ((3, 1, 0, -1),)


def test_lattice_ideal_of_projective_line():
    line = GradedRing(field_create(5), [[1, 1]])
    ideal = lattice_ideal(kernel_basis([[1, 1]]), 4, line)
    assert [str(g) for g in ideal.gens] == ["x_1^4-x_2^4"]


def test_lattice_ideal_is_saturated(ring):
    ideal = lattice_ideal(kernel_basis(hirzebruch(2)), 1, ring)
    assert ideal_equal(ideal, Ideal(ring, ["x_1-x_3", "x_2*x_3^2-x_4"]))


def random_unimodular(rng, n, steps=2):
    u = np.eye(n, dtype=int)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        u[i] += int(rng.choice([-1, 1])) * u[j]
    if rng.random() < 0.5:
        u = u[::-1]
    return u


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_lattice_ideal_does_not_depend_on_the_basis(ell):
    ring = GradedRing(field_create(3), hirzebruch(ell))
    lattice = kernel_basis(hirzebruch(ell))
    expected = lattice_ideal(lattice, 2, ring)
    rng = np.random.default_rng(ell)
    basis = np.array(lattice.basis, dtype=int)
    for _ in range(10):
        rows = (random_unimodular(rng, lattice.rank) @ basis).tolist()
        changed = IntLattice(tuple(tuple(row) for row in rows), lattice.ambient)
        assert changed.same_lattice(lattice)
        assert ideal_equal(lattice_ideal(changed, 2, ring), expected)


def test_lattice_ideal_needs_positive_scale(ring):
    with pytest.raises(LatticeError, match="The scale must be positive, got 0."):
        lattice_ideal(kernel_basis(hirzebruch(2)), 0, ring)


def test_lattice_ideal_of_zero_lattice(ring):
    assert lattice_ideal(IntLattice((), ()), 4, ring).is_zero()


def test_partial_character(ring):
    point = ring.field.point([2, 0, 1, 0])
    chi = PartialCharacter.of_point(point, hirzebruch(2))
    assert chi.lattice.ambient == (0, 2)
    assert chi([1, 0, -1, 0]) == ring.field(2)
    ideal = character_lattice_ideal(chi, ring)
    assert ideal_equal(ideal, Ideal(ring, ["x_1-2*x_3"]))


def test_character_needs_nonzero_support(ring):
    point = ring.field.point([2, 0, 1, 0])
    lattice = kernel_basis(hirzebruch(2))
    with pytest.raises(ZeroCoordinateOnSupport, match=r"Coordinates \[2, 4\]"):
        PartialCharacter(tuple(point), lattice)


def test_character_of_a_point_with_one_nonzero_coordinate(ring):
    point = ring.field.point([0, 3, 0, 0])
    chi = PartialCharacter.of_point(point, hirzebruch(2))
    assert chi.lattice.is_zero()
    assert character_lattice_ideal(chi, ring).is_zero()
