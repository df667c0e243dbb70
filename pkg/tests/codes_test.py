import json
from pathlib import Path

import numpy as np
import pytest

from toric_codes._config.config_base import Config
from toric_codes.codes import (
    CodeError,
    EmptyPointSet,
    build_evaluation_code,
    code_dimension,
    evaluation_matrix,
    graded_vanishing_space,
    minimum_distance,
    minimum_weight,
    nullspace_gf,
    rank_gf,
    row_reduce,
    singleton_bound,
)
from toric_codes.gf import field_create
from toric_codes.groebner import Ideal, quotient_graded_basis
from toric_codes.vanishing import BudgetExceeded
from toric_codes.vanishing.elimination import RationalMap
from toric_codes.vanishing.orbits import enumerate_orbit_points
from toric_codes.vanishing.toric import (
    construct_hirzebruch,
    construct_wps,
    hirzebruch_affine_ideal,
    hirzebruch_toric_ideal,
)

GOLDENS = Path(__file__).parents[1] / "src" / "toric_codes" / "goldens"


@pytest.fixture
def line():
    toric = construct_wps([1, 1])
    ring = toric.ring(field_create(3))
    return ring, enumerate_orbit_points(ring, "toric", toric=toric)


@pytest.mark.parametrize(
    ("alpha", "params"),
    [((1,), (4, 2, 3)), ((2,), (4, 3, 2)), ((3,), (4, 4, 1)), ((5,), (4, 4, 1))],
)
def test_codes_on_the_projective_line(line, alpha, params):
    ring, points = line
    code = build_evaluation_code(ring, points, alpha)
    assert code.params == params
    assert code_dimension(code) == params[1]
    assert minimum_distance(code) == params[2]
    assert singleton_bound(code.params)


def test_evaluation_matrix(line):
    ring, points = line
    code = build_evaluation_code(ring, points, (1,))
    assert [m.format(ring.var_names) for m in code.basis] == ["x_1", "x_2"]
    assert code.matrix.tolist() == [[0, 1, 1, 1], [1, 0, 1, 2]]
    assert code.row_weights() == [3, 3]
    assert code.codeword([1, 1]).tolist() == [1, 1, 2, 0]


def test_points_may_be_plain_encodings(line):
    ring, points = line
    code = build_evaluation_code(ring, [p.values for p in points], (1,))
    assert code.params == (4, 2, 3)
    assert code.length == 4


def test_standard_monomials_of_the_vanishing_ideal(line):
    ring, points = line
    ideal = Ideal(ring, ["x_1^3*x_2-x_1*x_2^3"])
    code = build_evaluation_code(ring, points, (4,), ideal)
    assert len(code.basis) == 4
    assert code.params == (4, 4, 1)


def test_graded_vanishing_space(line):
    ring, points = line
    kernel = graded_vanishing_space(ring, points, (4,))
    assert len(kernel) == 1
    assert Ideal(ring, ["x_1^3*x_2-x_1*x_2^3"]).contains(kernel[0])
    assert graded_vanishing_space(ring, points, (2,)) == []
    assert len(graded_vanishing_space(ring, [], (2,))) == 3


def test_no_points(line):
    ring, _ = line
    with pytest.raises(EmptyPointSet, match="at least one point"):
        build_evaluation_code(ring, [], (1,))


def test_linear_algebra_over_gf5():
    gf = field_create(5).galois_field
    matrix = gf([[1, 2, 3], [2, 4, 0]])
    reduced, pivots = row_reduce(matrix)
    assert pivots == (0, 2)
    assert rank_gf(matrix) == 2
    kernel = nullspace_gf(matrix)
    assert kernel.shape == (1, 3)
    assert not np.any((matrix @ kernel.T).view(np.ndarray))
    assert rank_gf(gf.Zeros((2, 3))) == 0


@pytest.mark.parametrize("chunk_rows", [1, 9, 10**6])
def test_minimum_weight_does_not_depend_on_chunking(line, chunk_rows):
    ring, points = line
    code = build_evaluation_code(ring, points, (2,))
    assert minimum_weight(code.reduced, chunk_rows=chunk_rows) == 2


def test_codeword_budget(line, monkeypatch):
    ring, points = line
    code = build_evaluation_code(ring, points, (1,))
    with pytest.raises(BudgetExceeded, match="9 codewords to enumerate"):
        minimum_weight(code.reduced, max_codewords=8)
    monkeypatch.setattr(Config.config.codes, "max_codewords", 8)
    assert code.params == (4, 2, None)


def test_zero_code_has_no_distance(line):
    ring, points = line
    gf = ring.field.galois_field
    with pytest.raises(CodeError, match="zero code"):
        minimum_weight(gf.Zeros((0, 4)))


@pytest.mark.parametrize(
    ("params", "expected"),
    [((4, 2, 3), True), ((4, 2, 4), False), ((4, 0, None), True), ((4, 2, None), True)],
)
def test_singleton_bound(params, expected):
    assert singleton_bound(params) is expected


@pytest.mark.parametrize(
    ("golden", "params"),
    [
        ("hirzebruch3_subset_px_code", (36, 2, 30)),
        ("hirzebruch3_subset_py_code", (39, 2, 32)),
    ],
)
def test_codes_on_hirzebruch_subsets(golden, params):
    points = json.loads((GOLDENS / f"{golden}.json").read_text())["job"]["points"]
    ring = construct_hirzebruch(3).ring(field_create(5))
    code = build_evaluation_code(ring, points, (1, 0))
    assert code.params == params


def test_evaluation_matrix_of_powers(line):
    ring, points = line
    monomials = ring.graded_monomial_basis((2,))
    matrix = evaluation_matrix(ring, monomials, points)
    names = [m.format(ring.var_names) for m in monomials]
    assert names == ["x_1^2", "x_1*x_2", "x_2^2"]
    assert matrix.tolist() == [[0, 1, 1, 1], [0, 0, 1, 2], [1, 0, 1, 1]]


def assert_gb_and_nullspace_agree(ideal, points, alpha):
    ring = ideal.ring
    standard = quotient_graded_basis(ideal, alpha)
    kernel = graded_vanishing_space(ring, points, alpha)
    assert len(standard) + len(kernel) == len(ring.graded_monomial_basis(alpha))
    assert all(ideal.contains(f) for f in kernel)


HIRZEBRUCH_DEGREES = [(1, 0), (2, 1), (3, 1), (4, 2), (6, 3)]


@pytest.mark.parametrize("alpha", HIRZEBRUCH_DEGREES)
@pytest.mark.parametrize("region", ["affine", "toric"])
def test_hirzebruch_ideals_match_the_nullspace(region, alpha):
    toric = construct_hirzebruch(2)
    ring = toric.ring(field_create(3))
    points = enumerate_orbit_points(ring, region, toric=toric)
    if region == "affine":
        ideal = hirzebruch_affine_ideal(ring, 2)
    else:
        ideal = hirzebruch_toric_ideal(ring, 2)
    assert_gb_and_nullspace_agree(ideal, points, alpha)


@pytest.mark.parametrize(
    ("alpha", "standard"), [((1, 0), 2), ((2, 1), 4), ((4, 0), 4), ((4, 2), 8)]
)
def test_rational_map_ideal_matches_the_nullspace(alpha, standard):
    gf3 = field_create(3)
    rational_map = RationalMap.from_texts(
        gf3, ["1+y_1", "1", "y_3", "1+y_3"], ["y_2", "1", "1", "y_4"]
    )
    ring = construct_hirzebruch(2).ring(gf3)
    points = enumerate_orbit_points(ring, "image", rational_map=rational_map)
    assert len(points) == 12
    ideal = Ideal(
        ring,
        [
            "x_1^7*x_2^2-x_1*x_2^2*x_3^6-x_1^3*x_4^2+x_1*x_3^2*x_4^2",
            "x_1^3*x_3-x_1*x_3^3",
            "x_2^2*x_3^5*x_4-x_3*x_4^3",
            "x_1^5*x_2^2*x_4-x_1*x_4^3",
        ],
    )
    assert len(quotient_graded_basis(ideal, alpha)) == standard
    assert_gb_and_nullspace_agree(ideal, points, alpha)
