import pytest

from toric_codes.gf import field_create
from toric_codes.groebner import Ideal, ideal_equal
from toric_codes.poly import GradedRing
from toric_codes.vanishing import (
    CellularPipeline,
    CrossCheckPipeline,
    EliminationPipeline,
    PathMismatch,
    VanishingError,
    get_pipeline,
)
from toric_codes.vanishing.toric import (
    construct_hirzebruch,
    construct_product_projective,
    construct_wps,
)


@pytest.fixture
def line():
    return GradedRing(field_create(3), [[1, 1]])


@pytest.mark.parametrize(
    ("name", "cls"),
    [
        ("elimination", EliminationPipeline),
        ("cellular", CellularPipeline),
        ("both", CrossCheckPipeline),
    ],
)
def test_get_pipeline(name, cls):
    pipeline = get_pipeline(name)
    assert isinstance(pipeline, cls)
    assert pipeline.name == name


def test_unknown_pipeline():
    with pytest.raises(VanishingError, match="Unknown pipeline 'fastest'."):
        get_pipeline("fastest")


def test_both_paths_agree(line):
    ideal = CrossCheckPipeline().affine_ideal(line)
    assert [str(g) for g in ideal.gens] == ["x_1^3*x_2-x_1*x_2^3"]


def test_disagreement_is_reported(line, monkeypatch):
    pipeline = CrossCheckPipeline()
    monkeypatch.setattr(
        pipeline.cellular, "affine_ideal", lambda ring: Ideal(ring, ["x_1"])
    )
    with pytest.raises(PathMismatch, match="ideals differ"):
        pipeline.affine_ideal(line)


@pytest.mark.parametrize(
    ("toric", "p"),
    [
        (construct_hirzebruch(1), 2),
        (construct_hirzebruch(2), 3),
        (construct_wps([1, 1, 2]), 3),
        (construct_product_projective([1, 1]), 2),
    ],
    ids=["H1-GF2", "H2-GF3", "P112-GF3", "P1xP1-GF2"],
)
def test_paths_agree_beyond_the_line(toric, p):
    ring = toric.ring(field_create(p))
    by_elimination = EliminationPipeline().affine_ideal(ring)
    assert ideal_equal(by_elimination, CellularPipeline().affine_ideal(ring))
    assert ideal_equal(CrossCheckPipeline().affine_ideal(ring), by_elimination)
