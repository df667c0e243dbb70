import json

import pytest
from pydantic import ValidationError

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.jobs import (
    SCHEMA_VERSION,
    Job,
    JobError,
    Options,
    budgets,
    load_job,
    run_job,
)
from toric_codes.vanishing import BudgetExceeded

LINE = {"p": 3, "wps": [1, 1]}


def job(**kwargs):
    return {**LINE, **kwargs}


@pytest.mark.parametrize(
    ("data", "message"),
    [
        ({"p": 4, "wps": [1, 1], "task": "orbits"}, "p must be a prime, got 4"),
        ({"p": 3, "task": "orbits"}, "exactly one of beta, hirzebruch"),
        (
            {"p": 3, "wps": [1, 1], "hirzebruch": 2, "task": "orbits"},
            "exactly one of beta, hirzebruch",
        ),
        (job(task="code"), "task 'code' requires 'alpha'"),
        (job(task="cell_ideal"), "task 'cell_ideal' requires 'support'"),
        (job(task="point_ideal"), "task 'point_ideal' requires 'point'"),
        (job(task="param_ideal"), "task 'param_ideal' requires 'rational_map'"),
        (
            {"p": 3, "beta": [[1, 1]], "task": "toric_ideal"},
            "with a custom beta requires 'B'",
        ),
        (
            {"p": 3, "beta": [[1, 1]], "task": "orbits", "region": "irrelevant"},
            "region 'irrelevant' with a custom beta requires 'B'",
        ),
        (job(task="orbits", region="image"), "region 'image' requires 'map'"),
        (job(task="orbits", colour="blue"), "Extra inputs are not permitted"),
        (job(task="sing"), "Input should be 'param_ideal'"),
        (
            job(task="param_ideal", map={"f": ["y_1", "1"], "g": ["1"]}),
            "2 numerators but 1 denominators",
        ),
        (job(task="orbits", options={"max_pairs": 0}), "greater than or equal to 1"),
    ],
)
def test_invalid_jobs(data, message):
    with pytest.raises(ValidationError, match=message):
        Job.model_validate(data)


def test_aliases_are_accepted_and_echoed():
    model = Job.model_validate(
        {
            "p": 3,
            "beta": [[1, 1]],
            "B": ["x_1", "x_2"],
            "task": "toric_ideal",
            "map": {"f": ["y_1", "y_2"]},
        }
    )
    assert model.irrelevant == ["x_1", "x_2"]
    echo = model.echo()
    assert echo["B"] == ["x_1", "x_2"]
    assert echo["map"]["f"] == ["y_1", "y_2"]
    assert "alpha" not in echo
    with pytest.raises(JobError, match="custom grading"):
        model.construction()


def test_orbits_document():
    outcome = run_job(job(task="orbits"))
    document = outcome.document
    assert document["schema_version"] == SCHEMA_VERSION
    assert document["construction"] == "wps(1, 1)"
    assert document["field"] == {"p": 3, "k": 1, "q": 3, "modulus": [0, 1]}
    assert document["beta"] == [[1, 1]]
    assert document["orbit_count"] == 5
    assert document["cell_count"] == 4
    assert document["orbits"][1] == {"rep": [0, 1], "support": [2]}
    assert outcome.passed
    assert "timing" not in document


def test_same_job_gives_the_same_bytes():
    first = run_job(job(task="affine_ideal")).document
    second = run_job(job(task="affine_ideal")).document
    assert utils.canonical_json(first) == utils.canonical_json(second)
    assert len(first["job_hash"]) == Config.config.hash_len


def test_affine_ideal_document():
    document = run_job(job(task="affine_ideal")).document
    assert document["path"] == "cellular"
    assert document["generators"] == ["x_1^3*x_2-x_1*x_2^3"]
    assert document["groebner_basis"] == ["x_1^3*x_2-x_1*x_2^3"]
    assert document["verdicts"] == {
        "closed_form": True,
        "groebner_basis": True,
        "homogeneous": True,
        "soundness": True,
    }


def test_both_paths_are_compared():
    outcome = run_job(job(task="affine_ideal", options={"path": "both"}))
    assert outcome.document["verdicts"]["path_equivalence"]
    assert outcome.document["path"] == "both"


def test_toric_ideal_document():
    outcome = run_job(job(task="toric_ideal"))
    verdicts = outcome.document["verdicts"]
    assert verdicts["colon_is_saturated"]
    assert verdicts["closed_form"]
    assert outcome.passed


def test_toric_ideal_of_a_custom_grading():
    outcome = run_job(
        {"p": 3, "beta": [[1, 1]], "B": ["x_1", "x_2"], "task": "toric_ideal"}
    )
    assert outcome.document["construction"] == "custom"
    assert outcome.document["generators"] == ["x_1^3*x_2-x_1*x_2^3"]
    assert "closed_form" not in outcome.document["verdicts"]


def test_irrelevant_generators_must_be_monomials():
    with pytest.raises(JobError, match="'x_1\\+x_2' is not a monomial."):
        run_job({"p": 3, "beta": [[1, 1]], "B": ["x_1+x_2"], "task": "toric_ideal"})


def test_cell_and_point_ideals():
    cell = run_job({"p": 3, "hirzebruch": 2, "task": "cell_ideal", "support": [1, 3]})
    assert sorted(cell.document["generators"]) == ["x_1^2-x_3^2", "x_2", "x_4"]
    assert cell.passed
    point = run_job(
        {"p": 5, "hirzebruch": 3, "task": "point_ideal", "point": [2, 0, 1, 0]}
    )
    assert point.document["generators"] == ["x_1-2*x_3", "x_2", "x_4"]
    assert point.document["verdicts"]["soundness"]


def test_image_of_a_rational_map():
    outcome = run_job(
        job(task="param_ideal", map={"f": ["y_1", "y_2"], "domain": "torus"})
    )
    assert outcome.document["generators"] == ["x_1^2-x_2^2"]
    assert outcome.passed


def test_code_document():
    outcome = run_job(job(task="code", alpha=[1], region="toric"))
    code = outcome.document["code"]
    assert code == {"alpha": [1], "basis": ["x_1", "x_2"], "params": [4, 2, 3]}
    assert outcome.document["orbit_count"] == 4
    assert outcome.document["verdicts"] == {
        "rank_nullity": True,
        "row_weights": True,
        "singleton": True,
    }


def test_code_with_standard_basis():
    outcome = run_job(job(task="code", alpha=[4], region="toric", standard_basis=True))
    assert outcome.document["code"]["params"] == [4, 4, 1]
    assert outcome.document["verdicts"]["standard_basis_rank"]


def test_code_on_explicit_points():
    outcome = run_job(job(task="code", alpha=[1], points=[[1, 1], [1, 2]]))
    assert outcome.document["code"]["params"] == [2, 2, 1]
    assert "orbit_count" not in outcome.document
    assert outcome.orbits is None


def test_job_budgets_are_restored():
    section = Config.config.enumeration
    before = section.max_points
    with budgets(Options(max_points=3)):
        assert section.max_points == 3
    assert section.max_points == before
    with pytest.raises(BudgetExceeded):
        run_job(job(task="orbits", options={"max_points": 3}))
    assert section.max_points == before


def test_timing_is_reported_on_request(monkeypatch):
    monkeypatch.setattr(Config.config, "report_timing", True)
    document = run_job(job(task="orbits")).document
    assert document["timing"]["seconds"] >= 0


def test_load_job(tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job(task="orbits")))
    assert load_job(path).task == "orbits"
    assert run_job(str(path)).document["orbit_count"] == 5
    path.write_text("{not json")
    with pytest.raises(ValidationError):
        load_job(path)
