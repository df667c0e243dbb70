import logging

import pytest

import toric_codes.utils as u


def test_classproperty():
    class Test:
        @u.classproperty
        def func(cls) -> int:
            return 42

    assert Test.func == 42
    assert Test().func == 42


@pytest.mark.parametrize(
    ("name", "expected"),
    [
        ("toric_codes", "toric_codes"),
        ("toric_codes.groebner", "toric_codes.groebner"),
        ("benchmarks", "toric_codes.benchmarks"),
    ],
)
def test_get_logger_stays_in_package_hierarchy(name, expected):
    assert u.get_logger(name) is logging.getLogger(expected)


def test_budget_error_is_a_toric_error():
    assert issubclass(u.BudgetError, u.ToricError)


def test_get_hash_from_data_with_dict_returns_hash():
    assert len(u.get_hash_from_data({}, "sha256", -1)) == 64


@pytest.mark.parametrize("data", [[], 2, ""])
def test_get_hash_from_data_with_unsupported_data_raises(data):
    with pytest.raises(NotImplementedError):
        u.get_hash_from_data(data, "sha256", -1)


def test_get_hash_from_data_ignores_key_order():
    job = {"p": 5, "hirzebruch": 3, "task": "toric_ideal"}
    shuffled = {"task": "toric_ideal", "p": 5, "hirzebruch": 3}
    assert u.get_hash_from_data(job, "sha256", 16) == u.get_hash_from_data(
        shuffled, "sha256", 16
    )


@pytest.mark.parametrize(
    ("length", "expected"), [(-10, 64), (0, 64), (1, 1), (64, 64), (640, 64)]
)
def test_get_hash_from_data_length(length, expected):
    assert len(u.get_hash_from_data({}, "sha256", length)) == expected


def test_canonical_json_sorts_keys():
    text = u.canonical_json({"b": [1, 2], "a": "ℓ"}, indent=None)
    assert text == '{"a":"ℓ","b":[1,2]}'


def test_canonical_json_indents_by_default():
    assert u.canonical_json({"a": 1}) == '{\n  "a": 1\n}'
