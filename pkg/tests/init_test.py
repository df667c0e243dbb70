import inspect
import logging
import sys

import pytest


@pytest.fixture
def tc():
    pkg_name = "toric_codes"
    saved = sys.modules.pop(pkg_name, None)
    import importlib

    tc = importlib.import_module(pkg_name)
    yield tc
    if saved is not None:
        sys.modules[pkg_name] = saved


def test_config_is_not_instantiated_if_not_imported(tc):
    assert "config" not in tc.__dict__
    with pytest.raises(AttributeError):
        inspect.getattr_static(tc, "config")


def test_config_is_instantiated_when_imported(tc):
    config = tc.config
    assert tc.__dict__["config"] is config
    assert tc.config is config


def test_package_logger_follows_verbosity(tc):
    config = tc.config
    assert logging.getLevelName(tc.logger.level) == config.verbosity


def test_unknown_attribute_raises(tc):
    with pytest.raises(
        AttributeError,
        match="module 'toric_codes' has no attribute 'some_random_name",
    ):
        _ = tc.some_random_name
