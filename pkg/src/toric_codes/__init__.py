import typing as t

from toric_codes import utils

if t.TYPE_CHECKING:
    from toric_codes._config.config import ToricConfig


__all__ = ["config", "logger"]


logger = utils.get_logger(__name__)
config: "ToricConfig"


def __getattr__(name: str) -> t.Any:
    """Lazy load the global config object to avoid side-effects."""
    global config
    if name == "config" and "config" not in globals():
        from toric_codes._config.config import ToricConfig
        from toric_codes._config.config_base import default_placeholders

        config = ToricConfig(placeholders=default_placeholders())
        logger.setLevel(config.verbosity)
        return config
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
