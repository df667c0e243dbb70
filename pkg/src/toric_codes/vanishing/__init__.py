import typing as t

from .pipeline_base import (
    BadWeights,
    BudgetExceeded,
    InvalidDenominator,
    PathMismatch,
    SaturationMismatch,
    VanishingError,
    VanishingPipeline,
)

if t.TYPE_CHECKING:
    from .cellular import CellularPipeline
    from .crosscheck import CrossCheckPipeline
    from .elimination import EliminationPipeline


__all__ = [
    "BadWeights",
    "BudgetExceeded",
    "CellularPipeline",
    "CrossCheckPipeline",
    "EliminationPipeline",
    "InvalidDenominator",
    "PathMismatch",
    "SaturationMismatch",
    "VanishingError",
    "VanishingPipeline",
    "get_pipeline",
]


def get_pipeline(name: str) -> VanishingPipeline:
    """Return a fresh pipeline by its job path name.

    Raises
    ------
    VanishingError
        If no pipeline has that name.

    """
    if name == "elimination":
        from .elimination import EliminationPipeline

        return EliminationPipeline()
    if name == "cellular":
        from .cellular import CellularPipeline

        return CellularPipeline()
    if name == "both":
        from .crosscheck import CrossCheckPipeline

        return CrossCheckPipeline()
    raise VanishingError(f"Unknown pipeline '{name}'.")


def __getattr__(name: str) -> t.Any:
    """Lazy-load the pipelines."""
    if name == "CellularPipeline":
        from .cellular import CellularPipeline

        return CellularPipeline
    if name == "CrossCheckPipeline":
        from .crosscheck import CrossCheckPipeline

        return CrossCheckPipeline
    if name == "EliminationPipeline":
        from .elimination import EliminationPipeline

        return EliminationPipeline
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
