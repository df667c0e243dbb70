import typing as t
from abc import ABC, abstractmethod

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.groebner import Ideal, colon
from toric_codes.poly import GradedRing

if t.TYPE_CHECKING:
    from .toric import ToricData

logger = utils.get_logger(__name__)


class VanishingError(utils.ToricError):
    """Errors occuring while computing vanishing ideals."""

    pass


class InvalidDenominator(VanishingError): ...


class BadWeights(VanishingError): ...


class BudgetExceeded(VanishingError, utils.BudgetError): ...


class SaturationMismatch(VanishingError): ...


class PathMismatch(VanishingError): ...


class VanishingPipeline(ABC, Config):
    """Define the functionality common to all vanishing ideal pipelines.

    To define a concrete pipeline proceed as follows:
    1. Inherit from this class and set the `name` class attribute.
    2. Provide an implementation of `affine_ideal`.
    3. If you override the `__init__` method, do not forget to call `super()` and
       provide all the calling arguments as keyword arguments.

    Parameters
    ----------
    pipeline_kwargs
        All the arguments used when instantiating the pipeline. They are echoed in
        job results.

    """

    name: t.ClassVar[str]

    def __init__(self, **pipeline_kwargs: t.Any) -> None:
        self.pipeline_kwargs = pipeline_kwargs

    @abstractmethod
    def affine_ideal(self, ring: GradedRing) -> Ideal:
        """Compute the vanishing ideal of all orbits of F_q^r.

        Parameters
        ----------
        ring
            The graded ring; its field is F_q.

        Returns
        -------
        The β-graded vanishing ideal of the affine quotient.

        """
        raise NotImplementedError

    def toric_ideal(self, ring: GradedRing, toric: "ToricData") -> Ideal:
        """Compute the vanishing ideal of the toric variety as a colon by B."""
        affine = self.affine_ideal(ring)
        logger.info(f"{self.name}: taking the colon by {len(toric.irrelevant)} gens.")
        return colon(affine, toric.irrelevant_ideal(ring))

    def __repr__(self) -> str:
        kwargs = ", ".join(f"{k}={v!r}" for k, v in self.pipeline_kwargs.items())
        return f"{type(self).__name__}({kwargs})"
