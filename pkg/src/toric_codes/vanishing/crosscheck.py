from toric_codes import utils
from toric_codes.groebner import Ideal, ideal_equal
from toric_codes.poly import GradedRing

from .cellular import CellularPipeline
from .elimination import EliminationPipeline
from .pipeline_base import PathMismatch, VanishingPipeline

logger = utils.get_logger(__name__)


class CrossCheckPipeline(VanishingPipeline):
    """Run the elimination and the cellular pipelines and compare their results.

    The cellular ideal is returned when both agree.

    Raises
    ------
    PathMismatch
        If the two ideals differ.

    """

    name = "both"

    def __init__(self) -> None:
        super().__init__()
        self.elimination = EliminationPipeline()
        self.cellular = CellularPipeline()

    def affine_ideal(self, ring: GradedRing) -> Ideal:
        by_cells = self.cellular.affine_ideal(ring)
        by_elimination = self.elimination.affine_ideal(ring)
        if not ideal_equal(by_cells, by_elimination):
            raise PathMismatch(
                f"Cellular {by_cells} and elimination {by_elimination} ideals differ."
            )
        logger.info("The elimination and cellular pipelines agree.")
        return by_cells
