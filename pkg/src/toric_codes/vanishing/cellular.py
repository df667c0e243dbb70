"""Vanishing ideals assembled cell by cell.

The affine space splits into cells of points with a common support ε. The orbits of a
cell are cut out by the variables outside ε together with the lattice ideal of
(q-1) times the kernel of the columns of β in ε.
"""

import itertools
from collections.abc import Iterable, Sequence

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.gf import FieldElement
from toric_codes.groebner import Ideal
from toric_codes.lattice import (
    PartialCharacter,
    Support,
    character_lattice_ideal,
    lattice_ideal,
    restricted_lattice,
)
from toric_codes.poly import GradedRing, Polynomial

from .pipeline_base import BudgetExceeded, VanishingError, VanishingPipeline

logger = utils.get_logger(__name__)


def _support_monomial(ring: GradedRing, eps: Support) -> list[int]:
    exps = [0] * ring.r
    for i in eps:
        exps[i] = 1
    return exps


def prune_divisible(gens: Iterable[Polynomial]) -> list[Polynomial]:
    """Drop every generator divisible by another one, keeping a sorted list."""
    unique = sorted(set(gens), key=str)
    kept = []
    for g in unique:
        if g.is_zero():
            continue
        if any(h != g and h.divides(g) for h in unique if not h.is_zero()):
            continue
        kept.append(g)
    return kept


def nonempty_supports(r: int) -> list[Support]:
    return [
        Support(combo)
        for size in range(1, r + 1)
        for combo in itertools.combinations(range(r), size)
    ]


def affine_cellular_ideal(ring: GradedRing, *, max_vars: int | None = None) -> Ideal:
    """Return the vanishing ideal of the affine quotient of F_q^r.

    It is the sum over nonempty supports ε of x^ε times the lattice ideal of (q-1)
    times the kernel of β(ε); generators divisible by other ones are dropped.

    Raises
    ------
    BudgetExceeded
        If r exceeds `max_vars` (default: `enumeration.max_cellular_vars`).

    """
    cap = max_vars or Config.config.enumeration.max_cellular_vars
    if ring.r > cap:
        raise BudgetExceeded(
            f"The cellular construction visits 2^{ring.r} supports; the cap is "
            f"{cap} variables."
        )
    scale = ring.field.order - 1
    gens: list[Polynomial] = []
    for eps in nonempty_supports(ring.r):
        lattice = restricted_lattice(ring.beta, eps)
        if lattice.is_zero():
            continue
        shift = _support_monomial(ring, eps)
        gens.extend(g.shift(shift) for g in lattice_ideal(lattice, scale, ring).gens)
    pruned = prune_divisible(gens)
    logger.info(
        f"Cellular ideal over {ring.field}: {len(gens)} generators, {len(pruned)} "
        "after pruning."
    )
    return Ideal(ring, pruned)


def _outside_variables(ring: GradedRing, eps: Support) -> list[Polynomial]:
    return [ring.var(i) for i in eps.complement(ring.r)]


def cell_ideal(ring: GradedRing, eps: Iterable[int]) -> Ideal:
    """Return the vanishing ideal of the orbits of all points with support `eps`."""
    support = Support(eps)
    if not support:
        raise VanishingError("The support of a cell must be nonempty.")
    lattice = restricted_lattice(ring.beta, support)
    binomials = lattice_ideal(lattice, ring.field.order - 1, ring).gens
    return Ideal(ring, [*_outside_variables(ring, support), *binomials])


def point_orbit_ideal(ring: GradedRing, point: Sequence[FieldElement | int]) -> Ideal:
    """Return the vanishing ideal of the orbit closure class of one point."""
    if len(point) != ring.r:
        raise VanishingError(f"Point of length {len(point)} for {ring.r} variables.")
    elements = ring.field.point(point)
    chi = PartialCharacter.of_point(elements, ring.beta)
    support = Support.of_point(elements)
    return Ideal(
        ring,
        [*_outside_variables(ring, support), *character_lattice_ideal(chi, ring).gens],
    )


class CellularPipeline(VanishingPipeline):
    """Compute the affine vanishing ideal from lattice ideals of the cells."""

    name = "cellular"

    def affine_ideal(self, ring: GradedRing) -> Ideal:
        return affine_cellular_ideal(ring)
