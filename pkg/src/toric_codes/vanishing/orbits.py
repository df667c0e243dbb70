"""Orbit representatives of regions of F_q^r.

Two points lie in the same orbit class when they have the same support ε and the same
character values x^m on a fixed basis of the kernel of β(ε).
"""

import itertools
import math
import typing as t
from collections import defaultdict
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.gf import FieldElement, FiniteField
from toric_codes.lattice import (
    IntLattice,
    PartialCharacter,
    Support,
    restricted_lattice,
)
from toric_codes.poly import GradedRing

from .elimination import RationalMap
from .pipeline_base import BudgetExceeded, VanishingError
from .toric import ToricData

logger = utils.get_logger(__name__)

Region = t.Literal["affine", "toric", "torus", "irrelevant", "image"]
Point = tuple[FieldElement, ...]


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    """A representative of an orbit class with its invariants.

    Equality and hashing only look at the support and the fingerprint.
    """

    rep: Point
    support: Support
    fingerprint: tuple[FieldElement, ...]

    @property
    def key(self) -> tuple[Support, tuple[int, ...]]:
        return self.support, tuple(v.value for v in self.fingerprint)

    @property
    def values(self) -> tuple[int, ...]:
        """The encodings of the coordinates of the representative."""
        return tuple(v.value for v in self.rep)

    def __eq__(self, other: object, /) -> bool:
        if not isinstance(other, OrbitPoint):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.rep) + ")"


class Fingerprinter:
    """Build `OrbitPoint`s, caching one lattice basis per support.

    Parameters
    ----------
    beta
        The grading matrix.

    """

    def __init__(self, beta: Sequence[Sequence[int]]) -> None:
        self.beta = beta
        self._lattices: dict[Support, IntLattice] = {}

    def lattice(self, support: Support) -> IntLattice:
        if support not in self._lattices:
            self._lattices[support] = restricted_lattice(self.beta, support)
        return self._lattices[support]

    def __call__(self, point: Sequence[FieldElement]) -> OrbitPoint:
        rep = tuple(point)
        support = Support.of_point(rep)
        lattice = self.lattice(support)
        chi = PartialCharacter(rep, lattice)
        fingerprint = tuple(chi(m) for m in lattice.embedded(len(rep)))
        return OrbitPoint(rep, support, fingerprint)


def _region_size(field: FiniteField, r: int, region: Region, s: int) -> int:
    if region == "torus":
        return (field.order - 1) ** r
    if region == "image":
        return field.order**s
    return field.order**r


def _candidates(
    field: FiniteField,
    r: int,
    region: Region,
    toric: ToricData | None,
    rational_map: RationalMap | None,
) -> Iterator[Point]:
    elements = field.elements()
    if region == "image":
        assert rational_map is not None
        yield from rational_map.image()
        return
    if region == "torus":
        yield from itertools.product(elements[1:], repeat=r)
        return
    for point in itertools.product(elements, repeat=r):
        if region == "affine":
            yield point
            continue
        assert toric is not None
        if toric.in_irrelevant_locus(point) == (region == "irrelevant"):
            yield point


def region_points(
    ring: GradedRing,
    region: Region = "affine",
    *,
    toric: ToricData | None = None,
    rational_map: RationalMap | None = None,
    max_points: int | None = None,
) -> list[Point]:
    """Return every point of a region in lexicographic order of the encodings.

    Raises
    ------
    BudgetExceeded
        If the region has more candidate points than `max_points` (default:
        `enumeration.max_points`).
    VanishingError
        If the region needs toric data or a rational map that is missing.

    """
    if region in ("toric", "irrelevant") and toric is None:
        raise VanishingError(f"The '{region}' region needs toric data.")
    if region == "image":
        if rational_map is None:
            raise VanishingError("The 'image' region needs a rational map.")
        if rational_map.r != ring.r or rational_map.field != ring.field:
            raise VanishingError("The rational map does not match the ring.")
    cap = max_points or Config.config.enumeration.max_points
    s = rational_map.s if rational_map is not None else 0
    size = _region_size(ring.field, ring.r, region, s)
    if size > cap:
        raise BudgetExceeded(
            f"The {region} region has {size} candidate points, above the cap of {cap}."
        )
    return list(_candidates(ring.field, ring.r, region, toric, rational_map))


def enumerate_orbit_points(
    ring: GradedRing,
    region: Region = "affine",
    *,
    toric: ToricData | None = None,
    rational_map: RationalMap | None = None,
    raw: bool = False,
    max_points: int | None = None,
) -> list[OrbitPoint]:
    """Return one representative per orbit class of a region.

    Representatives are the lexicographically smallest members. With `raw` every
    point is returned, without merging.
    """
    points = region_points(
        ring, region, toric=toric, rational_map=rational_map, max_points=max_points
    )
    fingerprint = Fingerprinter(ring.beta)
    if raw:
        return [fingerprint(p) for p in points]
    orbits: dict[OrbitPoint, OrbitPoint] = {}
    for p in points:
        orbit = fingerprint(p)
        orbits.setdefault(orbit, orbit)
    logger.info(
        f"{len(points)} points of the {region} region form {len(orbits)} orbits."
    )
    return list(orbits.values())


def group_by_support(points: Iterable[OrbitPoint]) -> dict[Support, list[OrbitPoint]]:
    cells: dict[Support, list[OrbitPoint]] = defaultdict(list)
    for p in points:
        cells[p.support].append(p)
    return dict(cells)


def count_cells(points: Iterable[OrbitPoint]) -> int:
    """Return the number of distinct supports among the points."""
    return len(group_by_support(points))


def group_orbit(
    point: Sequence[FieldElement], beta: Sequence[Sequence[int]]
) -> set[Point]:
    """Return the orbit of `point` under (F_q^*)^d acting with weights β.

    An element λ scales coordinate j by λ^{β_j}.
    """
    field = point[0].field
    d = len(beta)
    columns = [tuple(row[j] for row in beta) for j in range(len(point))]
    orbit = set()
    for lam in itertools.product(field.elements()[1:], repeat=d):
        scaled = tuple(
            v * math.prod((x**e for x, e in zip(lam, col, strict=True)), start=field(1))
            for v, col in zip(point, columns, strict=True)
        )
        orbit.add(scaled)
    return orbit
