"""Vanishing ideals of rationally parameterized sets by elimination.

For a map t -> (f_1(t)/g_1(t), ..., f_r(t)/g_r(t)) the vanishing ideal of the orbits
of its image is J ∩ S, where J is generated by x_j g_j - f_j z^{β_j}, the field
equations of the parameters and w g_1⋯g_r - 1.
"""

import itertools
import re
import typing as t
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from toric_codes import utils
from toric_codes.gf import FieldElement, FiniteField
from toric_codes.groebner import Ideal, eliminate
from toric_codes.poly import GradedRing, Polynomial, PolynomialRing

from .pipeline_base import InvalidDenominator, VanishingError, VanishingPipeline

logger = utils.get_logger(__name__)

Domain = t.Literal["full_affine", "torus"]

_PARAMETER_PATTERN = re.compile(r"\by_(\d+)\b")


def parameter_ring(field: FiniteField, s: int) -> PolynomialRing:
    return PolynomialRing(field, [f"y_{i + 1}" for i in range(s)])


@dataclass(frozen=True)
class RationalMap:
    """A map F_q^s -> F_q^r given coordinate-wise by f_j / g_j.

    The points of the domain where a denominator vanishes are not in the image.
    With the `torus` domain the parameters range over the nonzero elements only.

    Raises
    ------
    InvalidDenominator
        If some g_j is the zero polynomial.

    """

    f: tuple[Polynomial, ...]
    g: tuple[Polynomial, ...]
    domain: Domain = "full_affine"

    def __post_init__(self) -> None:
        if len(self.f) != len(self.g):
            raise VanishingError(
                f"{len(self.f)} numerators and {len(self.g)} denominators."
            )
        if not self.f:
            raise VanishingError("A rational map needs at least one coordinate.")
        rings = {p.ring for p in (*self.f, *self.g)}
        if len(rings) != 1:
            raise VanishingError("Numerators and denominators must share one ring.")
        zeros = [j + 1 for j, g in enumerate(self.g) if g.is_zero()]
        if zeros:
            raise InvalidDenominator(f"Denominators {zeros} are zero.")

    @classmethod
    def from_texts(
        cls,
        field: FiniteField,
        f: Sequence[str],
        g: Sequence[str] | None = None,
        domain: Domain = "full_affine",
        s: int | None = None,
    ) -> "RationalMap":
        """Parse numerators and denominators in the parameters y_1..y_s.

        `s` defaults to the largest parameter index found in the texts; missing
        denominators are 1.
        """
        texts = [*f, *(g or [])]
        if s is None:
            found = [int(i) for text in texts for i in _PARAMETER_PATTERN.findall(text)]
            s = max(found, default=1)
        ring = parameter_ring(field, s)
        denominators = list(g) if g is not None else ["1"] * len(f)
        return cls(
            tuple(ring.parse(text) for text in f),
            tuple(ring.parse(text) for text in denominators),
            domain,
        )

    @classmethod
    def identity(
        cls, field: FiniteField, r: int, domain: Domain = "full_affine"
    ) -> "RationalMap":
        ring = parameter_ring(field, r)
        return cls(tuple(ring.gens()), (ring.one(),) * r, domain)

    @classmethod
    def constant_ones(cls, field: FiniteField, r: int) -> "RationalMap":
        ring = parameter_ring(field, 1)
        return cls((ring.one(),) * r, (ring.one(),) * r)

    @property
    def ring(self) -> PolynomialRing:
        return self.f[0].ring

    @property
    def s(self) -> int:
        return self.ring.nvars

    @property
    def r(self) -> int:
        return len(self.f)

    @property
    def field(self) -> FiniteField:
        return self.ring.field

    def has_trivial_denominators(self) -> bool:
        return all(g.is_constant() for g in self.g)

    def parameters(self) -> Iterator[tuple[FieldElement, ...]]:
        """Iterate the domain in lexicographic order."""
        values = self.field.elements()
        if self.domain == "torus":
            values = values[1:]
        return itertools.product(values, repeat=self.s)

    def evaluate(
        self, params: Sequence[FieldElement | int]
    ) -> tuple[FieldElement, ...] | None:
        """Return the image of a parameter vector, or None if a denominator vanishes."""
        denominators = [g.evaluate(params) for g in self.g]
        if not all(denominators):
            return None
        return tuple(
            f.evaluate(params) / d for f, d in zip(self.f, denominators, strict=True)
        )

    def image(self) -> list[tuple[FieldElement, ...]]:
        """Return the distinct image points, sorted by their encodings."""
        points = {p for x in self.parameters() if (p := self.evaluate(x)) is not None}
        return sorted(points, key=lambda p: tuple(v.value for v in p))


def _auxiliary_names(ring: GradedRing, s: int, with_w: bool) -> list[str]:
    names = [f"y_{i + 1}" for i in range(s)] + [f"z_{i + 1}" for i in range(ring.d)]
    if with_w:
        names.append("w")
    clashes = sorted(set(names) & set(ring.var_names))
    if clashes:
        raise VanishingError(f"Variable names {clashes} clash with the parameters.")
    return names


def parameterized_vanishing_ideal(ring: GradedRing, rational_map: RationalMap) -> Ideal:
    """Return the vanishing ideal of the orbits of the image of `rational_map`.

    The w generator is left out when every denominator is constant.

    Raises
    ------
    VanishingError
        If the map does not have one coordinate per ring variable or the fields
        differ.

    """
    if rational_map.r != ring.r:
        raise VanishingError(
            f"The map has {rational_map.r} coordinates for {ring.r} variables."
        )
    if rational_map.field != ring.field:
        raise VanishingError(f"The map is not defined over {ring.field}.")
    q = ring.field.order
    s = rational_map.s
    with_w = not rational_map.has_trivial_denominators()
    aux = _auxiliary_names(ring, s, with_w)
    big = PolynomialRing(ring.field, [*aux, *ring.var_names])
    ys = [big.var(f"y_{i + 1}") for i in range(s)]
    zs = [f"z_{i + 1}" for i in range(ring.d)]

    gens = []
    for j in range(ring.r):
        f = rational_map.f[j].substitute(big)
        g = rational_map.g[j].substitute(big)
        z_power = [0] * big.nvars
        for i, e in enumerate(ring.column(j)):
            z_power[big.index(zs[i])] = e
        gens.append(big.var(ring.var_names[j]) * g - f.shift(z_power))
    if rational_map.domain == "torus":
        gens.extend(y ** (q - 1) - 1 for y in ys)
    else:
        gens.extend(y**q - y for y in ys)
    if with_w:
        product = big.one()
        for g in rational_map.g:
            product = product * g.substitute(big)
        gens.append(big.var("w") * product - 1)

    logger.info(
        f"Parameterized ideal: {len(gens)} generators in {big.nvars} variables over "
        f"{ring.field}."
    )
    return eliminate(Ideal(big, gens), aux, ring)


class EliminationPipeline(VanishingPipeline):
    """Compute vanishing ideals by eliminating the parameters of a rational map.

    Parameters
    ----------
    rational_map
        The map whose image is used by `image_ideal`. The affine ideal always uses
        the identity map.

    """

    name = "elimination"

    def __init__(self, rational_map: RationalMap | None = None) -> None:
        super().__init__(rational_map=rational_map)
        self.rational_map = rational_map

    def affine_ideal(self, ring: GradedRing) -> Ideal:
        return parameterized_vanishing_ideal(
            ring, RationalMap.identity(ring.field, ring.r)
        )

    def image_ideal(self, ring: GradedRing) -> Ideal:
        if self.rational_map is None:
            raise VanishingError("The elimination pipeline was built without a map.")
        return parameterized_vanishing_ideal(ring, self.rational_map)
