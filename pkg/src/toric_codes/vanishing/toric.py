"""Toric data, the named constructions and their closed-form vanishing ideals.

The vanishing ideal of the F_q-points of a toric variety is the colon of the
vanishing ideal of the affine quotient by the irrelevant ideal B.
"""

import itertools
import math
import typing as t
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.gf import FieldElement, FiniteField
from toric_codes.groebner import Ideal, colon, ideal_equal, saturate
from toric_codes.poly import Exps, GradedRing, Polynomial

from .elimination import RationalMap, parameterized_vanishing_ideal
from .pipeline_base import BadWeights, SaturationMismatch, VanishingError

logger = utils.get_logger(__name__)

ToricKind = t.Literal["hirzebruch", "wps", "product", "custom"]


@dataclass(frozen=True)
class ToricData:
    """A grading matrix with the irrelevant ideal of a toric variety.

    Parameters
    ----------
    beta
        The grading matrix, row-major.
    irrelevant
        Squarefree exponent vectors of the monomial generators of B.
    kind
        The named construction, or "custom".
    params
        The parameters of the named construction (ℓ, the weights or the dimensions).

    """

    beta: tuple[tuple[int, ...], ...]
    irrelevant: tuple[Exps, ...]
    kind: ToricKind = "custom"
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        r = len(self.beta[0]) if self.beta else 0
        if not self.irrelevant:
            raise VanishingError("The irrelevant ideal needs at least one generator.")
        for exps in self.irrelevant:
            if len(exps) != r:
                raise VanishingError(f"Monomial {exps} does not have {r} exponents.")
            if any(e not in (0, 1) for e in exps):
                raise VanishingError(f"Irrelevant monomial {exps} is not squarefree.")

    @classmethod
    def custom(
        cls, beta: Sequence[Sequence[int]], irrelevant: Sequence[Sequence[int]]
    ) -> "ToricData":
        return cls(
            tuple(tuple(int(v) for v in row) for row in beta),
            tuple(tuple(int(e) for e in exps) for exps in irrelevant),
        )

    @property
    def name(self) -> str:
        if self.kind == "custom":
            return "custom"
        return f"{self.kind}({', '.join(str(p) for p in self.params)})"

    @property
    def r(self) -> int:
        return len(self.beta[0])

    def ring(self, field: FiniteField) -> GradedRing:
        return GradedRing(field, self.beta)

    def _check_ring(self, ring: GradedRing) -> None:
        if ring.beta != self.beta:
            raise VanishingError(f"{ring} is not graded by the matrix of {self.name}.")

    def irrelevant_ideal(self, ring: GradedRing) -> Ideal:
        self._check_ring(ring)
        return Ideal(ring, [ring.monomial(exps) for exps in self.irrelevant])

    def in_irrelevant_locus(self, point: Sequence[FieldElement | int]) -> bool:
        """Test whether every generator of B vanishes at `point`."""
        return all(
            any(e and not v for e, v in zip(exps, point, strict=True))
            for exps in self.irrelevant
        )

    def closed_form_affine(self, ring: GradedRing) -> Ideal | None:
        """Return the known closed form of the affine vanishing ideal, if any."""
        self._check_ring(ring)
        if self.kind == "hirzebruch":
            return hirzebruch_affine_ideal(ring, self.params[0])
        if self.kind == "wps":
            return wps_ideal(ring, self.params)
        if self.kind == "product":
            return product_projective_ideal(ring, self.params)
        return None

    def closed_form_toric(self, ring: GradedRing) -> Ideal | None:
        """Return the known closed form of the toric vanishing ideal, if any."""
        self._check_ring(ring)
        if self.kind == "hirzebruch":
            return hirzebruch_toric_ideal(ring, self.params[0])
        # the colon by B leaves these ideals unchanged
        return self.closed_form_affine(ring)


def construct_hirzebruch(ell: int) -> ToricData:
    """Return the Hirzebruch surface H_ℓ with B = <x_1, x_3> ∩ <x_2, x_4>."""
    if ell < 1:
        raise VanishingError(f"The Hirzebruch parameter must be positive, got {ell}.")
    return ToricData(
        beta=((1, 0, 1, ell), (0, 1, 0, 1)),
        irrelevant=((1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)),
        kind="hirzebruch",
        params=(ell,),
    )


def check_weights(weights: Sequence[int]) -> None:
    """Check that any r-1 of the weights are coprime.

    Raises
    ------
    BadWeights
        If there are fewer than two weights, a weight is not positive or the
        condition fails.

    """
    if len(weights) < 2:
        raise BadWeights("A weighted projective space needs at least two weights.")
    if any(w < 1 for w in weights):
        raise BadWeights(f"Weights must be positive, got {list(weights)}.")
    for i in range(len(weights)):
        rest = [w for j, w in enumerate(weights) if j != i]
        if math.gcd(*rest) != 1:
            raise BadWeights(
                f"The weights {list(weights)} without weight {i + 1} have gcd "
                f"{math.gcd(*rest)}."
            )


def construct_wps(weights: Sequence[int]) -> ToricData:
    """Return the weighted projective space P(w_1, ..., w_r) with B = <x_1..x_r>."""
    check_weights(weights)
    r = len(weights)
    irrelevant = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    return ToricData(
        beta=(tuple(int(w) for w in weights),),
        irrelevant=irrelevant,
        kind="wps",
        params=tuple(int(w) for w in weights),
    )


def _blocks(dims: Sequence[int]) -> list[range]:
    starts = list(itertools.accumulate((n + 1 for n in dims), initial=0))
    return [range(a, b) for a, b in itertools.pairwise(starts)]


def construct_product_projective(dims: Sequence[int]) -> ToricData:
    """Return P^{n_1} × ... × P^{n_k}, with B the intersection of the block ideals."""
    if not dims:
        raise VanishingError("A product of projective spaces needs a factor.")
    if any(n < 1 for n in dims):
        raise VanishingError(f"Dimensions must be positive, got {list(dims)}.")
    blocks = _blocks(dims)
    r = blocks[-1].stop
    beta = tuple(tuple(int(j in block) for j in range(r)) for block in blocks)
    irrelevant = tuple(
        tuple(int(j in choice) for j in range(r))
        for choice in itertools.product(*blocks)
    )
    return ToricData(beta, irrelevant, kind="product", params=tuple(dims))


def _x(ring: GradedRing, powers: Mapping[int, int]) -> Polynomial:
    """Return the monomial with the given powers of the 1-based variables."""
    exps = [0] * ring.r
    for i, e in powers.items():
        exps[i - 1] += e
    return ring.monomial(exps)


def hirzebruch_affine_ideal(ring: GradedRing, ell: int) -> Ideal:
    """Return <x_3 x_1 f_1, x_4 x_2 x_1 f_2, x_4 x_3 x_2 f_3>."""
    return Ideal(ring, _hirzebruch_generators(ring, ell))


def _hirzebruch_generators(ring: GradedRing, ell: int) -> list[Polynomial]:
    q = ring.field.order
    e = q - 1
    f1 = _x(ring, {3: e}) - _x(ring, {1: e})
    f2 = _x(ring, {4: e}) - _x(ring, {2: e, 1: e * ell})
    f3 = _x(ring, {4: e}) - _x(ring, {3: e * ell, 2: e})
    return [
        _x(ring, {3: 1, 1: 1}) * f1,
        _x(ring, {4: 1, 2: 1, 1: 1}) * f2,
        _x(ring, {4: 1, 3: 1, 2: 1}) * f3,
    ]


def hirzebruch_toric_ideal(ring: GradedRing, ell: int) -> Ideal:
    """Return the vanishing ideal of H_ℓ(F_q).

    It is <F_1, F_4> for ℓ > 1 and <F_1, F_2, F_3, F'_4> for ℓ = 1.
    """
    q = ring.field.order
    e = q - 1
    first, second, third = _hirzebruch_generators(ring, ell)
    if ell > 1:
        fourth = (
            _x(ring, {4: q, 2: 1})
            - _x(ring, {4: 1, 3: e * ell, 2: q})
            + _x(ring, {4: 1, 3: e, 2: q, 1: e * (ell - 1)})
            - _x(ring, {4: 1, 2: q, 1: e * ell})
        )
        return Ideal(ring, [first, fourth])
    fourth = (
        _x(ring, {4: 2 * q - 1, 2: 1})
        - _x(ring, {4: 1, 3: 2 * e, 2: 2 * q - 1})
        + _x(ring, {4: 1, 3: e, 2: 2 * q - 1, 1: e})
        - _x(ring, {4: 1, 2: 2 * q - 1, 1: 2 * e})
    )
    return Ideal(ring, [first, second, third, fourth])


def _pair_binomial(ring: GradedRing, i: int, j: int, a: int, b: int) -> Polynomial:
    """Return x_i x_j (x_i^a - x_j^b) for 1-based indices."""
    return _x(ring, {i: 1, j: 1}) * (_x(ring, {i: a}) - _x(ring, {j: b}))


def wps_ideal(ring: GradedRing, weights: Sequence[int]) -> Ideal | None:
    """Return the vanishing ideal of P(1, ..., 1, a, b), or None for other weights."""
    r = len(weights)
    if r < 2 or any(w != 1 for w in weights[: r - 2]):
        return None
    a, b = weights[-2], weights[-1]
    e = ring.field.order - 1
    gens = [
        _pair_binomial(ring, i, j, e, e)
        for i, j in itertools.combinations(range(1, r - 1), 2)
    ]
    for k in range(1, r - 1):
        gens.append(_pair_binomial(ring, k, r - 1, e * a, e))
        gens.append(_pair_binomial(ring, k, r, e * b, e))
    gens.append(_pair_binomial(ring, r - 1, r, e * b, e * a))
    return Ideal(ring, gens)


def product_projective_ideal(ring: GradedRing, dims: Sequence[int]) -> Ideal:
    """Return the binomials x_i x_j (x_i^{q-1} - x_j^{q-1}) within each block."""
    e = ring.field.order - 1
    return Ideal(
        ring,
        [
            _pair_binomial(ring, i + 1, j + 1, e, e)
            for block in _blocks(dims)
            for i, j in itertools.combinations(block, 2)
        ],
    )


def colon_matches_saturation(ideal: Ideal, irrelevant: Ideal) -> bool:
    """Compare I : B with the saturation of I by B."""
    matches = ideal_equal(colon(ideal, irrelevant), saturate(ideal, irrelevant))
    if not matches:
        logger.warning(f"The colon of {ideal} by {irrelevant} is not saturated.")
    return matches


def toric_vanishing_ideal(
    ring: GradedRing,
    toric: ToricData,
    *,
    affine: Ideal | None = None,
    path: str | None = None,
    strict: bool = False,
) -> Ideal:
    """Return the vanishing ideal of the F_q-points of a toric variety.

    Parameters
    ----------
    ring
        The ring graded by `toric.beta`.
    toric
        The toric data.
    affine
        A precomputed vanishing ideal of the affine quotient (or of a subset). When
        missing it is computed by the pipeline named `path` (default: config `path`).
    strict
        Also compute the saturation by B and compare.

    Raises
    ------
    SaturationMismatch
        If `strict` and the colon differs from the saturation.

    """
    if affine is None:
        from . import get_pipeline

        affine = get_pipeline(path or Config.config.path).affine_ideal(ring)
    irrelevant = toric.irrelevant_ideal(ring)
    result = colon(affine, irrelevant)
    logger.info(f"Toric ideal of {toric.name}: {len(result.gens)} generators.")
    if strict and not ideal_equal(result, saturate(affine, irrelevant)):
        raise SaturationMismatch(
            f"The colon by B differs from the saturation for {toric.name}."
        )
    return result


def parameterized_toric_ideal(
    ring: GradedRing, toric: ToricData, rational_map: RationalMap
) -> Ideal:
    """Return the vanishing ideal of the image of `rational_map` in the variety."""
    return toric_vanishing_ideal(
        ring, toric, affine=parameterized_vanishing_ideal(ring, rational_map)
    )


def named_construction(kind: ToricKind, params: tuple[int, ...]) -> ToricData:
    if kind == "hirzebruch":
        (ell,) = params
        return construct_hirzebruch(ell)
    if kind == "wps":
        return construct_wps(params)
    if kind == "product":
        return construct_product_projective(params)
    raise VanishingError(f"Unknown construction '{kind}'.")
