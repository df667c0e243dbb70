"""Evaluation codes on orbit representatives.

The generator matrix of the code of degree α has one row per monomial of a basis of
S_α (or of (S/I)_α) and one column per point. Matrices are `galois` field arrays of
the job field, whose integer encodings agree with `gf.FiniteField`.
"""

import functools
import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

import galois
import numpy as np

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.gf import FieldElement
from toric_codes.groebner import Ideal, quotient_graded_basis
from toric_codes.poly import GradedRing, Monomial, Polynomial
from toric_codes.vanishing import BudgetExceeded
from toric_codes.vanishing.orbits import OrbitPoint

logger = utils.get_logger(__name__)

Params = tuple[int, int, int | None]


class CodeError(utils.ToricError):
    """Errors occuring while building or analysing evaluation codes."""

    pass


class EmptyPointSet(CodeError): ...


def _as_point(point: OrbitPoint | Sequence[FieldElement | int]) -> tuple[int, ...]:
    if isinstance(point, OrbitPoint):
        return point.values
    return tuple(v.value if isinstance(v, FieldElement) else int(v) for v in point)


def evaluation_matrix(
    ring: GradedRing,
    monomials: Sequence[Monomial],
    points: Sequence[OrbitPoint | Sequence[FieldElement | int]],
) -> galois.FieldArray:
    """Return the |monomials| × |points| matrix of monomial values."""
    gf = ring.field.galois_field
    columns = gf([list(_as_point(p)) for p in points])
    matrix = gf.Ones((len(monomials), len(points)))
    for i, m in enumerate(monomials):
        for j, e in enumerate(m):
            if e:
                matrix[i] *= columns[:, j] ** e
    return matrix


def row_reduce(matrix: galois.FieldArray) -> tuple[galois.FieldArray, tuple[int, ...]]:
    """Return the reduced row echelon form without zero rows, with its pivots."""
    if matrix.size == 0:
        return matrix[:0], ()
    reduced = matrix.row_reduce()
    rows = reduced[np.any(reduced.view(np.ndarray), axis=1)]
    pivots = tuple(int(np.flatnonzero(row.view(np.ndarray))[0]) for row in rows)
    return rows, pivots


def rank_gf(matrix: galois.FieldArray) -> int:
    return len(row_reduce(matrix)[1])


def nullspace_gf(matrix: galois.FieldArray) -> galois.FieldArray:
    """Return a basis (as rows) of the vectors x with matrix @ x = 0."""
    gf = type(matrix)
    ncols = matrix.shape[1]
    reduced, pivots = row_reduce(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = gf.Zeros((len(free), ncols))
    for i, c in enumerate(free):
        basis[i, c] = 1
        for row, pivot in enumerate(pivots):
            basis[i, pivot] = -reduced[row, c]
    return basis


def _head_size(q: int, rank: int, chunk_rows: int) -> int:
    head = 1
    while head < rank and q ** (head + 1) <= chunk_rows:
        head += 1
    return min(head, rank)


def _weights(words: galois.FieldArray) -> np.ndarray:
    return np.count_nonzero(words.view(np.ndarray), axis=1)


def minimum_weight(
    basis: galois.FieldArray,
    *,
    max_codewords: int | None = None,
    chunk_rows: int | None = None,
) -> int:
    """Return the minimum weight of a nonzero word of the row space of `basis`.

    The rows must be independent. Words are enumerated exhaustively: the combinations
    of the first rows are tabulated once and every combination of the remaining rows
    is added to the whole table.

    Raises
    ------
    BudgetExceeded
        If q^K exceeds `max_codewords` (default: `codes.max_codewords`).
    CodeError
        If `basis` has no rows.

    """
    section = Config.config.codes
    max_codewords = max_codewords or section.max_codewords
    chunk_rows = chunk_rows or section.chunk_rows
    gf = type(basis)
    rank = basis.shape[0]
    if rank == 0:
        raise CodeError("The zero code has no minimum distance.")
    words_count = gf.order**rank
    if words_count > max_codewords:
        raise BudgetExceeded(
            f"{words_count} codewords to enumerate, above the cap of {max_codewords}."
        )
    head = _head_size(gf.order, rank, chunk_rows)
    messages = gf(list(itertools.product(range(gf.order), repeat=head)))
    table = messages @ basis[:head]
    best = int(_weights(table[1:]).min())
    tail = basis[head:]
    for message in itertools.product(range(gf.order), repeat=rank - head):
        if not any(message):
            continue
        offset = gf(list(message)) @ tail
        best = min(best, int(_weights(table + offset).min()))
        if best == 1:
            break
    logger.debug(f"Enumerated {words_count} codewords, minimum weight {best}.")
    return best


@dataclass
class EvaluationCode:
    """The evaluation code of a monomial basis on a list of points.

    Parameters
    ----------
    ring
        The graded ring the monomials live in.
    points
        The evaluation points, N of them.
    basis
        The monomials whose evaluations are the rows of `matrix`.
    matrix
        The |basis| × N generator matrix.

    """

    ring: GradedRing
    points: list[OrbitPoint | tuple[FieldElement, ...]]
    basis: list[Monomial]
    matrix: galois.FieldArray = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.points)

    @functools.cached_property
    def reduced(self) -> galois.FieldArray:
        """Independent rows spanning the code."""
        return row_reduce(self.matrix)[0]

    @property
    def dimension(self) -> int:
        return int(self.reduced.shape[0])

    @functools.cached_property
    def minimum_distance(self) -> int:
        return minimum_weight(self.reduced)

    @property
    def params(self) -> Params:
        """Return (N, K, δ), with δ None when it was not computed within budget."""
        delta: int | None = None
        if self.dimension:
            try:
                delta = self.minimum_distance
            except BudgetExceeded as e:
                logger.warning(f"Minimum distance skipped: {e}")
        return self.length, self.dimension, delta

    def row_weights(self) -> list[int]:
        return [int(w) for w in _weights(self.matrix)]

    def codeword(self, message: Sequence[int]) -> galois.FieldArray:
        gf = type(self.matrix)
        return gf(list(message)) @ self.matrix


def build_evaluation_code(
    ring: GradedRing,
    points: Sequence[OrbitPoint | Sequence[FieldElement | int]],
    alpha: Sequence[int],
    ideal: Ideal | None = None,
) -> EvaluationCode:
    """Evaluate a basis of degree `alpha` at the points.

    The basis is the standard monomials of `ideal` in degree α when an ideal is
    given, and all monomials of degree α otherwise.

    Raises
    ------
    EmptyPointSet
        If there are no points.

    """
    if not points:
        raise EmptyPointSet("An evaluation code needs at least one point.")
    basis = (
        quotient_graded_basis(ideal, alpha)
        if ideal is not None
        else ring.graded_monomial_basis(alpha)
    )
    matrix = evaluation_matrix(ring, basis, points)
    stored = [
        p if isinstance(p, OrbitPoint) else ring.field.point(p)
        for p in points
    ]
    code = EvaluationCode(ring, stored, list(basis), matrix)
    logger.info(
        f"Code of degree {tuple(alpha)}: {len(basis)} rows, {len(points)} points."
    )
    return code


def code_dimension(code: EvaluationCode) -> int:
    return code.dimension


def minimum_distance(code: EvaluationCode) -> int:
    """Return the exact minimum distance.

    Raises
    ------
    BudgetExceeded
        When the enumeration is above the `codes.max_codewords` cap.

    """
    return code.minimum_distance


def graded_vanishing_space(
    ring: GradedRing,
    points: Sequence[OrbitPoint | Sequence[FieldElement | int]],
    alpha: Sequence[int],
) -> list[Polynomial]:
    """Return a basis of the polynomials of degree α vanishing at every point.

    This is the kernel of the evaluation map on all of S_α, found by linear algebra
    only.
    """
    monomials = ring.graded_monomial_basis(alpha)
    if not monomials:
        return []
    if not points:
        return [ring.monomial(m) for m in monomials]
    matrix = evaluation_matrix(ring, monomials, points)
    kernel = nullspace_gf(matrix.T)
    return [
        ring.from_terms(
            {m: FieldElement(ring.field, int(c)) for m, c in zip(monomials, row) if c}
        )
        for row in kernel
    ]


def singleton_bound(params: Params) -> bool:
    n, k, delta = params
    return delta is None or k == 0 or delta <= n - k + 1


__all__ = [
    "CodeError",
    "EmptyPointSet",
    "EvaluationCode",
    "build_evaluation_code",
    "code_dimension",
    "evaluation_matrix",
    "graded_vanishing_space",
    "minimum_distance",
    "minimum_weight",
    "nullspace_gf",
    "rank_gf",
    "row_reduce",
    "singleton_bound",
]
