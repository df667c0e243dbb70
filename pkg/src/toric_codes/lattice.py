"""Integer lattices, lattice ideals and partial-character ideals.

Integer matrices are numpy arrays of dtype object so that entries are Python
integers and never overflow.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from toric_codes import utils
from toric_codes.gf import FieldElement
from toric_codes.groebner import Ideal, saturate
from toric_codes.poly import Polynomial, PolynomialRing

logger = utils.get_logger(__name__)

IntRows = tuple[tuple[int, ...], ...]
ObjectMatrix = npt.NDArray[np.object_]


class LatticeError(utils.ToricError): ...


class RankDeficient(LatticeError): ...


class EmptySupport(LatticeError): ...


class ZeroCoordinateOnSupport(LatticeError): ...


def exgcd(a: int, b: int) -> ObjectMatrix:
    """Return a 2x2 integer matrix M of determinant 1 with M @ [a, b] = [g, 0].

    g = gcd(a, b) >= 0. When both entries are zero M is the identity.
    """
    if a == 0 and b == 0:
        return np.eye(2, dtype=object)
    old_r, r = a, b
    old_s, s = 1, 0
    old_u, u = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_u, u = u, old_u - q * u
    if old_r < 0:
        old_r, old_s, old_u = -old_r, -old_s, -old_u
    g = old_r
    return np.array([[old_s, old_u], [-b // g, a // g]], dtype=object)


def as_matrix(rows: Sequence[Sequence[int]], ncols: int | None = None) -> ObjectMatrix:
    data = [[int(v) for v in row] for row in rows]
    width = ncols if ncols is not None else (len(data[0]) if data else 0)
    matrix = np.zeros((len(data), width), dtype=object)
    for i, row in enumerate(data):
        if len(row) != width:
            raise LatticeError("Integer matrices must be rectangular.")
        matrix[i, :] = row
    return matrix


def _to_rows(matrix: ObjectMatrix) -> IntRows:
    return tuple(tuple(int(v) for v in row) for row in matrix)


def hermite_normal_form(
    rows: Sequence[Sequence[int]], ncols: int | None = None
) -> IntRows:
    """Return the row Hermite normal form of the lattice spanned by `rows`.

    Zero rows are dropped. Pivots are positive and the entries above a pivot lie in
    [0, pivot), so the result only depends on the lattice.
    """
    matrix = as_matrix(rows, ncols)
    nrows, width = matrix.shape
    top = 0
    for col in range(width):
        if top == nrows:
            break
        for i in range(top + 1, nrows):
            if matrix[i, col] == 0:
                continue
            m = exgcd(matrix[top, col], matrix[i, col])
            matrix[[top, i]] = m.dot(matrix[[top, i]])
        pivot = matrix[top, col]
        if pivot == 0:
            continue
        if pivot < 0:
            matrix[top] = -matrix[top]
            pivot = -pivot
        for i in range(top):
            matrix[i] = matrix[i] - (matrix[i, col] // pivot) * matrix[top]
        top += 1
    return _to_rows(matrix[:top])


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, IntRows]:
    """Return the rank of a matrix and a basis of its integer kernel.

    Unimodular column operations bring the matrix into column echelon form; the
    transformation columns matching the zero columns span the saturated kernel.
    """
    matrix = as_matrix(rows, ncols)
    nrows = matrix.shape[0]
    transform = np.eye(ncols, dtype=object)
    pivot = 0
    for row in range(nrows):
        if pivot == ncols:
            break
        for j in range(pivot + 1, ncols):
            if matrix[row, j] == 0:
                continue
            m = exgcd(matrix[row, pivot], matrix[row, j])
            matrix[:, [pivot, j]] = matrix[:, [pivot, j]].dot(m.T)
            transform[:, [pivot, j]] = transform[:, [pivot, j]].dot(m.T)
        if matrix[row, pivot] != 0:
            pivot += 1
    kernel = transform[:, pivot:].T
    return pivot, hermite_normal_form(_to_rows(kernel), ncols)


class Support(tuple[int, ...]):
    """A set of variable indices, stored sorted and without duplicates."""

    __slots__ = ()

    def __new__(cls, indices: Iterable[int]) -> "Support":
        return super().__new__(cls, sorted(set(indices)))

    @classmethod
    def of_point(cls, point: Sequence[int | FieldElement]) -> "Support":
        return cls(i for i, v in enumerate(point) if v)

    def complement(self, r: int) -> "Support":
        return Support(i for i in range(r) if i not in self)


@dataclass(frozen=True)
class IntLattice:
    """A lattice spanned by the rows of `basis` inside Z^ambient.

    `ambient` lists the variable indices the coordinates refer to (all r variables
    or a support).
    """

    basis: IntRows
    ambient: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(len(row) != len(self.ambient) for row in self.basis):
            raise LatticeError("Basis rows must have one entry per ambient variable.")

    @classmethod
    def spanned_by(
        cls, rows: Sequence[Sequence[int]], ambient: Sequence[int]
    ) -> "IntLattice":
        """Build a lattice from generators, keeping its Hermite normal form basis."""
        return cls(hermite_normal_form(rows, len(ambient)), tuple(ambient))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def hnf(self) -> IntRows:
        return hermite_normal_form(self.basis, len(self.ambient))

    def contains(self, vector: Sequence[int]) -> bool:
        """Test membership by reduction against the Hermite normal form."""
        v = [int(x) for x in vector]
        if len(v) != len(self.ambient):
            raise LatticeError("Vector length does not match the ambient variables.")
        for row in self.hnf():
            col = next(i for i, x in enumerate(row) if x)
            quotient, remainder = divmod(v[col], row[col])
            if remainder:
                return False
            v = [a - quotient * b for a, b in zip(v, row, strict=True)]
        return not any(v)

    def same_lattice(self, other: "IntLattice") -> bool:
        return self.ambient == other.ambient and self.hnf() == other.hnf()

    def scaled(self, factor: int) -> "IntLattice":
        return IntLattice(
            tuple(tuple(factor * v for v in row) for row in self.basis), self.ambient
        )

    def embedded(self, r: int) -> IntRows:
        """Return the basis as vectors of Z^r, zero outside the ambient variables."""
        vectors = []
        for row in self.basis:
            full = [0] * r
            for i, v in zip(self.ambient, row, strict=True):
                full[i] = v
            vectors.append(tuple(full))
        return tuple(vectors)


def restrict(beta: Sequence[Sequence[int]], eps: Iterable[int]) -> IntRows:
    """Return the columns of `beta` indexed by the support `eps`."""
    support = Support(eps)
    if not support:
        raise EmptySupport("The support must be nonempty.")
    r = len(beta[0])
    if support[-1] >= r or support[0] < 0:
        raise LatticeError(f"Support {tuple(support)} is out of range for {r} columns.")
    return tuple(tuple(int(row[j]) for j in support) for row in beta)


def kernel_basis(
    matrix: Sequence[Sequence[int]],
    ambient: Sequence[int] | None = None,
    *,
    check_rank: bool = True,
) -> IntLattice:
    """Return the saturated integer kernel of a d×r matrix.

    Raises
    ------
    RankDeficient
        If `check_rank` and the matrix rank is below its number of rows.

    """
    ncols = len(matrix[0])
    rank, rows = integer_kernel(matrix, ncols)
    if check_rank and rank < len(matrix):
        raise RankDeficient(f"The matrix has rank {rank} < {len(matrix)}.")
    return IntLattice(rows, tuple(range(ncols) if ambient is None else ambient))


def restricted_lattice(beta: Sequence[Sequence[int]], eps: Iterable[int]) -> IntLattice:
    """Return the kernel of the columns of `beta` indexed by `eps`."""
    support = Support(eps)
    if not support:
        return IntLattice((), ())
    return kernel_basis(restrict(beta, support), support, check_rank=False)


def _oriented(
    ring: PolynomialRing, vector: Sequence[int]
) -> tuple[list[int], list[int]]:
    """Split a vector into (m+, m-), oriented so that x^{m+} is lex-greater."""
    plus = [max(v, 0) for v in vector]
    minus = [max(-v, 0) for v in vector]
    key = ring.print_order.key
    if key(plus) < key(minus):
        plus, minus = minus, plus
    return plus, minus


def binomial(
    ring: PolynomialRing, vector: Sequence[int], coeff: int | FieldElement = 1
) -> Polynomial:
    """Return x^{m+} - coeff * x^{m-} for a vector of Z^r (no reorientation)."""
    plus = [max(v, 0) for v in vector]
    minus = [max(-v, 0) for v in vector]
    return ring.monomial(plus) - ring.monomial(minus, coeff)


def _ambient_product(ring: PolynomialRing, ambient: Sequence[int]) -> Polynomial:
    exps = [0] * ring.nvars
    for i in ambient:
        exps[i] = 1
    return ring.monomial(exps)


def _saturated(
    ring: PolynomialRing, gens: list[Polynomial], lattice: IntLattice
) -> Ideal:
    # a rank one lattice ideal is principal: x^{m+} and x^{m-} share no variable
    if lattice.rank == 1:
        return Ideal(ring, gens)
    return saturate(Ideal(ring, gens), _ambient_product(ring, lattice.ambient))


def lattice_ideal(lattice: IntLattice, scale: int, ring: PolynomialRing) -> Ideal:
    """Return the lattice ideal of `scale` times `lattice`.

    The basis binomials are saturated by the product of the ambient variables, which
    gives the whole lattice ideal whatever basis was chosen.
    """
    if scale < 1:
        raise LatticeError(f"The scale must be positive, got {scale}.")
    if lattice.is_zero():
        return Ideal(ring)
    gens = []
    for vector in lattice.scaled(scale).embedded(ring.nvars):
        plus, minus = _oriented(ring, vector)
        gens.append(ring.monomial(plus) - ring.monomial(minus))
    return _saturated(ring, gens, lattice)


@dataclass(frozen=True)
class PartialCharacter:
    """The character m -> x^m(P) of a lattice supported where P is nonzero.

    Raises
    ------
    ZeroCoordinateOnSupport
        If the point vanishes at one of the lattice's ambient variables.

    """

    point: tuple[FieldElement, ...]
    lattice: IntLattice

    def __post_init__(self) -> None:
        zeros = [i + 1 for i in self.lattice.ambient if not self.point[i]]
        if zeros:
            raise ZeroCoordinateOnSupport(
                f"Coordinates {zeros} of the point vanish on the character support."
            )

    @classmethod
    def of_point(
        cls, point: Sequence[FieldElement], beta: Sequence[Sequence[int]]
    ) -> "PartialCharacter":
        """Build the character of a point on the lattice of its support."""
        return cls(tuple(point), restricted_lattice(beta, Support.of_point(point)))

    def __call__(self, vector: Sequence[int]) -> FieldElement:
        """Evaluate at a vector of Z^r (zero outside the support)."""
        field = self.point[0].field
        value = field(1)
        for i, e in enumerate(vector):
            if e:
                value = value * self.point[i] ** e
        return value


def character_lattice_ideal(chi: PartialCharacter, ring: PolynomialRing) -> Ideal:
    """Return the ideal of binomials x^{m+} - chi(m) x^{m-} over the lattice."""
    lattice = chi.lattice
    if lattice.is_zero():
        return Ideal(ring)
    gens = []
    for vector in lattice.embedded(ring.nvars):
        plus, minus = _oriented(ring, vector)
        oriented = [a - b for a, b in zip(plus, minus, strict=True)]
        gens.append(binomial(ring, oriented, chi(oriented)))
    return _saturated(ring, gens, lattice)


def beta_annihilates(beta: Sequence[Sequence[int]], lattice: IntLattice) -> bool:
    """Check that every basis vector lies in the kernel of the ambient columns."""
    columns = restrict(beta, lattice.ambient) if lattice.ambient else ()
    return all(
        sum(c * v for c, v in zip(row, vector, strict=True)) == 0
        for vector in lattice.basis
        for row in columns
    )


__all__ = [
    "EmptySupport",
    "IntLattice",
    "LatticeError",
    "PartialCharacter",
    "RankDeficient",
    "Support",
    "ZeroCoordinateOnSupport",
    "beta_annihilates",
    "binomial",
    "character_lattice_ideal",
    "exgcd",
    "hermite_normal_form",
    "integer_kernel",
    "kernel_basis",
    "lattice_ideal",
    "restrict",
    "restricted_lattice",
]