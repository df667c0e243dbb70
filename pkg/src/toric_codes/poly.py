"""Sparse multivariate polynomials over finite fields.

A polynomial is a mapping from exponent tuples to nonzero coefficients, stored as the
integer encodings of `gf.FiniteField`. Rings graded by a non-negative integer matrix
(`GradedRing`) provide β-degrees and graded monomial bases.
"""

import functools
import re
import typing as t
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import sympy

from toric_codes import utils
from toric_codes.gf import FieldElement, FieldMismatch, FiniteField

logger = utils.get_logger(__name__)

Exps = tuple[int, ...]
Coefficient = t.Union[int, FieldElement]
OrderKind = t.Literal["lex", "grevlex", "block"]

_NAME_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class PolynomialError(utils.ToricError): ...


class GradingError(PolynomialError): ...


class UnboundedDegreePiece(GradingError): ...


class RingMismatch(PolynomialError): ...


class DivisionFailure(PolynomialError): ...


class ParseError(PolynomialError):
    """A polynomial text does not follow the grammar.

    Parameters
    ----------
    message
        The error description.
    position
        The offset in the source text where parsing failed, if known.

    """

    def __init__(self, message: str, position: int | None = None) -> None:
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownVariable(ParseError): ...


class Monomial(tuple[int, ...]):
    """An exponent vector.

    Monomials compare and hash like plain tuples, so they can be used interchangeably
    as keys of term mappings.
    """

    __slots__ = ()

    def __new__(cls, exps: Iterable[int]) -> "Monomial":
        return super().__new__(cls, exps)

    @property
    def total_degree(self) -> int:
        return sum(self)

    def divides(self, other: Sequence[int]) -> bool:
        return all(a <= b for a, b in zip(self, other, strict=True))

    def multiply(self, other: Sequence[int]) -> "Monomial":
        return Monomial(a + b for a, b in zip(self, other, strict=True))

    def divide(self, other: Sequence[int]) -> "Monomial":
        quotient = Monomial(a - b for a, b in zip(self, other, strict=True))
        if any(e < 0 for e in quotient):
            raise DivisionFailure(f"{other} does not divide {self}.")
        return quotient

    def lcm(self, other: Sequence[int]) -> "Monomial":
        return Monomial(max(a, b) for a, b in zip(self, other, strict=True))

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self) if e)

    def format(self, var_names: Sequence[str]) -> str:
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(var_names, self, strict=True)
            if e
        ]
        return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a kind and a variable priority list.

    `priority` lists the variable indices from most to least significant. For the
    block kind, the first `block_split` entries of `priority` form the eliminated
    block: any monomial involving them is greater than every monomial that does
    not. Both blocks are compared by graded reverse lexicographic order.
    """

    kind: OrderKind
    priority: tuple[int, ...]
    block_split: int = 0

    def __post_init__(self) -> None:
        if sorted(self.priority) != list(range(len(self.priority))):
            raise PolynomialError(f"{self.priority} is not a variable permutation.")
        if self.kind != "block" and self.block_split:
            raise PolynomialError("Only block orders have a block split.")
        if not 0 <= self.block_split <= len(self.priority):
            raise PolynomialError(f"Block split {self.block_split} is out of range.")

    @classmethod
    def lex(cls, nvars: int, priority: Sequence[int] | None = None) -> "MonomialOrder":
        return cls("lex", tuple(range(nvars) if priority is None else priority))

    @classmethod
    def grevlex(
        cls, nvars: int, priority: Sequence[int] | None = None
    ) -> "MonomialOrder":
        return cls("grevlex", tuple(range(nvars) if priority is None else priority))

    @classmethod
    def block(cls, nvars: int, eliminate: Iterable[int]) -> "MonomialOrder":
        """Build an elimination order with the `eliminate` variables greatest."""
        dropped = sorted(set(eliminate))
        kept = [i for i in range(nvars) if i not in set(dropped)]
        return cls("block", (*dropped, *kept), len(dropped))

    @property
    def nvars(self) -> int:
        return len(self.priority)

    @staticmethod
    def _grevlex_key(exps: Sequence[int], indices: Sequence[int]) -> tuple[int, ...]:
        return (sum(exps[i] for i in indices), *(-exps[i] for i in reversed(indices)))

    def key(self, exps: Sequence[int]) -> tuple[int, ...]:
        """Return a tuple whose natural order is this monomial order."""
        if self.kind == "lex":
            return tuple(exps[i] for i in self.priority)
        if self.kind == "grevlex":
            return self._grevlex_key(exps, self.priority)
        head = self.priority[: self.block_split]
        tail = self.priority[self.block_split :]
        return self._grevlex_key(exps, head) + self._grevlex_key(exps, tail)

    def cached_key(self) -> t.Callable[[Exps], tuple[int, ...]]:
        """Return a memoized key function for repeated comparisons."""
        return functools.lru_cache(maxsize=1 << 16)(self.key)

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block{self.priority[: self.block_split]}"
        return self.kind


class PolynomialRing:
    """A polynomial ring over a finite field with named variables.

    Parameters
    ----------
    field
        The coefficient field.
    var_names
        The variable names, in order. Names are identifiers; `a` is reserved for the
        modulus root of extension fields.

    """

    def __init__(self, field: FiniteField, var_names: Sequence[str]) -> None:
        names = tuple(var_names)
        if len(set(names)) != len(names):
            raise PolynomialError(f"Duplicate variable names in {names}.")
        for name in names:
            if not _NAME_PATTERN.match(name):
                raise PolynomialError(f"'{name}' is not a valid variable name.")
            if name == "a" and field.k > 1:
                raise PolynomialError("'a' denotes the modulus root of the field.")
        self.field = field
        self.var_names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.field}, {list(self.var_names)})"

    def _identity(self) -> tuple[t.Any, ...]:
        return (type(self), self.field, self.var_names)

    def __eq__(self, other: object, /) -> bool:
        if not isinstance(other, PolynomialRing):
            return False
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"Unknown variable '{name}'.") from None

    @functools.cached_property
    def default_order(self) -> MonomialOrder:
        """Graded reverse lexicographic order on the declared variable order."""
        return MonomialOrder.grevlex(self.nvars)

    @functools.cached_property
    def print_order(self) -> MonomialOrder:
        return MonomialOrder.lex(self.nvars)

    def fresh_name(self, base: str) -> str:
        """Return a variable name not used in this ring."""
        name, counter = base, 0
        while name in self._index:
            counter += 1
            name = f"{base}{counter}"
        return name

    def extend(self, names: Sequence[str]) -> "PolynomialRing":
        """Return the ungraded ring with extra variables appended."""
        return PolynomialRing(self.field, (*self.var_names, *names))

    def coerce(self, value: Coefficient) -> int:
        if isinstance(value, FieldElement):
            if value.field != self.field:
                raise FieldMismatch(f"{value!r} does not belong to {self.field}.")
            return value.value
        return self.field.from_int(value)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value: Coefficient) -> "Polynomial":
        return self.monomial((0,) * self.nvars, value)

    def monomial(self, exps: Sequence[int], coeff: Coefficient = 1) -> "Polynomial":
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise PolynomialError(f"{tuple(exps)} is not an exponent vector of {self}.")
        return Polynomial(self, {tuple(exps): self.coerce(coeff)})

    def var(self, name_or_index: str | int) -> "Polynomial":
        i = (
            self.index(name_or_index)
            if isinstance(name_or_index, str)
            else name_or_index
        )
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(exps)

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def from_terms(self, terms: Mapping[Sequence[int], Coefficient]) -> "Polynomial":
        raw: dict[Exps, int] = {}
        for exps, coeff in terms.items():
            key = tuple(exps)
            if len(key) != self.nvars:
                raise PolynomialError(f"{key} is not an exponent vector of {self}.")
            raw[key] = self.field.add(raw.get(key, 0), self.coerce(coeff))
        return Polynomial(self, raw)

    def parse(self, src: str) -> "Polynomial":
        from toric_codes.parser import PolynomialParser

        return PolynomialParser(self).parse(src)


class GradedRing(PolynomialRing):
    """A polynomial ring graded by a d×r matrix of non-negative integers.

    Column j of `beta` is the degree of variable j. The matrix must have rank d over
    the rationals and no zero column.

    Parameters
    ----------
    field
        The coefficient field.
    beta
        The grading matrix, row-major.
    var_names
        Optional variable names, `x_1..x_r` by default.

    Raises
    ------
    GradingError
        If `beta` is ragged, has negative entries, the wrong number of columns or a
        rank below its number of rows.
    UnboundedDegreePiece
        If some column of `beta` is zero.

    """

    def __init__(
        self,
        field: FiniteField,
        beta: Sequence[Sequence[int]],
        var_names: Sequence[str] | None = None,
    ) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in beta)
        if not rows or not rows[0] or len({len(row) for row in rows}) != 1:
            raise GradingError("The grading matrix must be a non-empty rectangle.")
        r = len(rows[0])
        if var_names is None:
            var_names = [f"x_{j + 1}" for j in range(r)]
        if len(var_names) != r:
            raise GradingError(f"Expected {r} variable names, got {len(var_names)}.")
        if any(v < 0 for row in rows for v in row):
            raise GradingError("The grading matrix must be non-negative.")
        zero_columns = [j + 1 for j in range(r) if all(row[j] == 0 for row in rows)]
        if zero_columns:
            raise UnboundedDegreePiece(
                f"Variables {zero_columns} have degree zero: graded pieces are "
                "infinite-dimensional."
            )
        if sympy.Matrix(rows).rank() != len(rows):
            raise GradingError(f"The grading matrix {rows} must have full row rank.")
        super().__init__(field, var_names)
        self.beta = rows

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.field}, {[list(r) for r in self.beta]})"

    def _identity(self) -> tuple[t.Any, ...]:
        return (*super()._identity(), self.beta)

    @property
    def d(self) -> int:
        return len(self.beta)

    @property
    def r(self) -> int:
        return self.nvars

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.beta)

    def degree(self, exps: Sequence[int]) -> tuple[int, ...]:
        """Return the β-degree of an exponent vector."""
        return tuple(
            sum(b * e for b, e in zip(row, exps, strict=True)) for row in self.beta
        )

    def graded_monomial_basis(self, alpha: Sequence[int]) -> list[Monomial]:
        """Return all monomials of degree `alpha`, exponent vectors in descending lex.

        Each exponent is capped by the remaining degree divided by the positive
        entries of its column, which bounds the search since no column is zero.
        """
        target = tuple(alpha)
        if len(target) != self.d:
            raise GradingError(f"Degree {target} does not have {self.d} entries.")
        if any(v < 0 for v in target):
            return []
        columns = [self.column(j) for j in range(self.r)]
        basis: list[Monomial] = []

        def search(j: int, remaining: tuple[int, ...], exps: list[int]) -> None:
            if j == self.r:
                if not any(remaining):
                    basis.append(Monomial(exps))
                return
            col = columns[j]
            cap = min(rem // c for rem, c in zip(remaining, col, strict=True) if c)
            for e in range(cap, -1, -1):
                nxt = tuple(rem - e * c for rem, c in zip(remaining, col, strict=True))
                search(j + 1, nxt, [*exps, e])

        search(0, target, [])
        return basis


class Polynomial:
    """An immutable sparse polynomial.

    Build polynomials through their ring (`ring.parse`, `ring.var`,
    `ring.from_terms`) rather than from raw encodings.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Exps, int]) -> None:
        self.ring = ring
        self._terms: dict[Exps, int] = {m: c for m, c in terms.items() if c}

    @property
    def raw_terms(self) -> Mapping[Exps, int]:
        """The terms with integer-encoded coefficients."""
        return self._terms

    @property
    def terms(self) -> dict[Monomial, FieldElement]:
        field = self.ring.field
        return {Monomial(m): FieldElement(field, c) for m, c in self._terms.items()}

    def monomials(self) -> list[Monomial]:
        """Return the monomials, highest first in the printing order."""
        key = self.ring.print_order.key
        return [Monomial(m) for m in sorted(self._terms, key=key, reverse=True)]

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        return FieldElement(self.ring.field, self._terms.get(tuple(exps), 0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_binomial(self) -> bool:
        return len(self._terms) <= 2

    # -- arithmetic ---------------------------------------------------------------

    def _check_ring(self, other: "Polynomial") -> None:
        if other.ring != self.ring:
            raise RingMismatch(
                f"Cannot combine polynomials of {self.ring} and {other.ring}."
            )

    def _lift(self, other: object) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if isinstance(other, int | FieldElement):
            return self.ring.constant(other)
        return None

    def __add__(self, other: "Polynomial | Coefficient") -> "Polynomial":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        field = self.ring.field
        terms = dict(self._terms)
        for m, c in rhs._terms.items():
            terms[m] = field.add(terms.get(m, 0), c)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial | Coefficient") -> "Polynomial":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: "Polynomial | Coefficient") -> "Polynomial":
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: "Polynomial | Coefficient") -> "Polynomial":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        field = self.ring.field
        terms: dict[Exps, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in rhs._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2, strict=True))
                terms[m] = field.add(terms.get(m, 0), field.mul(c1, c2))
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise PolynomialError("Polynomials only have non-negative powers.")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, coeff: Coefficient) -> "Polynomial":
        c = self.ring.coerce(coeff)
        mul = self.ring.field.mul
        return Polynomial(self.ring, {m: mul(c, v) for m, v in self._terms.items()})

    def shift(self, exps: Sequence[int]) -> "Polynomial":
        """Multiply by the monomial `exps`."""
        return Polynomial(
            self.ring,
            {
                tuple(a + b for a, b in zip(m, exps, strict=True)): c
                for m, c in self._terms.items()
            },
        )

    def __eq__(self, other: object, /) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int | FieldElement):
            return self._terms == self.ring.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    # -- orders -----------------------------------------------------------------

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self._terms:
            raise PolynomialError("The zero polynomial has no leading monomial.")
        key = (order or self.ring.default_order).key
        return Monomial(max(self._terms, key=key))

    def leading_coefficient(self, order: MonomialOrder | None = None) -> FieldElement:
        return self.coefficient(self.leading_monomial(order))

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.leading_coefficient(order).inverse())

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def variables(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def divide_exact(
        self, divisor: "Polynomial", order: MonomialOrder | None = None
    ) -> "Polynomial":
        """Return the exact quotient by `divisor`.

        Raises
        ------
        DivisionFailure
            If `divisor` is zero or does not divide this polynomial.

        """
        self._check_ring(divisor)
        if divisor.is_zero():
            raise DivisionFailure("Division by the zero polynomial.")
        order = order or self.ring.default_order
        field = self.ring.field
        lead = tuple(divisor.leading_monomial(order))
        lead_inv = field.inv(divisor._terms[lead])
        rem = dict(self._terms)
        quotient: dict[Exps, int] = {}
        while rem:
            m = max(rem, key=order.key)
            shift = tuple(a - b for a, b in zip(m, lead, strict=True))
            if any(e < 0 for e in shift):
                raise DivisionFailure(f"{divisor} does not divide {self}.")
            c = field.mul(rem[m], lead_inv)
            quotient[shift] = c
            for dm, dc in divisor._terms.items():
                tm = tuple(a + b for a, b in zip(dm, shift, strict=True))
                value = field.sub(rem.get(tm, 0), field.mul(c, dc))
                if value:
                    rem[tm] = value
                else:
                    rem.pop(tm, None)
        return Polynomial(self.ring, quotient)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.divide_exact(self)
        except DivisionFailure:
            return False
        return True

    # -- evaluation and grading -----------------------------------------------------

    def evaluate(self, point: Sequence[Coefficient]) -> FieldElement:
        """Evaluate at a point; 0^0 = 1 for the empty product."""
        if len(point) != self.ring.nvars:
            raise PolynomialError(
                f"Point of length {len(point)} for a ring with {self.ring.nvars} "
                "variables."
            )
        field = self.ring.field
        values = [self.ring.coerce(v) for v in point]
        total = 0
        for m, c in self._terms.items():
            term = c
            for v, e in zip(values, m, strict=True):
                if e:
                    term = field.mul(term, field.pow(v, e))
            total = field.add(total, term)
        return FieldElement(field, total)

    def homogeneous_degree(self) -> tuple[int, ...] | None:
        """Return the common β-degree of the terms, or None if there is none."""
        ring = self.ring
        if not isinstance(ring, GradedRing):
            raise GradingError(f"{ring} is not graded.")
        degrees = {ring.degree(m) for m in self._terms}
        if len(degrees) > 1:
            return None
        return degrees.pop() if degrees else (0,) * ring.d

    def is_homogeneous(self) -> bool:
        return self.is_zero() or self.homogeneous_degree() is not None

    def substitute(
        self, ring: PolynomialRing, rename: Mapping[str, str] | None = None
    ) -> "Polynomial":
        """Move this polynomial into `ring`, matching variables by name.

        Raises
        ------
        RingMismatch
            If a variable that occurs in this polynomial is missing from `ring`, or
            the fields differ.

        """
        if ring.field != self.ring.field:
            raise RingMismatch(f"Cannot move from {self.ring.field} to {ring.field}.")
        rename = rename or {}
        targets: dict[int, int] = {}
        for i in self.variables():
            name = self.ring.var_names[i]
            name = rename.get(name, name)
            if name not in ring.var_names:
                raise RingMismatch(f"Variable '{name}' does not exist in {ring}.")
            targets[i] = ring.index(name)
        terms: dict[Exps, int] = {}
        for m, c in self._terms.items():
            exps = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    exps[targets[i]] += e
            key = tuple(exps)
            terms[key] = ring.field.add(terms.get(key, 0), c)
        return Polynomial(ring, terms)

    # -- printing -------------------------------------------------------------------

    def _format_term(self, exps: Exps, coeff: int) -> str:
        field = self.ring.field
        mono = Monomial(exps).format(self.ring.var_names)
        constant = not any(exps)
        if field.k == 1:
            c = field.signed(coeff)
            if constant:
                return str(c)
            if c == 1:
                return mono
            if c == -1:
                return f"-{mono}"
            return f"{c}*{mono}"
        text = field.format(coeff)
        if constant:
            return text
        if coeff == 1:
            return mono
        return f"({text})*{mono}" if "+" in text else f"{text}*{mono}"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in self.monomials():
            term = self._format_term(m, self._terms[m])
            if parts and not term.startswith("-"):
                term = f"+{term}"
            parts.append(term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def parse_polynomial(src: str, ring: PolynomialRing) -> Polynomial:
    return ring.parse(src)


def beta_degree(exps: Sequence[int], ring: GradedRing) -> tuple[int, ...]:
    return ring.degree(exps)


def is_homogeneous(poly: Polynomial) -> tuple[bool, tuple[int, ...] | None]:
    """Return whether `poly` is β-homogeneous together with its degree."""
    degree = poly.homogeneous_degree()
    return (degree is not None or poly.is_zero()), degree


def evaluate(poly: Polynomial, point: Sequence[Coefficient]) -> FieldElement:
    return poly.evaluate(point)


def graded_monomial_basis(ring: GradedRing, alpha: Sequence[int]) -> list[Monomial]:
    return ring.graded_monomial_basis(alpha)
