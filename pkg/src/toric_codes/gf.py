"""Exact arithmetic in the finite fields GF(p^k).

Elements are stored as integers in ``range(q)``: the base-p digits of the integer are
the coefficients of the element as a polynomial in the modulus root ``a`` (lowest
degree first). Integer order therefore coincides with the lexicographic order of the
coefficient vectors read from the highest power down, so ``range(q)`` enumerates the
field with zero first.
"""

import functools
from collections.abc import Sequence

import galois
import sympy

from toric_codes import utils
from toric_codes._config.config_base import Config

logger = utils.get_logger(__name__)


class FiniteFieldError(utils.ToricError): ...


class NotPrime(FiniteFieldError): ...


class DegreeZero(FiniteFieldError): ...


class DivisionByZero(FiniteFieldError, ZeroDivisionError): ...


class FieldMismatch(FiniteFieldError): ...


class FieldTooLarge(FiniteFieldError): ...


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of `num` by `den` over GF(p), coefficient lists lowest degree first."""
    rem = _trim([c % p for c in num])
    deg_den = len(den) - 1
    lead_inv = pow(den[-1], -1, p)
    while len(rem) - 1 >= deg_den:
        factor = rem[-1] * lead_inv % p
        shift = len(rem) - 1 - deg_den
        for i, c in enumerate(den):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
        _trim(rem)
    return rem


def _digits(n: int, p: int, k: int) -> list[int]:
    digits = []
    for _ in range(k):
        n, d = divmod(n, p)
        digits.append(d)
    return digits


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Test a monic polynomial over GF(p) for irreducibility by trial division.

    Every monic polynomial of degree at most half the degree of `coeffs` is tried as a
    divisor.
    """
    degree = len(coeffs) - 1
    for d in range(1, degree // 2 + 1):
        for low in range(p**d):
            divisor = [*_digits(low, p, d), 1]
            if not _poly_rem(coeffs, divisor, p):
                return False
    return True


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Return the smallest monic irreducible polynomial of degree k over GF(p).

    Candidates are scanned with the constant term varying fastest. For k = 1 the
    modulus is ``x`` itself.
    """
    if k == 1:
        return (0, 1)
    for low in range(p**k):
        coeffs = [*_digits(low, p, k), 1]
        if coeffs[0] != 0 and is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FiniteFieldError(f"No irreducible polynomial of degree {k} over GF({p}).")


class FiniteField:
    """The finite field GF(p^k).

    Prefer `field_create` or `field_from_order` over direct instantiation: they cache
    fields so that equal fields are the same object.

    Parameters
    ----------
    p
        The characteristic, a prime.
    k
        The extension degree, at least 1.

    Raises
    ------
    NotPrime
        If `p` is not a prime.
    DegreeZero
        If `k` is smaller than 1.
    FieldTooLarge
        If p^k exceeds the configured `field.max_order`.

    """

    def __init__(self, p: int, k: int = 1) -> None:
        if not sympy.isprime(p):
            raise NotPrime(f"The characteristic must be prime, got {p}.")
        if k < 1:
            raise DegreeZero(f"The extension degree must be at least 1, got {k}.")
        max_order = Config.config.field.max_order
        if p**k > max_order:
            raise FieldTooLarge(
                f"GF({p}^{k}) exceeds the configured maximum order {max_order}."
            )
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = find_modulus(p, k)
        self._exp: list[int] = []
        self._log: list[int] = []
        if k > 1:
            self._build_log_tables()
        logger.debug(f"Created {self!r} with modulus {self.modulus}.")

    def __repr__(self) -> str:
        return f"{type(self).__name__}(p={self.p}, k={self.k})"

    def __str__(self) -> str:
        return f"GF({self.order})"

    def __eq__(self, other: object, /) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __len__(self) -> int:
        return self.order

    # -- encoding ---------------------------------------------------------------

    def coefficients(self, value: int) -> tuple[int, ...]:
        """Return the coefficient vector of an element, lowest power first."""
        return tuple(_digits(value, self.p, self.k))

    def from_coefficients(self, coeffs: Sequence[int]) -> int:
        """Encode a polynomial in the modulus root, reducing it by the modulus."""
        rem = _poly_rem(coeffs, self.modulus, self.p) if coeffs else []
        return sum(c * self.p**i for i, c in enumerate(rem))

    def from_int(self, n: int) -> int:
        """Map an integer into the prime subfield."""
        return n % self.p

    def __call__(self, value: "int | Sequence[int] | FieldElement") -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} does not belong to {self}.")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.from_coefficients(value))

    def element(self, value: int) -> "FieldElement":
        """Wrap an already encoded element."""
        if not 0 <= value < self.order:
            raise FiniteFieldError(f"{value} is not an element encoding of {self}.")
        return FieldElement(self, value)

    def point(
        self, values: Sequence["int | FieldElement"]
    ) -> tuple["FieldElement", ...]:
        """Wrap point coordinates, reading integers as element encodings."""
        return tuple(
            self(v) if isinstance(v, FieldElement) else self.element(v) for v in values
        )

    def elements(self) -> list["FieldElement"]:
        """Return all elements, zero first, in lexicographic coefficient order."""
        return [FieldElement(self, value) for value in range(self.order)]

    def nonzero(self) -> range:
        return range(1, self.order)

    @property
    def generator(self) -> "FieldElement":
        """The modulus root `a` (zero for prime fields, whose modulus is `x`)."""
        return FieldElement(self, self.from_coefficients([0, 1]))

    # -- arithmetic on encodings -------------------------------------------------

    def _mulmod(self, a: int, b: int) -> int:
        prod = [0] * (2 * self.k - 1)
        da, db = self.coefficients(a), self.coefficients(b)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] += ca * cb
        return self.from_coefficients(prod)

    def _build_log_tables(self) -> None:
        size = self.order - 1
        for candidate in range(2, self.order):
            exp = [1]
            current = candidate
            while current != 1:
                exp.append(current)
                current = self._mulmod(current, candidate)
            if len(exp) == size:
                log = [0] * self.order
                for i, value in enumerate(exp):
                    log[value] = i
                self._exp = exp + exp
                self._log = log
                return
        raise FiniteFieldError(f"No primitive element found in {self}.")

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        pairs = zip(self.coefficients(a), self.coefficients(b), strict=True)
        return self.from_coefficients([x + y for x, y in pairs])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_coefficients([-x for x in self.coefficients(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"Zero has no inverse in {self}.")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self._exp[self.order - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """Raise to an integer power; 0^0 = 1 and negative powers need a != 0."""
        if n < 0:
            a, n = self.inv(a), -n
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, n, self.p)
        return self._exp[self._log[a] * n % (self.order - 1)]

    def signed(self, a: int) -> int:
        """Return the representative of a prime field element closest to zero."""
        return a - self.p if a > self.p // 2 else a

    def format(self, a: int) -> str:
        """Print an encoded element (a polynomial in `a` for extension fields)."""
        if self.k == 1:
            return str(a)
        terms = []
        for power, c in reversed(list(enumerate(self.coefficients(a)))):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
                continue
            base = "a" if power == 1 else f"a^{power}"
            terms.append(base if c == 1 else f"{c}*{base}")
        return "+".join(terms) if terms else "0"

    def primitive_element(self) -> "FieldElement":
        """Return the smallest generator of the multiplicative group."""
        if self.k > 1:
            return FieldElement(self, self._exp[1])
        if self.order == 2:
            return FieldElement(self, 1)
        factors = sympy.primefactors(self.order - 1)
        for candidate in range(2, self.order):
            if all(pow(candidate, (self.order - 1) // f, self.p) != 1 for f in factors):
                return FieldElement(self, candidate)
        raise FiniteFieldError(f"No primitive element found in {self}.")

    @functools.cached_property
    def galois_field(self) -> type[galois.FieldArray]:
        """The `galois` array class of this field, built on the same modulus.

        Both use the base-p digit encoding, so integer encodings carry over unchanged
        to vectorized linear algebra.
        """
        if self.k == 1:
            return galois.GF(self.p)
        prime_field = galois.GF(self.p)
        modulus = galois.Poly(list(reversed(self.modulus)), field=prime_field)
        return galois.GF(self.p**self.k, irreducible_poly=modulus)


class FieldElement:
    """An element of a `FiniteField`.

    Integers are coerced into the prime subfield in mixed arithmetic.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int) -> None:
        self.field = field
        self.value = value

    @property
    def rep(self) -> tuple[int, ...]:
        """The coefficient vector over GF(p), lowest power of `a` first."""
        return self.field.coefficients(self.value)

    def _coerce(self, other: object) -> int | None:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(
                    f"Cannot combine elements of {self.field} and {other.field}."
                )
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other: "FieldElement | int") -> "FieldElement":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, value))

    __radd__ = __add__

    def __sub__(self, other: "FieldElement | int") -> "FieldElement":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, value))

    def __rsub__(self, other: "FieldElement | int") -> "FieldElement":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(value, self.value))

    def __mul__(self, other: "FieldElement | int") -> "FieldElement":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, value))

    __rmul__ = __mul__

    def __truediv__(self, other: "FieldElement | int") -> "FieldElement":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, value))

    def __rtruediv__(self, other: "FieldElement | int") -> "FieldElement":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(value, self.value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object, /) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.field!r}, {self.field.format(self.value)!r})"


@functools.lru_cache(maxsize=None)
def field_create(p: int, k: int = 1) -> FiniteField:
    """Return GF(p^k) with its deterministic modulus (cached per arguments)."""
    return FiniteField(p, k)


def field_from_order(q: int) -> FiniteField:
    """Return GF(q) for a prime power q."""
    factors = sympy.factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise NotPrime(f"The field order must be a prime power, got {q}.")
    ((p, k),) = factors.items()
    return field_create(int(p), int(k))


def as_field(field: "FiniteField | int") -> FiniteField:
    """Accept either a field or its order."""
    return field if isinstance(field, FiniteField) else field_from_order(field)


def field_enumerate(field: FiniteField) -> list[FieldElement]:
    return field.elements()
