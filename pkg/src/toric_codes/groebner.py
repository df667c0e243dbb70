"""Gröbner bases and the ideal operations built on them.

The engine works on raw term dictionaries (exponent tuple -> encoded coefficient)
and is wrapped by `Ideal`, which caches one reduced basis per monomial order.
"""

import heapq
import typing as t
from collections.abc import Callable, Iterable, Sequence

from toric_codes import utils
from toric_codes._config.config_base import Config
from toric_codes.gf import FiniteField
from toric_codes.poly import (
    Exps,
    GradedRing,
    Monomial,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    RingMismatch,
)

logger = utils.get_logger(__name__)

Terms = dict[Exps, int]
KeyFunc = Callable[[Exps], tuple[int, ...]]


class GroebnerError(utils.ToricError): ...


class ResourceBudgetExceeded(GroebnerError, utils.BudgetError): ...


class NonHomogeneousIdeal(GroebnerError): ...


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b, strict=True))


class _Reducer:
    """Multivariate division by a growing list of polynomials."""

    def __init__(self, field: FiniteField, key: KeyFunc) -> None:
        self.field = field
        self.key = key
        self.basis: list[Terms] = []
        self.leads: list[Exps] = []
        self.lead_inv: list[int] = []

    def add(self, terms: Terms) -> int:
        lead = max(terms, key=self.key)
        self.basis.append(terms)
        self.leads.append(lead)
        self.lead_inv.append(self.field.inv(terms[lead]))
        return len(self.basis) - 1

    def reduce(self, terms: t.Mapping[Exps, int], skip: int | None = None) -> Terms:
        """Return the remainder of a full reduction (no term divisible by a lead)."""
        field, key = self.field, self.key
        todo = dict(terms)
        remainder: Terms = {}
        while todo:
            m = max(todo, key=key)
            c = todo[m]
            for idx, lead in enumerate(self.leads):
                if idx == skip or not _divides(lead, m):
                    continue
                factor = field.mul(c, self.lead_inv[idx])
                shift = tuple(a - b for a, b in zip(m, lead, strict=True))
                for gm, gc in self.basis[idx].items():
                    tm = tuple(a + b for a, b in zip(gm, shift, strict=True))
                    value = field.sub(todo.get(tm, 0), field.mul(factor, gc))
                    if value:
                        todo[tm] = value
                    else:
                        todo.pop(tm, None)
                break
            else:
                remainder[m] = c
                del todo[m]
        return remainder


def _monic(terms: Terms, field: FiniteField, key: KeyFunc) -> Terms:
    inv = field.inv(terms[max(terms, key=key)])
    return {m: field.mul(inv, c) for m, c in terms.items()}


def _buchberger(
    gens: Sequence[Terms],
    field: FiniteField,
    order: MonomialOrder,
    max_pairs: int,
    max_degree: int,
) -> list[Terms]:
    """Compute the reduced Gröbner basis of raw generators.

    Pairs are selected by the normal strategy (smallest lcm degree, then the order on
    the lcm, then the generator indices) and skipped by the coprime leading monomial
    and chain criteria.
    """
    key = order.cached_key()
    reducer = _Reducer(field, key)
    pending: set[tuple[int, int]] = set()
    queue: list[tuple[int, tuple[int, ...], int, int]] = []

    def lcm(i: int, j: int) -> Exps:
        li, lj = reducer.leads[i], reducer.leads[j]
        return tuple(max(a, b) for a, b in zip(li, lj, strict=True))

    def append(terms: Terms) -> None:
        degree = max(sum(m) for m in terms)
        if degree > max_degree:
            raise ResourceBudgetExceeded(
                f"Basis element of degree {degree} exceeds the degree cap {max_degree}."
            )
        new = reducer.add(_monic(terms, field, key))
        for old in range(new):
            common = lcm(old, new)
            heapq.heappush(queue, (sum(common), key(common), old, new))
            pending.add((old, new))

    def chain_criterion(i: int, j: int, common: Exps) -> bool:
        for k, lead in enumerate(reducer.leads):
            if k in (i, j) or not _divides(lead, common):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            return True
        return False

    for terms in sorted((g for g in gens if g), key=lambda g: key(max(g, key=key))):
        remainder = reducer.reduce(terms)
        if remainder:
            append(remainder)

    processed = 0
    while queue:
        _, _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        li, lj = reducer.leads[i], reducer.leads[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj, strict=True)):
            continue
        common = lcm(i, j)
        if chain_criterion(i, j, common):
            continue
        processed += 1
        if processed > max_pairs:
            raise ResourceBudgetExceeded(
                f"More than {max_pairs} critical pairs processed; raise "
                "`groebner.max_pairs` or choose another path."
            )
        spoly: Terms = {}
        for idx, sign in ((i, 1), (j, -1)):
            lead = reducer.leads[idx]
            shift = tuple(a - b for a, b in zip(common, lead, strict=True))
            for m, c in reducer.basis[idx].items():
                tm = tuple(a + b for a, b in zip(m, shift, strict=True))
                value = c if sign == 1 else field.neg(c)
                total = field.add(spoly.get(tm, 0), value)
                if total:
                    spoly[tm] = total
                else:
                    spoly.pop(tm, None)
        remainder = reducer.reduce(spoly)
        if remainder:
            append(remainder)

    leads = reducer.leads
    minimal = [
        i
        for i, lead in enumerate(leads)
        if not any(j != i and _divides(other, lead) for j, other in enumerate(leads))
    ]
    final = _Reducer(field, key)
    for i in minimal:
        final.add(reducer.basis[i])
    reduced = [final.reduce(g, skip=idx) for idx, g in enumerate(final.basis)]
    reduced = [_monic(g, field, key) for g in reduced]
    reduced.sort(key=lambda g: key(max(g, key=key)), reverse=True)
    logger.debug(
        f"Gröbner basis under {order}: {len(reduced)} elements, "
        f"{processed} pairs reduced, {len(leads)} intermediate elements."
    )
    return reduced


class Ideal:
    """An ideal given by generators, with one cached reduced Gröbner basis per order.

    Parameters
    ----------
    ring
        The ambient ring.
    gens
        The generators, as polynomials of `ring` or texts parsed in `ring`. Zero
        generators are dropped.

    """

    def __init__(
        self, ring: PolynomialRing, gens: Iterable[Polynomial | str] = ()
    ) -> None:
        self.ring = ring
        parsed = []
        for g in gens:
            poly = ring.parse(g) if isinstance(g, str) else g
            if poly.ring != ring:
                raise RingMismatch(f"Generator {poly} does not belong to {ring}.")
            if poly:
                parsed.append(poly)
        self.gens: tuple[Polynomial, ...] = tuple(parsed)
        self._gb_cache: dict[MonomialOrder, list[Polynomial]] = {}

    def __repr__(self) -> str:
        return f"Ideal({self.ring!r}, {[str(g) for g in self.gens]})"

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.gens) + ">"

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatch("Cannot add ideals of different rings.")
        return Ideal(self.ring, (*self.gens, *other.gens))

    def is_zero(self) -> bool:
        return not self.gens

    def groebner_basis(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        """Return the reduced Gröbner basis under `order` (default: ring order)."""
        order = order or self.ring.default_order
        if order not in self._gb_cache:
            self._gb_cache[order] = buchberger(self.gens, order)
        return self._gb_cache[order]

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def contains(self, poly: Polynomial | str) -> bool:
        if isinstance(poly, str):
            poly = self.ring.parse(poly)
        gb = self.groebner_basis()
        return normal_form(poly, gb, self.ring.default_order).is_zero()

    def __contains__(self, poly: Polynomial | str) -> bool:
        return self.contains(poly)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        return ideal_equal(self, other)

    def sorted_generators(self) -> list[str]:
        """The generators as canonical strings, sorted."""
        return sorted(str(g) for g in self.gens)


def _budgets(max_pairs: int | None, max_degree: int | None) -> tuple[int, int]:
    section = Config.config.groebner
    return (
        section.max_pairs if max_pairs is None else max_pairs,
        section.max_degree if max_degree is None else max_degree,
    )


def buchberger(
    gens: "Ideal | Iterable[Polynomial]",
    order: MonomialOrder | None = None,
    *,
    max_pairs: int | None = None,
    max_degree: int | None = None,
) -> list[Polynomial]:
    """Return the reduced (monic) Gröbner basis of an ideal or generator list.

    Raises
    ------
    ResourceBudgetExceeded
        When more critical pairs than `max_pairs` need a reduction or a basis element
        exceeds `max_degree` (both default to the `groebner` config section).

    """
    if isinstance(gens, Ideal):
        if max_pairs is None and max_degree is None:
            return gens.groebner_basis(order)
        polys, ring = list(gens.gens), gens.ring
    else:
        polys = list(gens)
        if not polys:
            return []
        ring = polys[0].ring
    if not polys:
        return []
    if any(p.ring != ring for p in polys):
        raise RingMismatch("All generators must belong to one ring.")
    order = order or ring.default_order
    pairs_budget, degree_budget = _budgets(max_pairs, max_degree)
    raw = _buchberger(
        [dict(p.raw_terms) for p in polys],
        ring.field,
        order,
        pairs_budget,
        degree_budget,
    )
    return [Polynomial(ring, terms) for terms in raw]


def normal_form(
    poly: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder | None = None
) -> Polynomial:
    """Return the remainder of `poly` by `divisors` (full reduction)."""
    order = order or poly.ring.default_order
    reducer = _Reducer(poly.ring.field, order.key)
    for g in divisors:
        if g.ring != poly.ring:
            raise RingMismatch(f"Divisor {g} does not belong to {poly.ring}.")
        if g:
            reducer.add(dict(g.raw_terms))
    return Polynomial(poly.ring, reducer.reduce(poly.raw_terms))


def s_polynomial(
    f: Polynomial, g: Polynomial, order: MonomialOrder | None = None
) -> Polynomial:
    order = order or f.ring.default_order
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    common = lf.lcm(lg)
    return f.monic(order).shift(common.divide(lf)) - g.monic(order).shift(
        common.divide(lg)
    )


def is_groebner_basis(basis: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Check that every S-polynomial of `basis` reduces to zero."""
    return all(
        normal_form(s_polynomial(f, g, order), basis, order).is_zero()
        for i, f in enumerate(basis)
        for g in basis[i + 1 :]
    )


def _variable_indices(
    ring: PolynomialRing, variables: Iterable[str | int]
) -> list[int]:
    return sorted({ring.index(v) if isinstance(v, str) else v for v in variables})


def eliminate(
    ideal: Ideal,
    drop: Iterable[str | int],
    target_ring: PolynomialRing | None = None,
) -> Ideal:
    """Return the intersection of `ideal` with the subring free of `drop`.

    The basis is computed under a block order with the dropped variables greatest;
    the surviving elements are moved into `target_ring` (by default an ungraded ring
    on the kept variables, in their original order).
    """
    ring = ideal.ring
    dropped = _variable_indices(ring, drop)
    if not dropped:
        return Ideal(ring, ideal.gens)
    kept_names = [n for i, n in enumerate(ring.var_names) if i not in set(dropped)]
    if target_ring is None:
        target_ring = PolynomialRing(ring.field, kept_names)
    order = MonomialOrder.block(ring.nvars, dropped)
    logger.info(
        f"Eliminating {[ring.var_names[i] for i in dropped]} from {len(ideal.gens)} "
        f"generators in {ring.nvars} variables."
    )
    basis = ideal.groebner_basis(order)
    survivors = [
        g.substitute(target_ring)
        for g in basis
        if not any(m[i] for m in g.raw_terms for i in dropped)
    ]
    result = Ideal(target_ring, survivors)
    if list(target_ring.var_names) == kept_names:
        # block order restricted to the kept block is the target's grevlex order
        result._gb_cache[target_ring.default_order] = list(result.gens)
    return result


def intersect(first: Ideal, second: Ideal) -> Ideal:
    """Return the intersection via an auxiliary variable w.

    `w*f` for f in the first ideal and `(1-w)*g` for g in the second generate an
    ideal whose elimination of w is the intersection.
    """
    if first.ring != second.ring:
        raise RingMismatch("Cannot intersect ideals of different rings.")
    ring = first.ring
    if first.is_zero() or second.is_zero():
        return Ideal(ring)
    w_name = ring.fresh_name("w")
    big = ring.extend([w_name])
    w = big.var(w_name)
    gens = [w * f.substitute(big) for f in first.gens]
    gens += [(1 - w) * g.substitute(big) for g in second.gens]
    return eliminate(Ideal(big, gens), [w_name], ring)


def _colon_by_polynomial(ideal: Ideal, divisor: Polynomial) -> Ideal:
    if divisor.is_constant():
        return Ideal(ideal.ring, ideal.gens)
    meet = intersect(ideal, Ideal(ideal.ring, [divisor]))
    quotients = [h.divide_exact(divisor) for h in meet.gens]
    return Ideal(ideal.ring, quotients)


def _nonzero_divisors(
    ring: PolynomialRing, divisor: "Ideal | Polynomial"
) -> list[Polynomial]:
    if isinstance(divisor, Polynomial):
        gens = [divisor] if divisor else []
    else:
        gens = list(divisor.gens)
    if any(g.ring != ring for g in gens):
        raise RingMismatch("The divisor must belong to the ideal's ring.")
    if not gens:
        raise GroebnerError("The colon by the zero ideal is not supported.")
    return gens


def colon(ideal: Ideal, divisor: "Ideal | Polynomial") -> Ideal:
    """Return the ideal quotient `ideal : divisor`.

    By a polynomial f this is (I ∩ <f>) divided by f; by an ideal it is the
    intersection of the quotients by its generators.
    """
    gens = _nonzero_divisors(ideal.ring, divisor)
    if any(g.is_constant() for g in gens):
        return Ideal(ideal.ring, ideal.gens)
    result = _colon_by_polynomial(ideal, gens[0])
    for g in gens[1:]:
        result = intersect(result, _colon_by_polynomial(ideal, g))
    return result


def saturate(ideal: Ideal, divisor: "Ideal | Polynomial") -> Ideal:
    """Return `ideal : divisor^∞`.

    A polynomial divisor f is handled in one basis computation as
    (I + <1 - t f>) ∩ S. An ideal divisor iterates `colon` until the ideal stops
    growing, within `groebner.max_saturation_rounds` rounds.
    """
    ring = ideal.ring
    gens = _nonzero_divisors(ring, divisor)
    if isinstance(divisor, Polynomial):
        if divisor.is_constant():
            return Ideal(ring, ideal.gens)
        t_name = ring.fresh_name("t")
        big = ring.extend([t_name])
        gens_big = [g.substitute(big) for g in ideal.gens]
        gens_big.append(1 - big.var(t_name) * divisor.substitute(big))
        return eliminate(Ideal(big, gens_big), [t_name], ring)

    rounds = Config.config.groebner.max_saturation_rounds
    current = ideal
    for _ in range(rounds):
        following = colon(current, Ideal(ring, gens))
        if ideal_equal(following, current):
            return following
        current = following
    raise ResourceBudgetExceeded(
        f"Saturation did not stabilize within {rounds} rounds."
    )


def ideal_equal(first: Ideal, second: Ideal) -> bool:
    """Compare reduced Gröbner bases under the ring's default order."""
    if first.ring != second.ring:
        raise RingMismatch("Cannot compare ideals of different rings.")
    return [g.raw_terms for g in first.groebner_basis()] == [
        g.raw_terms for g in second.groebner_basis()
    ]


def minimal_generators(ideal: Ideal) -> list[Polynomial]:
    """Return an irredundant subset of the reduced Gröbner basis generating `ideal`.

    Basis elements are dropped, largest leading monomial first, while they lie in the
    ideal of the remaining ones. For a β-homogeneous ideal of a positively graded ring
    the result is a minimal generating set, so its size is the minimal number of
    generators. The result keeps the basis order.
    """
    order = ideal.ring.default_order
    kept = list(ideal.groebner_basis())
    for g in sorted(kept, key=lambda p: order.key(p.leading_monomial()), reverse=True):
        others = [h for h in kept if h is not g]
        if others and Ideal(ideal.ring, others).contains(g):
            kept = others
    return kept


def quotient_graded_basis(ideal: Ideal, alpha: Sequence[int]) -> list[Monomial]:
    """Return the standard monomials of degree `alpha`.

    Raises
    ------
    NonHomogeneousIdeal
        If a generator is not β-homogeneous.

    """
    ring = ideal.ring
    if not isinstance(ring, GradedRing):
        raise GroebnerError(f"{ring} is not graded.")
    if not ideal.is_homogeneous():
        raise NonHomogeneousIdeal(f"{ideal} has non-homogeneous generators.")
    leads = [g.leading_monomial() for g in ideal.groebner_basis()]
    return [
        m
        for m in ring.graded_monomial_basis(alpha)
        if not any(lead.divides(m) for lead in leads)
    ]
