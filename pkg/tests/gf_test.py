import itertools

import numpy as np
import pytest

from toric_codes.gf import (
    DegreeZero,
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    FiniteField,
    FiniteFieldError,
    NotPrime,
    as_field,
    field_create,
    field_enumerate,
    field_from_order,
    find_modulus,
    is_irreducible,
)


@pytest.fixture(params=[(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)])
def field(request):
    return field_create(*request.param)


@pytest.mark.parametrize(
    ("p", "k", "expected"),
    [(2, 1, (0, 1)), (2, 2, (1, 1, 1)), (3, 2, (1, 0, 1)), (2, 3, (1, 1, 0, 1))],
)
def test_find_modulus_is_the_first_irreducible(p, k, expected):
    assert find_modulus(p, k) == expected


@pytest.mark.parametrize(
    ("coeffs", "p", "expected"),
    [
        ((1, 1, 1), 2, True),
        ((1, 0, 1), 2, False),
        ((1, 0, 1), 3, True),
        ((2, 0, 1), 3, False),
    ],
)
def test_is_irreducible(coeffs, p, expected):
    assert is_irreducible(coeffs, p) is expected


@pytest.mark.parametrize(
    ("p", "k", "error", "match"),
    [
        (4, 1, NotPrime, "must be prime"),
        (3, 0, DegreeZero, "at least 1"),
        (2, 11, FieldTooLarge, "maximum order 1024"),
    ],
)
def test_invalid_fields_raise(p, k, error, match):
    with pytest.raises(error, match=match):
        FiniteField(p, k)


def test_field_create_caches():
    assert field_create(5) is field_create(5, 1)


@pytest.mark.parametrize(
    ("q", "p", "k"), [(2, 2, 1), (8, 2, 3), (9, 3, 2), (25, 5, 2)]
)
def test_field_from_order(q, p, k):
    field = field_from_order(q)
    assert (field.p, field.k, field.order) == (p, k, q)
    assert as_field(q) is field
    assert as_field(field) is field


@pytest.mark.parametrize("q", [1, 6, 12])
def test_field_from_order_rejects_non_prime_powers(q):
    with pytest.raises(NotPrime):
        field_from_order(q)


def test_elements_start_with_zero(field):
    elements = field_enumerate(field)
    assert len(elements) == field.order
    assert elements[0] == field.element(0)
    assert not elements[0]
    assert all(elements[1:])


def test_field_axioms(field):
    elements = field.elements()
    one = field.element(1)
    for x in elements:
        assert x + (-x) == field.element(0)
        assert x * one == x
        if x:
            assert x * x.inverse() == one
            assert x ** (field.order - 1) == one
        assert x**field.order == x


def test_distributivity(field):
    elements = field.elements()[:6]
    for x, y, z in itertools.product(elements, repeat=3):
        assert x * (y + z) == x * y + x * z


def test_multiplicative_group_is_cyclic(field):
    g = field.primitive_element()
    powers = {(g**i).value for i in range(field.order - 1)}
    assert powers == set(range(1, field.order))


def test_gf4_modulus_root():
    field = field_create(2, 2)
    a = field.generator
    assert a.value == 2
    assert (a * a).value == 3
    assert str(a * a) == "a+1"
    assert a.rep == (0, 1)


def test_integers_map_into_the_prime_subfield():
    field = field_create(3, 2)
    assert field(4) == field.element(1)
    assert field(-1).value == 2
    assert field([0, 1]) == field.generator


def test_point_reads_encodings():
    field = field_create(3, 2)
    point = field.point([5, 0, field.generator])
    assert [v.value for v in point] == [5, 0, 3]


def test_element_rejects_out_of_range_encodings():
    with pytest.raises(FiniteFieldError, match="not an element encoding"):
        field_create(5).element(5)


def test_division_by_zero():
    field = field_create(5)
    with pytest.raises(DivisionByZero):
        field.element(3) / 0
    with pytest.raises(ZeroDivisionError):
        field.element(0).inverse()


def test_negative_powers():
    field = field_create(7)
    x = field.element(3)
    assert x**-1 == x.inverse()
    assert x**-2 * x**2 == 1


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatch):
        _ = field_create(3).element(1) + field_create(5).element(1)


def test_signed_representatives():
    field = field_create(5)
    assert [field.signed(v) for v in range(5)] == [0, 1, 2, -2, -1]


def test_galois_field_agrees_on_encodings(field):
    gf = field.galois_field
    values = np.arange(field.order)
    products = (gf(values)[:, None] * gf(values)[None, :]).view(np.ndarray)
    for a, b in itertools.product(range(field.order), repeat=2):
        assert products[a, b] == field.mul(a, b)
