"""Tests for the exterior algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hs_trace_tool.hs_exterior import (
    ExteriorElement,
    blade_indices,
    blade_mask,
    blades_of_grade,
    full_mask,
    grade,
    sign_of_interleave,
    top_form_coefficient,
    wedge,
)
from hs_trace_tool.hs_scalars import DimensionMismatchError
from hs_trace_tool.hs_suite import random_element

from conftest import matrices, small_fractions


def vectors(n):
    return st.lists(small_fractions, min_size=n, max_size=n).map(ExteriorElement.from_vector)


def test_blade_encoding():
    assert blade_mask([1, 3]) == 0b101
    assert blade_indices(0b101) == (1, 3)
    assert blade_indices(0) == ()
    assert grade(0b1011) == 3
    assert full_mask(4) == 0b1111
    assert blades_of_grade(3, 2) == [0b011, 0b101, 0b110]


def test_sign_of_interleave():
    assert sign_of_interleave(0b01, 0b10) == 1
    assert sign_of_interleave(0b10, 0b01) == -1
    assert sign_of_interleave(0b11, 0b10) == 0
    # e3 ^ (e1 ^ e2) -> two transpositions
    assert sign_of_interleave(0b100, 0b011) == 1


def test_blade_constructor_sorts_with_sign():
    assert ExteriorElement.blade(3, [2, 1]) == -ExteriorElement.blade(3, [1, 2])
    assert ExteriorElement.blade(3, [3, 2, 1]).top_form_coefficient() == -1
    assert ExteriorElement.blade(3, [2, 3, 1]).top_form_coefficient() == 1
    assert not ExteriorElement.blade(3, [1, 2, 1])


def test_wedge_of_basis_vectors():
    e = [ExteriorElement.basis_vector(3, i) for i in (1, 2, 3)]
    assert e[0] ^ e[1] ^ e[2] == ExteriorElement.top_form(3)
    assert e[2] ^ e[1] ^ e[0] == -ExteriorElement.top_form(3)
    assert not (e[1] ^ e[1])
    assert wedge(ExteriorElement.scalar(3, 2), e[0]) == e[0] * 2


@settings(max_examples=50, deadline=None)
@given(vectors(3), vectors(3))
def test_vectors_anticommute(u, v):
    assert u ^ v == -(v ^ u)
    assert not (u ^ u)


@settings(max_examples=30, deadline=None)
@given(matrices(3))
def test_wedge_of_columns_is_determinant(a):
    columns = [ExteriorElement.from_vector(column) for column in a.columns()]
    product = columns[0] ^ columns[1] ^ columns[2]
    assert top_form_coefficient(product) == a.determinant()
    assert product.grades() in ([], [3])


def test_graded_commutativity_across_grades(rng):
    n = 4
    for _ in range(20):
        x, y = random_element(rng, n, density=0.8), random_element(rng, n, density=0.8)
        for p in range(n + 1):
            for q in range(n + 1 - p):
                u, v = x.grade_component(p), y.grade_component(q)
                assert u ^ v == (v ^ u) * (-1) ** (p * q)
                assert (u ^ v).grades() in ([], [p + q])


def test_wedge_is_associative_and_bilinear(rng):
    for _ in range(25):
        x, y, z = (random_element(rng, 4) for _ in range(3))
        assert (x ^ y) ^ z == x ^ (y ^ z)
        assert x ^ (y + z) == (x ^ y) + (x ^ z)
        assert (x * Fraction(2, 3)) ^ y == (x ^ y).scale(Fraction(2, 3))


def test_zero_coefficients_are_dropped():
    element = ExteriorElement(2, {0b01: 0, 0b10: Fraction(1, 2)})
    assert len(element) == 1
    assert (element - element) == ExteriorElement.zero(2)
    assert not (element - element)
    assert element.scale(0).terms == {}


def test_grades_and_components():
    element = ExteriorElement(3, {0: 1, 0b011: 2, 0b101: 3})
    assert element.grades() == [0, 2]
    assert not element.is_homogeneous()
    assert element.grade_component(2) == ExteriorElement(3, {0b011: 2, 0b101: 3})
    assert element.coefficient((1, 3)) == 3
    assert element.coefficient(0b110) == 0
    assert ExteriorElement.from_vector([1, 0, 5]).vector_coordinates() == (1, 0, 5)


def test_dimension_checks():
    with pytest.raises(DimensionMismatchError):
        ExteriorElement(17)
    with pytest.raises(DimensionMismatchError):
        ExteriorElement(2, {0b100: 1})
    with pytest.raises(DimensionMismatchError):
        ExteriorElement.basis_vector(2, 3)
    with pytest.raises(DimensionMismatchError):
        ExteriorElement.zero(2) + ExteriorElement.zero(3)


def test_json_form():
    element = ExteriorElement(3, {0b001: Fraction(1, 2), 0b110: -3})
    document = element.to_json()
    assert document == {
        "n": 3,
        "terms": [{"blade": [1], "coeff": "1/2"}, {"blade": [2, 3], "coeff": "-3"}],
    }
    assert ExteriorElement.from_json(document) == element
