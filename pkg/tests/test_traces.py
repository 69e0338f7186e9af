"""Tests for trace tensors, the determinant oracle and classical invariants."""

import math
from fractions import Fraction

import pytest

from hs_trace_tool.hs_matrix import Matrix, det_bareiss
from hs_trace_tool.hs_scalars import DimensionMismatchError, IndexRangeError
from hs_trace_tool.hs_series import EndoTuple, multi_indices
from hs_trace_tool.hs_traces import (
    TraceTensor,
    classical_invariants,
    collapse_residual,
    faddeev_leverrier,
    labelings,
    oracle_trace_tensor,
    trace_tensor_via_hs,
    trace_via_determinant_oracle,
)

from conftest import mat


def det_of_columns(*columns):
    return det_bareiss(Matrix.from_columns(columns))


def test_golden_pair(golden_pair):
    tensor = trace_tensor_via_hs(golden_pair)
    assert tensor.full_table() == [
        ((0, 0), 1),
        ((1, 0), 5),
        ((0, 1), 0),
        ((2, 0), -2),
        ((1, 1), -1),
        ((0, 2), 1),
    ]


def test_pair_traces_match_closed_forms(make_tuple):
    for _ in range(50):
        phi = make_tuple(2)
        a, b = phi
        tensor = trace_tensor_via_hs(phi)
        assert tensor[(0, 0)] == 1
        assert tensor[(1, 0)] == a.trace()
        assert tensor[(0, 1)] == b.trace()
        assert tensor[(2, 0)] == a.determinant()
        assert tensor[(0, 2)] == b.determinant()
        assert tensor[(1, 1)] == det_of_columns(a.column(0), b.column(1)) + det_of_columns(b.column(0), a.column(1))


def test_triple_traces_match_closed_forms(make_tuple):
    for _ in range(50):
        phi = make_tuple(3)
        a, b, _ = phi
        tensor = trace_tensor_via_hs(phi)
        assert tensor[(1, 0, 0)] == a.trace()
        assert tensor[(3, 0, 0)] == a.determinant()
        assert tensor[(2, 1, 0)] == (
            det_of_columns(a.column(0), a.column(1), b.column(2))
            + det_of_columns(a.column(0), b.column(1), a.column(2))
            + det_of_columns(b.column(0), a.column(1), a.column(2))
        )


def test_identity_triple():
    tensor = trace_tensor_via_hs(EndoTuple.repeated(Matrix.identity(3)))
    assert tensor[(1, 1, 1)] == 6
    assert tensor[(3, 0, 0)] == 1
    assert tensor[(2, 1, 0)] == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_square_free_trace_of_repeated_matrix(n, make_matrix):
    for _ in range(10):
        a = make_matrix(n)
        tensor = trace_tensor_via_hs(EndoTuple.repeated(a))
        assert tensor[(1,) * n] == math.factorial(n) * a.determinant()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_oracle_equivalence(n, make_tuple):
    for _ in range(50):
        phi = make_tuple(n)
        assert trace_tensor_via_hs(phi) == oracle_trace_tensor(phi, max_workers=2)


@pytest.mark.parametrize("n", [2, 3])
def test_traces_vanish_beyond_dimension(n, make_tuple):
    for _ in range(10):
        phi = make_tuple(n)
        for index in multi_indices(n, n + 1, min_degree=n + 1):
            assert trace_via_determinant_oracle(phi, index, strict=False) == 0
    with pytest.raises(IndexRangeError):
        trace_via_determinant_oracle(phi, (n + 1,) + (0,) * (n - 1))


def test_oracle_index_validation(golden_pair):
    with pytest.raises(IndexRangeError):
        trace_via_determinant_oracle(golden_pair, (1,))
    with pytest.raises(IndexRangeError):
        trace_via_determinant_oracle(golden_pair, (-1, 1))


def test_labelings():
    assert list(labelings(2, (1, 0))) == [(0, 1), (1, 0)]
    assert len(list(labelings(4, (2, 1, 0, 0)))) == 12
    assert list(labelings(2, (1, 1))) == [(1, 2), (2, 1)]


def test_tensor_rejects_traces_beyond_dimension():
    with pytest.raises(IndexRangeError):
        TraceTensor(2, 2, {(2, 1): 1})
    assert TraceTensor(2, 2, {(2, 1): 0}) == TraceTensor(2, 2)
    with pytest.raises(IndexRangeError):
        TraceTensor(2, 2, {(1,): 1})


def test_tensor_json(golden_pair):
    tensor = trace_tensor_via_hs(golden_pair)
    document = tensor.to_json()
    assert "m" not in document
    assert document["entries"][4] == {"index": [1, 1], "value": "-1"}
    assert TraceTensor.from_json(document) == tensor

    pair_on_three = trace_tensor_via_hs(EndoTuple([Matrix.identity(3)] * 2, allow_rectangular=True))
    assert pair_on_three.to_json()["m"] == 2


def test_tensor_difference(golden_pair):
    tensor = trace_tensor_via_hs(golden_pair)
    shifted = TraceTensor(2, 2, {**tensor.entries, (0, 2): Fraction(3)})
    assert tensor.difference(shifted) == {(0, 2): -2}
    with pytest.raises(DimensionMismatchError):
        tensor.difference(TraceTensor(3, 3))


def test_tensor_mismatches_with_tolerance():
    exact = TraceTensor(2, 1, {(0,): 1.0, (1,): 1000.0, (2,): 0.5})
    rounded = TraceTensor(2, 1, {(0,): 1.0, (1,): 1000.0 + 1e-10, (2,): 0.5})
    assert exact.mismatches(rounded) == [(1,)]
    assert exact.mismatches(rounded, tol=1e-9) == []
    off = TraceTensor(2, 1, {(0,): 1.0, (1,): 1000.0, (2,): 0.6})
    assert exact.mismatches(off, tol=1e-9) == [(2,)]


@pytest.mark.parametrize("n", [2, 3])
def test_traces_are_homogeneous_in_each_slot(n, make_tuple):
    scale = Fraction(-3, 2)
    for _ in range(10):
        phi = make_tuple(n)
        tensor = trace_tensor_via_hs(phi)
        for slot in range(1, n + 1):
            scaled = trace_tensor_via_hs(phi.scaled(slot, scale))
            for index in tensor.indices():
                assert scaled[index] == scale ** index[slot - 1] * tensor[index]


@pytest.mark.parametrize("n", [2, 3])
def test_traces_are_additive_in_slots_of_weight_one(n, make_tuple, make_matrix):
    for _ in range(10):
        phi = make_tuple(n)
        extra = make_matrix(n)
        tensor = trace_tensor_via_hs(phi)
        for slot in range(n):
            replaced = list(phi.matrices)
            replaced[slot] = extra
            summed = list(phi.matrices)
            summed[slot] = phi[slot] + extra
            with_extra = trace_tensor_via_hs(EndoTuple(replaced))
            with_sum = trace_tensor_via_hs(EndoTuple(summed))
            for index in tensor.indices():
                if index[slot] == 1:
                    assert with_sum[index] == tensor[index] + with_extra[index]
                elif index[slot] == 0:
                    assert with_sum[index] == tensor[index]


@pytest.mark.parametrize("size", [2, 3, 4])
def test_classical_invariants_match_faddeev_leverrier(size, make_matrix):
    for _ in range(20):
        a = make_matrix(size)
        assert classical_invariants(a) == faddeev_leverrier(a)


def test_classical_invariants_of_2x2():
    a = mat([[1, 2], [3, 4]])
    assert classical_invariants(a) == (5, -2)
    assert faddeev_leverrier(a) == (5, -2)


@pytest.mark.parametrize("n", [2, 3])
def test_collapse_to_classical_invariants(n, make_matrix):
    for _ in range(10):
        assert collapse_residual(make_matrix(n)) == {}
