"""Tests for the generalized Cayley-Hamilton identity and the star products."""

import pytest
from hypothesis import given, settings

from hs_trace_tool import hs_identities
from hs_trace_tool.hs_exterior import ExteriorElement
from hs_trace_tool.hs_identities import (
    IdentityReport,
    classical_ch_operator_residual,
    classical_ch_residual,
    conjugacy_invariance_check,
    cubic_ch_residual,
    delta_det,
    eq17_residual,
    eq_fin_residual,
    generalized_ch_residual,
    ibp_check,
    multidegree_ch_residual,
    oracle_equivalence_check,
    star2,
    star2_jacobi_defect,
    star2_skew_residual,
    star3,
    star3_symmetrized_residual,
    tr_square_identity,
)
from hs_trace_tool.hs_matrix import Matrix
from hs_trace_tool.hs_scalars import FLOAT, DimensionMismatchError, IndexRangeError
from hs_trace_tool.hs_series import EndoTuple, derivation_from_tuple, series_inverse
from hs_trace_tool.hs_suite import random_invertible, random_tuple
from hs_trace_tool.hs_traces import TraceTensor, trace_tensor_via_hs

from conftest import mat, matrices, small_fractions


def E(size, row, col):
    return Matrix.elementary(size, row, col)


# Generalized Cayley-Hamilton

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generalized_cayley_hamilton(n, make_tuple):
    for _ in range(50):
        report = generalized_ch_residual(make_tuple(n))
        assert report.is_zero
        assert report.residual.is_zero()


def test_polarized_two_by_two(golden_pair):
    a, b = golden_pair
    tau = trace_tensor_via_hs(golden_pair)
    expected = a @ b + b @ a - b * tau[(1, 0)] - a * tau[(0, 1)] + Matrix.identity(2) * tau[(1, 1)]
    assert expected.is_zero()
    assert generalized_ch_residual(golden_pair, tau).passed


def test_wrong_traces_leave_a_residual(golden_pair):
    tau = trace_tensor_via_hs(golden_pair)
    wrong = TraceTensor(2, 2, {**tau.entries, (1, 1): tau[(1, 1)] + 1})
    report = generalized_ch_residual(golden_pair, wrong)
    assert not report.is_zero
    assert report.residual == Matrix.identity(2)


def test_generalized_cayley_hamilton_needs_square_tuple():
    with pytest.raises(DimensionMismatchError):
        generalized_ch_residual(EndoTuple([Matrix.identity(2)] * 3, allow_rectangular=True))


def test_float_mode_uses_relative_tolerance(rng):
    phi = random_tuple(rng, 3, mode=FLOAT)
    report = generalized_ch_residual(phi)
    assert report.max_abs is not None
    assert report.max_abs < 1e-9
    assert report.passed


@pytest.mark.slow
def test_dimension_six_completes(rng):
    phi = random_tuple(rng, 6)
    assert generalized_ch_residual(phi).is_zero


# Multidegree and classical forms

@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_classical_cayley_hamilton(size, make_matrix):
    for _ in range(20):
        report = classical_ch_residual(make_matrix(size))
        assert report.is_zero
        assert report.oracle_match is True


def test_classical_cayley_hamilton_2x2():
    report = classical_ch_residual(mat([[1, 2], [3, 4]]))
    assert report.passed
    assert report.details["invariants"] == ["5", "-2"]


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_classical_cayley_hamilton_on_exterior_algebra(size, make_matrix):
    for _ in range(10):
        report = classical_ch_operator_residual(make_matrix(size))
        assert report.is_zero
        assert report.residual.shape == (2 ** size - 1, 2 ** size - 1)


def test_operator_residual_excludes_grade_zero():
    # on the scalars only (-1)^n e_n would remain, here det(A) = -2
    a = mat([[1, 2], [3, 4]])
    d = series_inverse(derivation_from_tuple(EndoTuple([a], allow_rectangular=True)))
    scalar = ExteriorElement.scalar(2, 1)
    assert not d.coefficient((1,)).apply(scalar)
    assert not d.coefficient((2,)).apply(scalar)
    assert classical_ch_operator_residual(a).passed
    # on the top form D_2 = tr(A)^2 - det(A)
    assert d.coefficient((2,)).apply(ExteriorElement.top_form(2)).top_form_coefficient() == 27


def test_operator_residual_detects_wrong_invariants(monkeypatch):
    a = mat([[1, 2], [3, 4]])
    monkeypatch.setattr(hs_identities, "classical_invariants", lambda matrix: (5, -1))
    report = classical_ch_operator_residual(a)
    assert not report.is_zero
    assert report.residual == Matrix.identity(3)


def test_operator_residual_in_float_mode():
    a = Matrix([[0.1, 0.7, 0.2], [0.3, 0.9, 0.4], [0.5, 0.6, 0.8]])
    report = classical_ch_operator_residual(a)
    assert report.is_zero
    assert report.max_abs < 1e-12


def test_multidegree_identity(make_tuple):
    for _ in range(20):
        assert multidegree_ch_residual(make_tuple(3, count=2), (2, 1)).is_zero
        assert multidegree_ch_residual(make_tuple(2, count=3), (1, 1, 1)).is_zero
        assert multidegree_ch_residual(make_tuple(2), (2, 3)).is_zero
        assert multidegree_ch_residual(make_tuple(3, count=1), (5,)).is_zero


def test_multidegree_specializes_to_eq17(make_tuple):
    pair = make_tuple(3, count=2)
    assert multidegree_ch_residual(pair, (2, 1)).residual == eq17_residual(pair[0], pair[1]).residual


def test_multidegree_rejects_low_degree(golden_pair):
    with pytest.raises(IndexRangeError, match=r"\|i\| >= 2"):
        multidegree_ch_residual(golden_pair, (1, 0))
    with pytest.raises(IndexRangeError):
        multidegree_ch_residual(golden_pair, (1, 1, 1))


# Star products

def test_delta_det():
    a = mat([[1, 2], [3, 4]])
    b = mat([[0, 1], [-1, 0]])
    assert delta_det([a, b], (0, 0)) == 1
    assert delta_det([a, b], (1, 0)) == 1
    assert delta_det([a, b], (1, 1)) == det_columns(a.column(0), b.column(1))
    with pytest.raises(IndexRangeError):
        delta_det([a, b], (2, 0))
    with pytest.raises(DimensionMismatchError):
        delta_det([a], (1, 0))


def det_columns(*columns):
    return Matrix.from_columns(columns).determinant()


def test_star2_is_skew(make_matrix):
    for _ in range(100):
        a, b = make_matrix(2), make_matrix(2)
        assert star2_skew_residual(a, b).is_zero
        assert star2(a, a).is_zero()


def test_star2_of_complementary_projections():
    assert star2(mat([[1, 0], [0, 0]]), mat([[0, 0], [0, 1]])).is_zero()


def test_star2_is_not_a_lie_bracket():
    defect = star2_jacobi_defect(E(2, 1, 1), E(2, 1, 2), E(2, 2, 1))
    assert defect == E(2, 1, 1)


@settings(max_examples=40, deadline=None)
@given(matrices(2), matrices(2), matrices(2), small_fractions)
def test_star2_is_bilinear(a, a2, b, scale):
    assert star2(a * scale + a2, b) == star2(a, b) * scale + star2(a2, b)
    assert star2(b, a * scale + a2) == star2(b, a) * scale + star2(b, a2)


@settings(max_examples=25, deadline=None)
@given(matrices(3), matrices(3), matrices(3), matrices(3), small_fractions)
def test_star3_is_trilinear(a, b, c, d, scale):
    mixed = a * scale + d
    assert star3(mixed, b, c) == star3(a, b, c) * scale + star3(d, b, c)
    assert star3(b, mixed, c) == star3(b, a, c) * scale + star3(b, d, c)
    assert star3(b, c, mixed) == star3(b, c, a) * scale + star3(b, c, d)


@settings(max_examples=40, deadline=None)
@given(matrices(2), matrices(2))
def test_star2_skew_sum_is_the_two_variable_identity(a, b):
    skew = star2_skew_residual(a, b)
    general = generalized_ch_residual(EndoTuple([a, b]))
    assert skew.residual == general.residual
    assert skew.is_zero and general.is_zero


def test_star3_symmetrization_vanishes(make_matrix):
    for _ in range(100):
        a, b, c = make_matrix(3), make_matrix(3), make_matrix(3)
        assert star3_symmetrized_residual(a, b, c).is_zero
        assert cubic_ch_residual(a).is_zero
        assert eq_fin_residual(a, b).is_zero


def test_top_trace_enters_with_weight_one(make_matrix):
    phi = EndoTuple([make_matrix(3), make_matrix(3), make_matrix(3)])
    tau = trace_tensor_via_hs(phi)
    without_top = TraceTensor(3, 3, {**tau.entries, (1, 1, 1): 0})
    # the six k = 3 terms carry weight -1/3! each
    assert generalized_ch_residual(phi, without_top).residual == Matrix.identity(3) * tau[(1, 1, 1)]


def test_star3_is_not_antisymmetric_under_transpositions():
    a, b, c = E(3, 1, 2), E(3, 2, 3), E(3, 3, 1)
    assert star3(a, b, c) == E(3, 1, 1)
    assert star3(b, a, c).is_zero()


def test_corrupted_partial_determinant_is_detected(monkeypatch, make_matrix):
    original = hs_identities.delta_det

    def corrupted(matrices, index):
        value = original(matrices, index)
        return value + 1 if tuple(index) == (1, 1, 1) else value

    monkeypatch.setattr(hs_identities, "delta_det", corrupted)
    report = star3_symmetrized_residual(make_matrix(3), make_matrix(3), make_matrix(3))
    assert not report.is_zero
    assert report.residual == Matrix.identity(3) * -6


def test_eq17(make_tuple):
    for _ in range(50):
        a, b = make_tuple(3, count=2)
        assert eq17_residual(a, b).is_zero


def test_star_products_check_shapes():
    with pytest.raises(DimensionMismatchError):
        star2(Matrix.identity(3), Matrix.identity(3))
    with pytest.raises(DimensionMismatchError):
        star3(Matrix.identity(2), Matrix.identity(2), Matrix.identity(2))


# Scalar and tensor identities

def test_trace_of_square(make_matrix):
    for _ in range(100):
        assert tr_square_identity(make_matrix(2)).is_zero
    assert tr_square_identity(mat([[1, 2], [3, 4]])).residual == 0


@pytest.mark.parametrize("n", [2, 3])
def test_conjugacy_invariance(n, make_tuple, rng):
    for _ in range(20):
        report = conjugacy_invariance_check(make_tuple(n), random_invertible(rng, n))
        assert report.is_zero
        assert report.residual == {}


def test_oracle_equivalence_report(make_tuple):
    report = oracle_equivalence_check(make_tuple(3), max_workers=1)
    assert report.passed
    assert report.oracle_match is True


def test_integration_by_parts_on_all_blades(make_tuple):
    report = ibp_check(make_tuple(2))
    assert report.passed
    assert report.residual == 0
    assert report.details["pairs"] == 16
    assert report.details["inverse_ok"] is True


# Reports

def test_report_json():
    report = tr_square_identity(mat([[1, 2], [3, 4]])).with_seed(7)
    assert report.to_json() == {"identity": "trsq", "n": 2, "is_zero": True, "residual": "0", "seed": 7}

    matrix_report = star2_skew_residual(mat([[1, 0], [0, 0]]), mat([[0, 1], [0, 0]]))
    assert matrix_report.to_json()["residual"] == [["0", "0"], ["0", "0"]]


def test_failed_oracle_fails_report():
    report = IdentityReport("classical-ch", 2, Matrix.zero(2), True, oracle_match=False)
    assert not report.passed
    assert report.to_json()["oracle_match"] is False


def test_float_report_has_magnitude():
    report = tr_square_identity(Matrix([[0.1, 0.2], [0.3, 0.4]]))
    assert report.passed
    assert isinstance(report.max_abs, float)
    assert report.residual == pytest.approx(0.0, abs=1e-12)
