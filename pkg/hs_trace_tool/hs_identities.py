#!/usr/bin/env python3
"""
HS Trace Tool - Identities
Residuals of the generalized Cayley-Hamilton identity, its multidegree
form, the star products built from partial determinants, and the scalar
identities that follow from them. Every check returns an IdentityReport
whose residual is exactly zero when the identity holds.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .hs_exterior import ExteriorElement
from .hs_matrix import Matrix, det_bareiss
from .hs_scalars import (
    DimensionMismatchError,
    FLOAT,
    IndexRangeError,
    RATIONAL,
    Scalar,
    field_for,
)
from .hs_series import (
    IBP_FORMS,
    BladeOperator,
    EndoTuple,
    MultiIndex,
    OperatorSeries,
    derivation_from_tuple,
    format_index,
    geometric_series_on_v,
    identity_series,
    indices_below,
    integration_by_parts_residual,
    is_square_free,
    series_inverse,
    series_product,
    sub_indices,
)
from .hs_traces import (
    TraceTensor,
    classical_invariants,
    faddeev_leverrier,
    oracle_trace_tensor,
    trace_tensor_via_hs,
)

DEFAULT_TOL = 1e-9

# Identity names understood by `verify`
THM48 = "thm48"
STAR2 = "star2"
STAR3 = "star3"
EQ17 = "eq17"
IBP = "ibp"
CONJUGACY = "conjugacy"
TRSQ = "trsq"
CLASSICAL_CH = "classical-ch"
CLASSICAL_CH_OPERATOR = "classical-ch-operator"
MULTIDEGREE = "multidegree"
IDENTITY_NAMES = (THM48, STAR2, STAR3, EQ17, IBP, CONJUGACY, TRSQ, CLASSICAL_CH, CLASSICAL_CH_OPERATOR,
                  MULTIDEGREE)

# Additional report names used by the random suite
ORACLE = "oracle"
STAR3_CUBIC = "star3-cubic"
STAR3_FIN = "star3-fin"


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def _is_floating(value) -> bool:
    if isinstance(value, float):
        return True
    if isinstance(value, Matrix):
        return any(isinstance(x, float) for x in value.entries())
    if isinstance(value, ExteriorElement):
        return any(isinstance(c, float) for _, c in value.items())
    if isinstance(value, EndoTuple):
        return any(_is_floating(matrix) for matrix in value)
    if isinstance(value, dict):
        return any(_is_floating(v) for v in value.values())
    if isinstance(value, (list, tuple)):
        return any(_is_floating(v) for v in value)
    return False


def _magnitude(value) -> float:
    if isinstance(value, Matrix):
        return value.max_abs()
    if isinstance(value, ExteriorElement):
        return max((abs(float(c)) for _, c in value.items()), default=0.0)
    if isinstance(value, dict):
        return max((_magnitude(v) for v in value.values()), default=0.0)
    return abs(float(value))


def _render_residual(residual, mode: str):
    field_ = field_for(mode)
    if isinstance(residual, Matrix):
        return [[field_.render(x) for x in row] for row in residual.rows]
    if isinstance(residual, dict):
        rendered = []
        for index, value in residual.items():
            entry = {"index": list(index)}
            if isinstance(value, ExteriorElement):
                entry["element"] = value.to_json(mode)
            else:
                entry["value"] = field_.render(value)
            rendered.append(entry)
        return rendered
    return field_.render(residual)


@dataclass
class IdentityReport:
    """Outcome of evaluating one identity on concrete inputs"""

    identity: str
    n: int
    residual: Any
    is_zero: bool
    max_abs: Optional[float] = None
    seed: Optional[int] = None
    oracle_match: Optional[bool] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.is_zero and self.oracle_match is not False

    def with_seed(self, seed: Optional[int]) -> "IdentityReport":
        self.seed = seed
        return self

    def to_json(self, mode: str = RATIONAL) -> dict:
        document = {
            "identity": self.identity,
            "n": self.n,
            "is_zero": self.is_zero,
            "residual": _render_residual(self.residual, mode),
            "seed": self.seed,
        }
        if self.max_abs is not None:
            document["max_abs"] = self.max_abs
        if self.oracle_match is not None:
            document["oracle_match"] = self.oracle_match
        if self.details:
            document["details"] = self.details
        return document


class _ResidualSum:
    """Running sum of matrix terms; in float mode it also tracks the largest term"""

    def __init__(self, size: int, floating: bool):
        self.total = Matrix.zero(size, zero=0.0 if floating else 0)
        self.floating = floating
        self.scale = 0.0

    def add(self, term: Matrix, weight: Scalar = 1):
        if weight != 1:
            term = term * weight
        if self.floating:
            self.scale = max(self.scale, term.max_abs())
        self.total = self.total + term


def _finish(identity: str, n: int, residual, floating: bool, scale: float = 0.0,
            tol: float = DEFAULT_TOL, **extra) -> IdentityReport:
    if not floating:
        if isinstance(residual, Matrix):
            is_zero = residual.is_zero()
        elif isinstance(residual, dict):
            is_zero = not residual
        else:
            is_zero = residual == 0
        return IdentityReport(identity, n, residual, is_zero, **extra)
    max_abs = _magnitude(residual)
    is_zero = max_abs <= tol * max(1.0, scale)
    return IdentityReport(identity, n, residual, is_zero, max_abs=max_abs, **extra)


def _weight_field(floating: bool):
    return field_for(FLOAT if floating else RATIONAL)


# ---------------------------------------------------------------------------
# Generalized Cayley-Hamilton
# ---------------------------------------------------------------------------

def generalized_ch_residual(phi: EndoTuple, tau: Optional[TraceTensor] = None,
                            tol: float = DEFAULT_TOL) -> IdentityReport:
    """sum_{k=0..n} (-1)^k / k! sum_{sigma in S_n} tau_{e_s(1)+...+e_s(k)} A_s(k+1) ... A_s(n).

    Evaluated literally over all (n + 1) n! terms. For k = 0 the trace is
    tau_0 = 1 and for k = n the product is the identity.
    """
    n = phi.n
    if phi.m != n:
        raise DimensionMismatchError(f"The identity needs exactly {n} matrices, got {phi.m}")
    tau = tau if tau is not None else trace_tensor_via_hs(phi)
    if (tau.n, tau.m) != (phi.n, phi.m):
        raise DimensionMismatchError(f"Trace tensor over (n={tau.n}, m={tau.m}) for a tuple over (n={n}, m={phi.m})")

    floating = _is_floating(phi)
    weights = _weight_field(floating)
    identity = Matrix.identity(n)
    products: Dict[Tuple[int, ...], Matrix] = {(): identity}

    def ordered_product(letters: Tuple[int, ...]) -> Matrix:
        if letters not in products:
            products[letters] = phi[letters[0]] @ ordered_product(letters[1:])
        return products[letters]

    total = _ResidualSum(n, floating)
    for k in range(n + 1):
        weight = weights.inverse_factorial(k) * (-1) ** k
        for sigma in itertools.permutations(range(n)):
            chosen = set(sigma[:k])
            trace = tau.get(tuple(int(j in chosen) for j in range(n)))
            if trace == 0:
                continue
            total.add(ordered_product(sigma[k:]), weight * trace)
    return _finish(THM48, n, total.total, floating, total.scale, tol)


def multidegree_ch_residual(phi: EndoTuple, index: Sequence[int], tau: Optional[TraceTensor] = None,
                            tol: float = DEFAULT_TOL) -> IdentityReport:
    """sum_{j <= i, |j| <= n} (-1)^|j| tau_j W_{i-j} for |i| >= n, W being the word sums.

    Holds for any number m of matrices acting on an n-dimensional space.
    """
    index = tuple(index)
    n, m = phi.n, phi.m
    if len(index) != m:
        raise IndexRangeError(f"Multi-index {format_index(index)} has length {len(index)}, expected {m}")
    if sum(index) < n:
        raise IndexRangeError(f"The multidegree identity needs |i| >= {n}, got {sum(index)}")
    tau = tau if tau is not None else trace_tensor_via_hs(phi)
    words = geometric_series_on_v(phi, bound=index)

    floating = _is_floating(phi)
    total = _ResidualSum(n, floating)
    for j in indices_below(index):
        if sum(j) > n:
            continue
        trace = tau.get(j)
        if trace == 0:
            continue
        total.add(words[sub_indices(index, j)], trace if sum(j) % 2 == 0 else -trace)
    return _finish(MULTIDEGREE, n, total.total, floating, total.scale, tol,
                   details={"index": list(index), "variables": m})


def classical_ch_residual(matrix: Matrix, tol: float = DEFAULT_TOL) -> IdentityReport:
    """A^n - e_1 A^(n-1) + ... + (-1)^n e_n I with e_k from the univariate derivation.

    The invariants are cross-checked against Faddeev-LeVerrier; disagreement
    shows up as oracle_match = False.
    """
    n = matrix.size
    invariants = classical_invariants(matrix)
    oracle = faddeev_leverrier(matrix)
    floating = _is_floating(matrix)

    total = _ResidualSum(n, floating)
    total.add(matrix.power(n))
    for k, e_k in enumerate(invariants, 1):
        total.add(matrix.power(n - k), e_k if k % 2 == 0 else -e_k)

    if floating:
        scale = max([1.0] + [abs(float(x)) for x in oracle])
        oracle_match = all(abs(float(a) - float(b)) <= tol * scale for a, b in zip(invariants, oracle))
    else:
        oracle_match = tuple(invariants) == tuple(oracle)
    mode = FLOAT if floating else RATIONAL
    return _finish(CLASSICAL_CH, n, total.total, floating, total.scale, tol,
                   oracle_match=oracle_match,
                   details={"invariants": [field_for(mode).render(e) for e in invariants]})


def _block_on(operator: BladeOperator, masks: Sequence[int]) -> Matrix:
    return Matrix([[operator.column(col).coefficient(row) for col in masks] for row in masks])


def classical_ch_operator_residual(matrix: Matrix, tol: float = DEFAULT_TOL) -> IdentityReport:
    """D_n - e_1 D_(n-1) + ... + (-1)^n e_n on the exterior algebra, D being the inverse of 1 - A z.

    D_i is zero on grade 0 for i > 0, so only (-1)^n e_n survives there; the
    residual is the block on the blades of grade >= 1.
    """
    n = matrix.size
    d = series_inverse(derivation_from_tuple(EndoTuple([matrix], allow_rectangular=True)))
    invariants = classical_invariants(matrix)
    masks = list(range(1, 1 << n))
    floating = _is_floating(matrix)

    total = _ResidualSum(len(masks), floating)
    total.add(_block_on(d.coefficient((n,)), masks))
    for k, e_k in enumerate(invariants, 1):
        total.add(_block_on(d.coefficient((n - k,)), masks), e_k if k % 2 == 0 else -e_k)
    return _finish(CLASSICAL_CH_OPERATOR, n, total.total, floating, total.scale, tol,
                   details={"blades": len(masks)})


# ---------------------------------------------------------------------------
# Partial determinants and star products
# ---------------------------------------------------------------------------

def delta_det(matrices: Sequence[Matrix], index: Sequence[int]) -> Scalar:
    """det of the matrix whose column j is A_j e_j when i_j = 1 and e_j otherwise"""
    index = tuple(index)
    if not is_square_free(index):
        raise IndexRangeError(f"Partial determinants need a square-free index, got {format_index(index)}")
    if len(matrices) != len(index):
        raise DimensionMismatchError(f"{len(matrices)} matrices for an index of length {len(index)}")
    n = len(index)
    for matrix in matrices:
        matrix.require_shape(n)
    basis = Matrix.identity(n)
    columns = [matrices[j].column(j) if flag else basis.column(j) for j, flag in enumerate(index)]
    return det_bareiss(Matrix.from_columns(columns))


def star2(a: Matrix, b: Matrix) -> Matrix:
    """A*B = AB - a11 B - b22 A + det(C1(A), C2(B)) I for 2 x 2 matrices"""
    a.require_shape(2)
    b.require_shape(2)
    mixed = det_bareiss(Matrix.from_columns([a.column(0), b.column(1)]))
    return a @ b - b * a[0, 0] - a * b[1, 1] + Matrix.identity(2) * mixed


def star3(a: Matrix, b: Matrix, c: Matrix) -> Matrix:
    """Tri-linear product of 3 x 3 matrices built from the partial determinants of (A, B, C).

    A*B*C = ABC - d100 BC - d010 CA - d001 AB + d110 C + d011 A + d101 B - d111 I
    """
    for matrix in (a, b, c):
        matrix.require_shape(3)
    triple = (a, b, c)
    return (
        a @ b @ c
        - (b @ c) * delta_det(triple, (1, 0, 0))
        - (c @ a) * delta_det(triple, (0, 1, 0))
        - (a @ b) * delta_det(triple, (0, 0, 1))
        + c * delta_det(triple, (1, 1, 0))
        + a * delta_det(triple, (0, 1, 1))
        + b * delta_det(triple, (1, 0, 1))
        - Matrix.identity(3) * delta_det(triple, (1, 1, 1))
    )


def _sum_report(identity: str, n: int, terms: List[Matrix], tol: float, inputs) -> IdentityReport:
    floating = _is_floating(list(inputs))
    total = _ResidualSum(n, floating)
    for term in terms:
        total.add(term)
    return _finish(identity, n, total.total, floating, total.scale, tol)


def star2_skew_residual(a: Matrix, b: Matrix, tol: float = DEFAULT_TOL) -> IdentityReport:
    """A*B + B*A"""
    return _sum_report(STAR2, 2, [star2(a, b), star2(b, a)], tol, (a, b))


def star3_symmetrized_residual(a: Matrix, b: Matrix, c: Matrix, tol: float = DEFAULT_TOL) -> IdentityReport:
    """Sum of the star product over all six orderings of (A, B, C)"""
    terms = [star3(*order) for order in itertools.permutations((a, b, c))]
    return _sum_report(STAR3, 3, terms, tol, (a, b, c))


def eq_fin_residual(a: Matrix, b: Matrix, tol: float = DEFAULT_TOL) -> IdentityReport:
    """A*A*B + B*A*A + A*B*A"""
    return _sum_report(STAR3_FIN, 3, [star3(a, a, b), star3(b, a, a), star3(a, b, a)], tol, (a, b))


def cubic_ch_residual(a: Matrix, tol: float = DEFAULT_TOL) -> IdentityReport:
    """A*A*A, which equals A^3 - tr(A) A^2 + e_2 A - det(A) I"""
    return _sum_report(STAR3_CUBIC, 3, [star3(a, a, a)], tol, (a,))


def star2_jacobi_defect(a: Matrix, b: Matrix, c: Matrix) -> Matrix:
    """A*(B*C) + B*(C*A) + C*(A*B)"""
    return star2(a, star2(b, c)) + star2(b, star2(c, a)) + star2(c, star2(a, b))


# ---------------------------------------------------------------------------
# Two matrices on a three-dimensional space
# ---------------------------------------------------------------------------

def eq17_residual(a: Matrix, b: Matrix, tau: Optional[TraceTensor] = None,
                  tol: float = DEFAULT_TOL) -> IdentityReport:
    """(A^2B + ABA + BA^2) - t10 (AB + BA) - t01 A^2 + t20 B + t11 A - t21 I for 3 x 3 A, B.

    The traces t are those of the pair (A, B), i.e. of the two-variable
    derivation 1 - A z1 - B z2 on a three-dimensional space.
    """
    a.require_shape(3)
    b.require_shape(3)
    pair = EndoTuple([a, b], allow_rectangular=True)
    tau = tau if tau is not None else trace_tensor_via_hs(pair)
    if (tau.n, tau.m) != (3, 2):
        raise DimensionMismatchError(f"Expected the trace tensor of a pair on a 3-dimensional space, got (n={tau.n}, m={tau.m})")
    a2 = a @ a
    terms = [
        (a2 @ b + a @ b @ a + b @ a2, 1),
        (a @ b + b @ a, -tau.get((1, 0))),
        (a2, -tau.get((0, 1))),
        (b, tau.get((2, 0))),
        (a, tau.get((1, 1))),
        (Matrix.identity(3), -tau.get((2, 1))),
    ]
    floating = _is_floating(pair)
    total = _ResidualSum(3, floating)
    for term, weight in terms:
        total.add(term, weight)
    return _finish(EQ17, 3, total.total, floating, total.scale, tol)


# ---------------------------------------------------------------------------
# Scalar and tensor identities
# ---------------------------------------------------------------------------

def tr_square_identity(a: Matrix, tol: float = DEFAULT_TOL) -> IdentityReport:
    """tr(A^2) + 2 det(A) - tr(A)^2 for a 2 x 2 matrix"""
    a.require_shape(2)
    trace = a.trace()
    terms = [(a @ a).trace(), 2 * a.determinant(), -(trace * trace)]
    residual = sum(terms)
    floating = _is_floating(a)
    scale = max(abs(float(t)) for t in terms) if floating else 0.0
    return _finish(TRSQ, 2, residual, floating, scale, tol)


def _tensor_report(identity: str, left: TraceTensor, right: TraceTensor, floating: bool,
                   tol: float, **extra) -> IdentityReport:
    diff = left.difference(right)
    scale = max((abs(float(v)) for v in left.entries.values()), default=0.0) if floating else 0.0
    return _finish(identity, left.n, diff, floating, scale, tol, **extra)


def conjugacy_invariance_check(phi: EndoTuple, p: Matrix, tol: float = DEFAULT_TOL) -> IdentityReport:
    """Difference of the trace tensors of phi and (P phi_1 P^-1, ..., P phi_m P^-1)"""
    p.require_shape(phi.n)
    conjugated = phi.conjugate(p)
    floating = _is_floating(phi) or _is_floating(p)
    return _tensor_report(CONJUGACY, trace_tensor_via_hs(phi), trace_tensor_via_hs(conjugated), floating, tol)


def oracle_equivalence_check(phi: EndoTuple, max_workers: Optional[int] = None,
                             tol: float = DEFAULT_TOL) -> IdentityReport:
    """Difference between the HS trace tensor and the determinant-sum oracle"""
    via_hs = trace_tensor_via_hs(phi)
    via_oracle = oracle_trace_tensor(phi, max_workers=max_workers)
    report = _tensor_report(ORACLE, via_hs, via_oracle, _is_floating(phi), tol)
    report.oracle_match = report.is_zero
    return report


# ---------------------------------------------------------------------------
# Integration by parts
# ---------------------------------------------------------------------------

def _series_magnitude(*series: OperatorSeries) -> float:
    scale = 0.0
    for s in series:
        for operator in s.coeffs.values():
            for image in operator.columns.values():
                scale = max(scale, _magnitude(image))
    return scale


def ibp_check(phi: EndoTuple, pairs: Optional[Sequence[Tuple[ExteriorElement, ExteriorElement]]] = None,
              forms: Sequence[str] = IBP_FORMS, tol: float = DEFAULT_TOL) -> IdentityReport:
    """Integration by parts for Dbar = 1 - sum phi_k z_k and its series inverse.

    Without explicit pairs every pair of basis blades is checked, which by
    bilinearity covers all of the exterior algebra. The residual is the number
    of nonzero residual coefficients; the first few failures are listed.
    """
    n = phi.n
    dbar = derivation_from_tuple(phi)
    d = series_inverse(dbar)
    floating = _is_floating(phi)
    if pairs is None:
        blades = [ExteriorElement(n, {mask: 1}) for mask in range(1 << n)]
        pairs = [(u, v) for u in blades for v in blades]

    threshold = tol * max(1.0, _series_magnitude(dbar, d)) if floating else 0.0
    failures = []
    failing_coefficients = 0
    for u, v in pairs:
        for form in forms:
            residual = integration_by_parts_residual(d, dbar, u, v, form=form)
            bad = {index: value for index, value in residual.items() if _magnitude(value) > threshold}
            failing_coefficients += len(bad)
            if bad and len(failures) < 5:
                first = next(iter(bad))
                failures.append({"form": form, "index": list(first), "u": u.to_json(FLOAT if floating else RATIONAL),
                                 "v": v.to_json(FLOAT if floating else RATIONAL)})

    inverse_ok = series_product(dbar, d) == identity_series(n, phi.m, dbar.truncation) if not floating else None
    details = {"pairs": len(pairs), "forms": list(forms)}
    if inverse_ok is not None:
        details["inverse_ok"] = inverse_ok
    if failures:
        details["failures"] = failures
    return IdentityReport(IBP, n, failing_coefficients, failing_coefficients == 0 and inverse_ok is not False,
                          details=details)
