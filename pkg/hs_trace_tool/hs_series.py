#!/usr/bin/env python3
"""
HS Trace Tool - Hasse-Schmidt Series
Multivariate HS-derivations on the exterior algebra as truncated
operator-valued power series D(z) = sum_i D_i z^i.

A series has n (dimension of V), m (number of formal variables) and a
truncation T: only coefficients with total degree |i| <= T are stored.
Every coefficient is a linear operator on the 2^n blade basis.
"""

from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .hs_exterior import (
    ExteriorElement,
    blade_indices,
    blades_of_grade,
    full_mask,
    grade,
)
from .hs_matrix import Matrix
from .hs_scalars import DimensionMismatchError, IndexRangeError, Scalar, SingularMatrixError

MultiIndex = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Multi-indices
# ---------------------------------------------------------------------------

def total_degree(index: Sequence[int]) -> int:
    return sum(index)


def graded_lex_key(index: Sequence[int]):
    """Sort key: total degree first, then z1 before z2 before ... within a degree"""
    return (sum(index), tuple(-x for x in index))


def _compositions(degree: int, parts: int) -> Iterator[MultiIndex]:
    # Largest first entry first, which is graded-lex order within a degree
    if parts == 1:
        yield (degree,)
        return
    for head in range(degree, -1, -1):
        for tail in _compositions(degree - head, parts - 1):
            yield (head,) + tail


def multi_indices(m: int, max_degree: int, min_degree: int = 0) -> List[MultiIndex]:
    """All multi-indices of length m with min_degree <= |i| <= max_degree, in graded-lex order.

    >>> multi_indices(2, 2)
    [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    """
    if m < 1:
        raise IndexRangeError(f"A multi-index needs at least one variable, got m={m}")
    result = []
    for degree in range(min_degree, max_degree + 1):
        result.extend(_compositions(degree, m))
    return result


def zero_index(m: int) -> MultiIndex:
    return (0,) * m


def unit_index(m: int, k: int) -> MultiIndex:
    """e_k with 1-based k"""
    if not 1 <= k <= m:
        raise IndexRangeError(f"Unit index e_{k} out of range for {m} variables")
    return tuple(int(j == k - 1) for j in range(m))


def add_indices(a: Sequence[int], b: Sequence[int]) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub_indices(a: Sequence[int], b: Sequence[int]) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def index_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def indices_below(index: Sequence[int]) -> List[MultiIndex]:
    """All j <= index componentwise, in graded-lex order"""
    ranges = [range(x + 1) for x in index]
    found = [()]
    for r in ranges:
        found = [prefix + (x,) for prefix in found for x in r]
    return sorted(found, key=graded_lex_key)


def is_square_free(index: Sequence[int]) -> bool:
    return all(x in (0, 1) for x in index)


def format_index(index: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in index) + "]"


# ---------------------------------------------------------------------------
# Endomorphism tuples
# ---------------------------------------------------------------------------

class EndoTuple:
    """Ordered tuple (phi_1, ..., phi_m) of n x n matrices acting on V = K^n.

    By default m must equal n; ``allow_rectangular=True`` lifts that for the
    operations that work with any number of variables.
    """

    def __init__(self, matrices: Sequence[Matrix], allow_rectangular: bool = False):
        matrices = tuple(matrices)
        if not matrices:
            raise DimensionMismatchError("An endomorphism tuple needs at least one matrix")
        size = matrices[0].size
        for position, matrix in enumerate(matrices, 1):
            if not matrix.is_square() or matrix.n_rows != size:
                raise DimensionMismatchError(
                    f"Matrix {position} is {matrix.n_rows}x{matrix.n_cols}, expected {size}x{size}"
                )
        if not allow_rectangular and len(matrices) != size:
            raise DimensionMismatchError(
                f"Expected {size} matrices of size {size}x{size}, got {len(matrices)}"
            )
        self.matrices = matrices
        self.allow_rectangular = allow_rectangular

    @classmethod
    def repeated(cls, matrix: Matrix, count: Optional[int] = None) -> "EndoTuple":
        count = matrix.size if count is None else count
        return cls([matrix] * count, allow_rectangular=count != matrix.size)

    @property
    def n(self) -> int:
        """Dimension of V"""
        return self.matrices[0].n_rows

    @property
    def m(self) -> int:
        """Number of matrices, i.e. of formal variables"""
        return len(self.matrices)

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, position: int) -> Matrix:
        return self.matrices[position]

    def __eq__(self, other):
        if not isinstance(other, EndoTuple):
            return NotImplemented
        return self.matrices == other.matrices

    def __repr__(self):
        return f"EndoTuple(n={self.n}, m={self.m})"

    def conjugate(self, p: Matrix) -> "EndoTuple":
        """(P phi_1 P^-1, ..., P phi_m P^-1); raises SingularMatrixError"""
        p_inverse = p.inverse()
        return EndoTuple([p @ a @ p_inverse for a in self.matrices], self.allow_rectangular)

    def scaled(self, slot: int, value: Scalar) -> "EndoTuple":
        """Copy with the 1-based slot multiplied by value"""
        matrices = list(self.matrices)
        matrices[slot - 1] = matrices[slot - 1] * value
        return EndoTuple(matrices, self.allow_rectangular)


# ---------------------------------------------------------------------------
# Operators on the blade basis
# ---------------------------------------------------------------------------

class BladeOperator:
    """Linear operator on the exterior algebra stored by columns: blade mask -> image"""

    __slots__ = ("n", "columns")

    def __init__(self, n: int, columns: Mapping[int, ExteriorElement] = None):
        self.n = n
        self.columns = {mask: image for mask, image in sorted((columns or {}).items()) if image}

    @classmethod
    def identity(cls, n: int) -> "BladeOperator":
        return cls(n, {mask: ExteriorElement(n, {mask: 1}) for mask in range(1 << n)})

    @classmethod
    def zero(cls, n: int) -> "BladeOperator":
        return cls(n)

    def column(self, mask: int) -> ExteriorElement:
        return self.columns.get(mask) or ExteriorElement(self.n)

    def apply(self, element: ExteriorElement) -> ExteriorElement:
        if element.n != self.n:
            raise DimensionMismatchError(f"Operator on dimension {self.n} applied to dimension {element.n}")
        terms: Dict[int, Scalar] = {}
        for mask, coeff in element.items():
            image = self.columns.get(mask)
            if image is None:
                continue
            for out_mask, value in image.items():
                terms[out_mask] = terms.get(out_mask, 0) + coeff * value
        return ExteriorElement(self.n, terms)

    def compose(self, other: "BladeOperator") -> "BladeOperator":
        """self o other"""
        self._check(other)
        return BladeOperator(self.n, {mask: self.apply(image) for mask, image in other.columns.items()})

    __matmul__ = compose

    def _check(self, other: "BladeOperator"):
        if other.n != self.n:
            raise DimensionMismatchError(f"Operator dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "BladeOperator") -> "BladeOperator":
        self._check(other)
        columns = dict(self.columns)
        for mask, image in other.columns.items():
            columns[mask] = columns[mask] + image if mask in columns else image
        return BladeOperator(self.n, columns)

    def __sub__(self, other: "BladeOperator") -> "BladeOperator":
        return self + (-other)

    def __neg__(self) -> "BladeOperator":
        return BladeOperator(self.n, {mask: -image for mask, image in self.columns.items()})

    def scale(self, value: Scalar) -> "BladeOperator":
        return BladeOperator(self.n, {mask: image.scale(value) for mask, image in self.columns.items()})

    def __eq__(self, other):
        if not isinstance(other, BladeOperator):
            return NotImplemented
        return self.n == other.n and self.columns == other.columns

    def __bool__(self):
        return bool(self.columns)

    def is_grade_preserving(self) -> bool:
        return all(image.grades() == [grade(mask)] for mask, image in self.columns.items())

    def restriction_to_v(self) -> Matrix:
        """n x n matrix of the action on V (grade-1 part of the images of e_1..e_n)"""
        columns = []
        for j in range(self.n):
            columns.append(self.column(1 << j).vector_coordinates())
        return Matrix.from_columns(columns)

    def grade_block(self, k: int) -> Matrix:
        masks = blades_of_grade(self.n, k)
        return Matrix([[self.column(col).coefficient(row) for col in masks] for row in masks])

    def to_dense(self) -> Matrix:
        size = 1 << self.n
        return Matrix([[self.column(col).coefficient(row) for col in range(size)] for row in range(size)])

    def inverse(self) -> "BladeOperator":
        """Inverse operator; grade-preserving operators are inverted one grade block at a time"""
        if self.is_grade_preserving():
            columns: Dict[int, Dict[int, Scalar]] = {}
            for k in range(self.n + 1):
                masks = blades_of_grade(self.n, k)
                block_inverse = self.grade_block(k).inverse()
                for c, col_mask in enumerate(masks):
                    columns[col_mask] = {masks[r]: block_inverse[r, c] for r in range(len(masks))}
        else:
            dense_inverse = self.to_dense().inverse()
            size = 1 << self.n
            columns = {c: {r: dense_inverse[r, c] for r in range(size)} for c in range(size)}
        return BladeOperator(self.n, {mask: ExteriorElement(self.n, col) for mask, col in columns.items()})

    def sparse_triples(self, k: Optional[int] = None) -> List[Tuple[int, int, Scalar]]:
        """(row mask, column mask, value) triples, optionally restricted to grade k columns"""
        triples = []
        for col_mask, image in self.columns.items():
            if k is not None and grade(col_mask) != k:
                continue
            for row_mask, value in image.items():
                triples.append((row_mask, col_mask, value))
        return triples


# ---------------------------------------------------------------------------
# Operator-valued series
# ---------------------------------------------------------------------------

class OperatorSeries:
    """Truncated series sum_i D_i z^i with D_i a BladeOperator; immutable"""

    def __init__(self, n: int, m: int, truncation: int, coeffs: Mapping[MultiIndex, BladeOperator] = None):
        if truncation < 0:
            raise IndexRangeError(f"Truncation must be non-negative, got {truncation}")
        stored = {}
        for index, operator in (coeffs or {}).items():
            index = tuple(index)
            if len(index) != m:
                raise IndexRangeError(f"Multi-index {format_index(index)} has length {len(index)}, expected {m}")
            if sum(index) > truncation:
                raise IndexRangeError(f"Multi-index {format_index(index)} exceeds truncation {truncation}")
            if operator.n != n:
                raise DimensionMismatchError(f"Coefficient at {format_index(index)} acts on dimension {operator.n}")
            if operator:
                stored[index] = operator
        self.n = n
        self.m = m
        self.truncation = truncation
        self.coeffs = dict(sorted(stored.items(), key=lambda item: graded_lex_key(item[0])))

    def __repr__(self):
        return f"OperatorSeries(n={self.n}, m={self.m}, T={self.truncation}, terms={len(self.coeffs)})"

    def __eq__(self, other):
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        return (self.n, self.m, self.truncation, self.coeffs) == (other.n, other.m, other.truncation, other.coeffs)

    def indices(self) -> List[MultiIndex]:
        return list(self.coeffs)

    def coefficient(self, index: Sequence[int]) -> BladeOperator:
        index = tuple(index)
        if len(index) != self.m:
            raise IndexRangeError(f"Multi-index {format_index(index)} has length {len(index)}, expected {self.m}")
        return self.coeffs.get(index) or BladeOperator.zero(self.n)

    def apply(self, element: ExteriorElement) -> Dict[MultiIndex, ExteriorElement]:
        """D(z)u as a truncated polynomial: multi-index -> nonzero coefficient"""
        result = {}
        for index, operator in self.coeffs.items():
            image = operator.apply(element)
            if image:
                result[index] = image
        return result

    def restriction_to_v(self) -> Dict[MultiIndex, Matrix]:
        return {index: operator.restriction_to_v() for index, operator in self.coeffs.items()}

    def is_grade_preserving(self) -> bool:
        return all(operator.is_grade_preserving() for operator in self.coeffs.values())

    def dump(self, render: Callable[[Scalar], str] = str) -> List[str]:
        """Debug dump: one line per multi-index and nonempty grade block"""
        lines = []
        for index, operator in self.coeffs.items():
            for k in range(self.n + 1):
                triples = operator.sparse_triples(k)
                if not triples:
                    continue
                body = " ".join(
                    f"({{{','.join(map(str, blade_indices(r)))}}},{{{','.join(map(str, blade_indices(c)))}}},{render(v)})"
                    for r, c, v in triples
                )
                lines.append(f"{format_index(index)} grade-{k} block: {body}")
        return lines

    def _check_compatible(self, other: "OperatorSeries"):
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionMismatchError(
                f"Series over (n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})"
            )
        if self.truncation != other.truncation:
            raise DimensionMismatchError(f"Truncation mismatch: {self.truncation} vs {other.truncation}")


def identity_series(n: int, m: int, truncation: int) -> OperatorSeries:
    return OperatorSeries(n, m, truncation, {zero_index(m): BladeOperator.identity(n)})


def _vector_polynomial(restriction: Mapping[MultiIndex, Matrix], j: int, n: int) -> Dict[MultiIndex, ExteriorElement]:
    """f(z) e_j as a polynomial with grade-1 coefficients"""
    poly = {}
    for index, matrix in restriction.items():
        image = ExteriorElement.from_vector(matrix.column(j))
        if image:
            poly[index] = image
    return poly


def extend_from_v(restriction: Mapping[Sequence[int], Matrix], n: int, m: int,
                  truncation: Optional[int] = None) -> OperatorSeries:
    """The unique HS-derivation whose restriction to V is f(z) = sum_i f_i z^i.

    On a blade the series acts as f(z)e_{j1} ^ ... ^ f(z)e_{jk}, expanded and
    truncated at total degree T (default T = n).
    """
    truncation = n if truncation is None else truncation
    restriction = {tuple(index): matrix for index, matrix in restriction.items()}
    for index, matrix in restriction.items():
        if len(index) != m:
            raise IndexRangeError(f"Multi-index {format_index(index)} has length {len(index)}, expected {m}")
        if matrix.shape != (n, n):
            raise DimensionMismatchError(
                f"Coefficient at {format_index(index)} is {matrix.n_rows}x{matrix.n_cols}, expected {n}x{n}"
            )
    vectors = [_vector_polynomial(restriction, j, n) for j in range(n)]

    # images[mask]: polynomial of f(z)e_{j1} ^ ... ^ f(z)e_{jk}, built from the
    # image of the mask without its highest index
    images: Dict[int, Dict[MultiIndex, ExteriorElement]] = {0: {zero_index(m): ExteriorElement.scalar(n, 1)}}
    for mask in range(1, 1 << n):
        high = mask.bit_length() - 1
        prefix = images[mask ^ (1 << high)]
        product: Dict[MultiIndex, ExteriorElement] = {}
        for a, left in prefix.items():
            for b, right in vectors[high].items():
                index = add_indices(a, b)
                if sum(index) > truncation:
                    continue
                term = left.wedge(right)
                product[index] = product[index] + term if index in product else term
        images[mask] = {index: value for index, value in product.items() if value}

    columns: Dict[MultiIndex, Dict[int, ExteriorElement]] = {}
    for mask, poly in images.items():
        for index, value in poly.items():
            columns.setdefault(index, {})[mask] = value
    return OperatorSeries(n, m, truncation, {index: BladeOperator(n, cols) for index, cols in columns.items()})


def derivation_from_tuple(phi: EndoTuple, truncation: Optional[int] = None) -> OperatorSeries:
    """The series Dbar(z) with Dbar(z)|_V = 1 - (phi_1 z_1 + ... + phi_m z_m)"""
    n, m = phi.n, phi.m
    restriction = {zero_index(m): Matrix.identity(n)}
    for k, matrix in enumerate(phi, 1):
        restriction[unit_index(m, k)] = -matrix
    return extend_from_v(restriction, n, m, truncation)


def series_product(d: OperatorSeries, e: OperatorSeries) -> OperatorSeries:
    """Cauchy product: coefficient i is sum over j + l = i of D_j o E_l"""
    d._check_compatible(e)
    coeffs: Dict[MultiIndex, BladeOperator] = {}
    for j, left in d.coeffs.items():
        for l, right in e.coeffs.items():
            index = add_indices(j, l)
            if sum(index) > d.truncation:
                continue
            term = left.compose(right)
            coeffs[index] = coeffs[index] + term if index in coeffs else term
    return OperatorSeries(d.n, d.m, d.truncation, coeffs)


def series_inverse(dbar: OperatorSeries) -> OperatorSeries:
    """The series D with Dbar D = 1 up to the truncation.

    D_0 = Dbar_0^-1 and D_i = -Dbar_0^-1 sum_{0 < j <= i} Dbar_j D_{i-j},
    solved in graded-lex order.
    """
    n, m, truncation = dbar.n, dbar.m, dbar.truncation
    constant = dbar.coefficient(zero_index(m))
    identity = BladeOperator.identity(n)
    try:
        constant_inverse = identity if constant == identity else constant.inverse()
    except SingularMatrixError:
        raise SingularMatrixError("Series constant term is not invertible") from None

    solved: Dict[MultiIndex, BladeOperator] = {zero_index(m): constant_inverse}
    for index in multi_indices(m, truncation, min_degree=1):
        accumulated = BladeOperator.zero(n)
        for j, operator in dbar.coeffs.items():
            if sum(j) == 0 or not index_leq(j, index):
                continue
            previous = solved.get(sub_indices(index, j))
            if previous:
                accumulated = accumulated + operator.compose(previous)
        if accumulated:
            solved[index] = -(constant_inverse.compose(accumulated))
    return OperatorSeries(n, m, truncation, solved)


def geometric_series_on_v(phi: EndoTuple, truncation: Optional[int] = None,
                          bound: Optional[Sequence[int]] = None) -> Dict[MultiIndex, Matrix]:
    """Coefficients W_l of 1 + sum_{d >= 1} (phi_1 z_1 + ... + phi_m z_m)^d.

    W_l is the sum of all ordered products containing phi_k exactly l_k
    times; W_0 = 1 and W_l = sum_{k: l_k > 0} phi_k W_{l - e_k}. Either all
    l with |l| <= truncation or all l <= bound are produced.
    """
    n, m = phi.n, phi.m
    if bound is not None:
        targets = indices_below(bound)
    else:
        targets = multi_indices(m, n if truncation is None else truncation)
    words: Dict[MultiIndex, Matrix] = {}
    for index in targets:
        if sum(index) == 0:
            words[index] = Matrix.identity(n)
            continue
        total = Matrix.zero(n)
        for k in range(m):
            if index[k] > 0:
                total = total + phi[k] @ words[sub_indices(index, unit_index(m, k + 1))]
        words[index] = total
    return words


def _polynomial_add(target: Dict[MultiIndex, ExteriorElement], index: MultiIndex, value: ExteriorElement):
    if value:
        target[index] = target[index] + value if index in target else value


def _apply_polynomial(d: OperatorSeries, poly: Mapping[MultiIndex, ExteriorElement]) -> Dict[MultiIndex, ExteriorElement]:
    """D(z) applied to a z-polynomial with exterior coefficients, truncated"""
    result: Dict[MultiIndex, ExteriorElement] = {}
    for j, operator in d.coeffs.items():
        for l, element in poly.items():
            index = add_indices(j, l)
            if sum(index) <= d.truncation:
                _polynomial_add(result, index, operator.apply(element))
    return {index: value for index, value in result.items() if value}


def _polynomial_difference(left, right) -> Dict[MultiIndex, ExteriorElement]:
    result = dict(left)
    for index, value in right.items():
        _polynomial_add(result, index, -value)
    return {index: value for index, value in sorted(result.items(), key=lambda item: graded_lex_key(item[0])) if value}


IBP_FORMS = ("derivation", "inverse")


def integration_by_parts_residual(d: OperatorSeries, dbar: OperatorSeries, u: ExteriorElement,
                                  v: ExteriorElement, form: str = "derivation") -> Dict[MultiIndex, ExteriorElement]:
    """LHS - RHS of integration by parts, coefficient by coefficient up to T.

    form="derivation":  D(z)u ^ v    - D(z)(u ^ Dbar(z)v)
    form="inverse":     Dbar(z)u ^ v - Dbar(z)(u ^ D(z)v)

    Returns the nonzero coefficients only; an empty dict means the law holds.
    """
    d._check_compatible(dbar)
    if u.n != d.n or v.n != d.n:
        raise DimensionMismatchError(f"Elements over {u.n}, {v.n} for series over {d.n}")
    if form not in IBP_FORMS:
        raise ValueError(f"Unknown integration by parts form {form!r} (expected one of {', '.join(IBP_FORMS)})")
    outer, inner = (d, dbar) if form == "derivation" else (dbar, d)

    left = {index: image.wedge(v) for index, image in outer.apply(u).items()}
    inner_poly = {index: u.wedge(image) for index, image in inner.apply(v).items()}
    right = _apply_polynomial(outer, inner_poly)
    return _polynomial_difference(left, right)


def leibniz_residual(d: OperatorSeries, u: ExteriorElement, v: ExteriorElement) -> Dict[MultiIndex, ExteriorElement]:
    """D_i(u ^ v) - sum_{j + l = i} D_j u ^ D_l v for every |i| <= T; empty when D is an HS-derivation"""
    left = d.apply(u.wedge(v))
    du = d.apply(u)
    dv = d.apply(v)
    right: Dict[MultiIndex, ExteriorElement] = {}
    for j, a in du.items():
        for l, b in dv.items():
            index = add_indices(j, l)
            if sum(index) <= d.truncation:
                _polynomial_add(right, index, a.wedge(b))
    return _polynomial_difference(left, right)


def annihilation_defect(dbar: OperatorSeries, u: ExteriorElement) -> Dict[MultiIndex, ExteriorElement]:
    """Nonzero Dbar_i u with |i| larger than the top grade of u.

    For Dbar built from 1 - sum phi_k z_k the result is empty: on grade k the
    series is a polynomial of degree at most k.
    """
    top_grade = max(u.grades(), default=0)
    return {
        index: image for index, image in dbar.apply(u).items()
        if sum(index) > top_grade
    }


def top_form_polynomial(d: OperatorSeries) -> Dict[MultiIndex, Scalar]:
    """Coefficients of D(z) xi on xi = e1 ^ ... ^ en, read off the top grade"""
    mask = full_mask(d.n)
    return {
        index: operator.column(mask).top_form_coefficient()
        for index, operator in d.coeffs.items()
        if operator.column(mask).top_form_coefficient() != 0
    }
