#!/usr/bin/env python3
"""
HS Trace Tool - Matrices
Small dense matrices over the scalar field: products, inverses and
fraction-free determinants. Column j of a matrix A is A·e_j.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .hs_scalars import DimensionMismatchError, Scalar, SingularMatrixError


def _as_exact_or_float(value):
    """Promote ints to Fractions so that elimination never falls back to true division of ints"""
    if isinstance(value, float):
        return value
    return Fraction(value)


class Matrix:
    """Immutable rectangular matrix stored as a tuple of rows"""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        rows = tuple(tuple(row) for row in rows)
        if not rows or not rows[0]:
            raise DimensionMismatchError("A matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatchError("Ragged matrix: all rows must have the same length")
        self.rows = rows
        self._hash = None

    # Construction

    @classmethod
    def identity(cls, size: int, one: Scalar = 1, zero: Scalar = 0) -> "Matrix":
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def zero(cls, n_rows: int, n_cols: int = None, zero: Scalar = 0) -> "Matrix":
        return cls([[zero] * (n_cols or n_rows) for _ in range(n_rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> "Matrix":
        height = len(columns[0])
        if any(len(col) != height for col in columns):
            raise DimensionMismatchError("Columns of different heights")
        return cls([[col[i] for col in columns] for i in range(height)])

    @classmethod
    def elementary(cls, size: int, row: int, col: int, one: Scalar = 1, zero: Scalar = 0) -> "Matrix":
        """E_{row,col} with 1-based indices"""
        return cls([[one if (i, j) == (row - 1, col - 1) else zero for j in range(size)] for i in range(size)])

    # Shape

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    @property
    def size(self) -> int:
        if not self.is_square():
            raise DimensionMismatchError(f"Expected a square matrix, got {self.n_rows}x{self.n_cols}")
        return self.n_rows

    def require_shape(self, n_rows: int, n_cols: int = None) -> "Matrix":
        n_cols = n_rows if n_cols is None else n_cols
        if self.shape != (n_rows, n_cols):
            raise DimensionMismatchError(
                f"Expected a {n_rows}x{n_cols} matrix, got {self.n_rows}x{self.n_cols}"
            )
        return self

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        """0-based column j, i.e. the image of the j-th basis vector"""
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.n_cols)]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def entries(self):
        for row in self.rows:
            yield from row

    # Arithmetic

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.rows])

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            return NotImplemented
        return Matrix([[a * scalar for a in row] for row in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.n_cols != other.n_rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        return Matrix([[sum(a * b for a, b in zip(row, col)) for col in other_cols] for row in self.rows])

    def apply(self, vector: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        if len(vector) != self.n_cols:
            raise DimensionMismatchError(f"Vector of length {len(vector)} for a {self.shape} matrix")
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.rows)

    def power(self, exponent: int) -> "Matrix":
        if exponent < 0:
            raise ValueError("Negative matrix powers are not supported")
        result = Matrix.identity(self.size)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def trace(self) -> Scalar:
        return sum(self.rows[i][i] for i in range(self.size))

    def determinant(self) -> Scalar:
        return det_bareiss(self)

    def inverse(self) -> "Matrix":
        """Gauss-Jordan inverse; raises SingularMatrixError"""
        n = self.size
        work = [[_as_exact_or_float(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
                for i, row in enumerate(self.rows)]
        floating = any(isinstance(x, float) for x in self.entries())
        for k in range(n):
            candidates = [i for i in range(k, n) if work[i][k] != 0]
            if not candidates:
                raise SingularMatrixError("Matrix is singular")
            pivot_row = max(candidates, key=lambda i: abs(work[i][k])) if floating else candidates[0]
            work[k], work[pivot_row] = work[pivot_row], work[k]
            pivot = work[k][k]
            work[k] = [x / pivot for x in work[k]]
            for i in range(n):
                if i != k and work[i][k] != 0:
                    factor = work[i][k]
                    work[i] = [a - factor * b for a, b in zip(work[i], work[k])]
        result = Matrix([row[n:] for row in work])
        if floating:
            result = result.map(float)
        return result

    def map(self, func) -> "Matrix":
        return Matrix([[func(x) for x in row] for row in self.rows])

    # Inspection

    def is_zero(self, tol: float = 0.0) -> bool:
        if tol == 0.0:
            return all(x == 0 for x in self.entries())
        return self.max_abs() <= tol

    def max_abs(self) -> float:
        return float(np.max(np.abs(np.array([float(x) for x in self.entries()]))))

    def to_lists(self) -> List[List[Scalar]]:
        return [list(row) for row in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"Matrix({self.to_lists()!r})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


def det_bareiss(matrix: Matrix) -> Scalar:
    """Determinant by Bareiss' fraction-free Gaussian elimination.

    Every intermediate division is exact, so rational inputs never grow
    denominators beyond those of the input entries.
    """
    n = matrix.size
    work = [[_as_exact_or_float(x) for x in row] for row in matrix.rows]
    floating = any(isinstance(x, float) for row in work for x in row)
    if n == 1:
        return work[0][0]
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if floating:
            pivot_row = max(range(k, n), key=lambda i: abs(work[i][k]))
            if work[pivot_row][k] == 0:
                return 0.0
        else:
            pivot_row = next((i for i in range(k, n) if work[i][k] != 0), None)
            if pivot_row is None:
                return Fraction(0)
        if pivot_row != k:
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (pivot * work[i][j] - work[i][k] * work[k][j]) / previous
            work[i][k] = 0
        previous = pivot
    return sign * work[n - 1][n - 1]
