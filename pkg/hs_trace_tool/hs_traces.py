#!/usr/bin/env python3
"""
HS Trace Tool - Trace Tensors
The i-traces tau_i(phi) of a tuple of endomorphisms, computed two independent
ways: from the HS-derivation Dbar acting on the top exterior power, and from
a brute-force sum of determinants over labelings of the basis.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .hs_matrix import Matrix, det_bareiss
from .hs_scalars import DimensionMismatchError, IndexRangeError, RATIONAL, Scalar, field_for
from .hs_series import (
    EndoTuple,
    MultiIndex,
    derivation_from_tuple,
    format_index,
    graded_lex_key,
    multi_indices,
    top_form_polynomial,
)


class TraceTensor:
    """Sparse tensor {tau_i : |i| <= n} of an m-tuple acting on an n-dimensional space"""

    def __init__(self, n: int, m: int, entries: Mapping[Sequence[int], Scalar] = None):
        self.n = n
        self.m = m
        stored = {}
        for index, value in (entries or {}).items():
            index = tuple(index)
            if len(index) != m:
                raise IndexRangeError(f"Multi-index {format_index(index)} has length {len(index)}, expected {m}")
            if sum(index) > n:
                if value != 0:
                    raise IndexRangeError(f"Trace at {format_index(index)} must vanish for |i| > {n}")
                continue
            if value != 0:
                stored[index] = value
        self.entries = dict(sorted(stored.items(), key=lambda item: graded_lex_key(item[0])))

    def get(self, index: Sequence[int]) -> Scalar:
        index = tuple(index)
        if len(index) != self.m:
            raise IndexRangeError(f"Multi-index {format_index(index)} has length {len(index)}, expected {self.m}")
        return self.entries.get(index, 0)

    __getitem__ = get

    def indices(self) -> List[MultiIndex]:
        """Every multi-index with |i| <= n, zero entries included, in graded-lex order"""
        return multi_indices(self.m, self.n)

    def full_table(self) -> List[Tuple[MultiIndex, Scalar]]:
        return [(index, self.entries.get(index, 0)) for index in self.indices()]

    def difference(self, other: "TraceTensor") -> Dict[MultiIndex, Scalar]:
        """Entrywise self - other, nonzero entries only"""
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionMismatchError(f"Tensors over (n={self.n}, m={self.m}) and (n={other.n}, m={other.m})")
        diff = {}
        for index in self.indices():
            delta = self.get(index) - other.get(index)
            if delta != 0:
                diff[index] = delta
        return diff

    def mismatches(self, other: "TraceTensor", tol: Optional[float] = None) -> List[MultiIndex]:
        """Indices where the tensors disagree.

        With a tolerance, differences up to tol * max(1, largest |entry| of
        either tensor) are treated as rounding and ignored.
        """
        diff = self.difference(other)
        if tol is None:
            return list(diff)
        values = list(self.entries.values()) + list(other.entries.values())
        threshold = tol * max([1.0] + [abs(float(v)) for v in values])
        return [index for index, delta in diff.items() if abs(float(delta)) > threshold]

    def __eq__(self, other):
        if not isinstance(other, TraceTensor):
            return NotImplemented
        return (self.n, self.m, self.entries) == (other.n, other.m, other.entries)

    def __repr__(self):
        return f"TraceTensor(n={self.n}, m={self.m}, nonzero={len(self.entries)})"

    def to_json(self, mode: str = RATIONAL) -> dict:
        field = field_for(mode)
        document = {"n": self.n}
        if self.m != self.n:
            document["m"] = self.m
        document["entries"] = [
            {"index": list(index), "value": field.render(value)} for index, value in self.full_table()
        ]
        return document

    @classmethod
    def from_json(cls, document: dict, mode: str = RATIONAL) -> "TraceTensor":
        field = field_for(mode)
        n = document["n"]
        m = document.get("m", n)
        entries = {tuple(e["index"]): field.coerce(e["value"]) for e in document.get("entries", [])}
        return cls(n, m, entries)


def trace_tensor_via_hs(phi: EndoTuple) -> TraceTensor:
    """tau_i(phi) = (-1)^|i| x the coefficient of Dbar_i xi on xi = e1 ^ ... ^ en"""
    dbar = derivation_from_tuple(phi, truncation=phi.n)
    raw = top_form_polynomial(dbar)
    entries = {index: value if sum(index) % 2 == 0 else -value for index, value in raw.items()}
    return TraceTensor(phi.n, phi.m, entries)


def _multiset_permutations(word: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Distinct permutations of a word in lexicographic order"""
    current = sorted(word)
    size = len(current)
    while True:
        yield tuple(current)
        pivot = size - 2
        while pivot >= 0 and current[pivot] >= current[pivot + 1]:
            pivot -= 1
        if pivot < 0:
            return
        successor = size - 1
        while current[successor] <= current[pivot]:
            successor -= 1
        current[pivot], current[successor] = current[successor], current[pivot]
        current[pivot + 1:] = reversed(current[pivot + 1:])


def labelings(n: int, index: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Maps f: {1..n} -> {0..m} with exactly i_k positions labelled k (k >= 1)"""
    word = [0] * (n - sum(index))
    for k, count in enumerate(index, 1):
        word.extend([k] * count)
    return _multiset_permutations(word)


def trace_via_determinant_oracle(phi: EndoTuple, index: Sequence[int], strict: bool = True) -> Scalar:
    """Sum over labelings f of det(M_f), column j of M_f being e_j (f(j) = 0) or phi_f(j) e_j.

    With strict=False an index with |i| > n is accepted and gives 0, since no
    labeling exists.
    """
    index = tuple(index)
    n = phi.n
    if len(index) != phi.m:
        raise IndexRangeError(f"Multi-index {format_index(index)} has length {len(index)}, expected {phi.m}")
    if any(x < 0 for x in index):
        raise IndexRangeError(f"Negative exponent in {format_index(index)}")
    if sum(index) > n:
        if strict:
            raise IndexRangeError(f"|i| = {sum(index)} exceeds the dimension {n}")
        return 0

    basis_columns = Matrix.identity(n).columns()
    phi_columns = [matrix.columns() for matrix in phi]
    total = 0
    for labeling in labelings(n, index):
        columns = [
            basis_columns[j] if label == 0 else phi_columns[label - 1][j]
            for j, label in enumerate(labeling)
        ]
        total += det_bareiss(Matrix.from_columns(columns))
    return total


def oracle_trace_tensor(phi: EndoTuple, max_workers: Optional[int] = None) -> TraceTensor:
    """Full tensor from the determinant oracle, one task per multi-index"""
    indices = multi_indices(phi.m, phi.n)
    max_workers = max_workers or min(8, (os.cpu_count() or 2) + 2)
    results = {}
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_to_index = {
            executor.submit(trace_via_determinant_oracle, phi, index): index for index in indices
        }
        for future in as_completed(future_to_index):
            results[future_to_index[future]] = future.result()
    return TraceTensor(phi.n, phi.m, {index: results[index] for index in indices})


def classical_invariants(matrix: Matrix) -> Tuple[Scalar, ...]:
    """(e_1, ..., e_n) of the characteristic polynomial via the univariate derivation 1 - Az"""
    n = matrix.size
    tensor = trace_tensor_via_hs(EndoTuple([matrix], allow_rectangular=True))
    return tuple(tensor.get((k,)) for k in range(1, n + 1))


def faddeev_leverrier(matrix: Matrix) -> Tuple[Scalar, ...]:
    """(e_1, ..., e_n) by the Faddeev-LeVerrier recursion.

    M_1 = I, c_k = -tr(A M_k) / k, M_{k+1} = A M_k + c_k I; the characteristic
    polynomial is t^n + c_1 t^(n-1) + ... + c_n and e_k = (-1)^k c_k.
    """
    n = matrix.size
    floating = any(isinstance(x, float) for x in matrix.entries())
    field = field_for("float" if floating else RATIONAL)
    identity = Matrix.identity(n)
    m_k = identity
    invariants = []
    for k in range(1, n + 1):
        product = matrix @ m_k
        c_k = field.div(-product.trace(), k)
        invariants.append(c_k if k % 2 == 0 else -c_k)
        m_k = product + identity * c_k
    return tuple(invariants)


def collapse_residual(matrix: Matrix) -> Dict[MultiIndex, Scalar]:
    """tau_i(A, ..., A) - (k! / prod i_j!) e_k(A) for every |i| = k <= n; empty when they agree"""
    n = matrix.size
    tensor = trace_tensor_via_hs(EndoTuple.repeated(matrix))
    invariants = (1,) + classical_invariants(matrix)
    residual = {}
    for index in tensor.indices():
        k = sum(index)
        multinomial = math.factorial(k) // math.prod(math.factorial(x) for x in index)
        delta = tensor.get(index) - multinomial * invariants[k]
        if delta != 0:
            residual[index] = delta
    return residual
