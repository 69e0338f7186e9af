#!/usr/bin/env python3
"""
HS Trace Tool - Exterior Algebra
Sparse elements of the exterior algebra of an n-dimensional space.

Basis blades u_{i1} ^ ... ^ u_{ik} (i1 < ... < ik) are encoded as bitmasks:
index i (1-based) is bit i-1. Terms are kept sorted by mask and exact zeros
are dropped after every operation.
"""

from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .hs_scalars import DimensionMismatchError, RATIONAL, Scalar, field_for

MAX_DIMENSION = 16


def blade_mask(indices: Iterable[int]) -> int:
    """Bitmask of a set of 1-based basis indices"""
    mask = 0
    for index in indices:
        mask |= 1 << (index - 1)
    return mask


def blade_indices(mask: int) -> Tuple[int, ...]:
    """Sorted 1-based basis indices of a bitmask"""
    indices = []
    position = 1
    while mask:
        if mask & 1:
            indices.append(position)
        mask >>= 1
        position += 1
    return tuple(indices)


def grade(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    """Mask of the top blade e1 ^ ... ^ en"""
    return (1 << n) - 1


def sign_of_interleave(mask_a: int, mask_b: int) -> int:
    """Sign picked up by sorting the concatenation of two blades.

    Returns 0 when the blades share an index, otherwise (-1) raised to the
    number of pairs (a, b) with a in mask_a, b in mask_b and a > b.
    """
    if mask_a & mask_b:
        return 0
    inversions = 0
    rest = mask_a
    while rest:
        low_bit = rest & -rest
        # b-indices strictly below this a-index
        inversions += grade(mask_b & (low_bit - 1))
        rest ^= low_bit
    return -1 if inversions & 1 else 1


def _check_dimension(n: int):
    if not isinstance(n, int) or n < 1 or n > MAX_DIMENSION:
        raise DimensionMismatchError(f"Dimension must be between 1 and {MAX_DIMENSION}, got {n!r}")


class ExteriorElement:
    """Immutable sparse element of the exterior algebra over an n-dimensional space"""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[int, Scalar] = None):
        _check_dimension(n)
        limit = 1 << n
        cleaned = {}
        for mask, coeff in (terms or {}).items():
            if mask < 0 or mask >= limit:
                raise DimensionMismatchError(f"Blade {blade_indices(mask)} does not live in dimension {n}")
            if coeff != 0:
                cleaned[mask] = coeff
        self.n = n
        self._terms = dict(sorted(cleaned.items()))

    # Construction

    @classmethod
    def zero(cls, n: int) -> "ExteriorElement":
        return cls(n)

    @classmethod
    def scalar(cls, n: int, value: Scalar = 1) -> "ExteriorElement":
        return cls(n, {0: value})

    @classmethod
    def basis_vector(cls, n: int, index: int, coeff: Scalar = 1) -> "ExteriorElement":
        if not 1 <= index <= n:
            raise DimensionMismatchError(f"Basis index {index} out of range 1..{n}")
        return cls(n, {1 << (index - 1): coeff})

    @classmethod
    def blade(cls, n: int, indices: Sequence[int], coeff: Scalar = 1) -> "ExteriorElement":
        """coeff * e_{i1} ^ ... ^ e_{ik} for indices in any order (sign applied, repeats give 0)"""
        mask = 0
        sign = 1
        for index in indices:
            if not 1 <= index <= n:
                raise DimensionMismatchError(f"Basis index {index} out of range 1..{n}")
            bit = 1 << (index - 1)
            sign *= sign_of_interleave(mask, bit)
            if sign == 0:
                return cls(n)
            mask |= bit
        return cls(n, {mask: sign * coeff})

    @classmethod
    def top_form(cls, n: int) -> "ExteriorElement":
        return cls(n, {full_mask(n): 1})

    @classmethod
    def from_vector(cls, coordinates: Sequence[Scalar]) -> "ExteriorElement":
        """Grade-1 element with the given coordinates in e1..en"""
        n = len(coordinates)
        return cls(n, {1 << j: c for j, c in enumerate(coordinates)})

    # Access

    @property
    def terms(self) -> Dict[int, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, Scalar]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, blade) -> Scalar:
        """Coefficient of a blade given as a mask or as sorted 1-based indices"""
        mask = blade if isinstance(blade, int) else blade_mask(blade)
        return self._terms.get(mask, 0)

    def top_form_coefficient(self) -> Scalar:
        return self._terms.get(full_mask(self.n), 0)

    def grade_component(self, k: int) -> "ExteriorElement":
        return ExteriorElement(self.n, {m: c for m, c in self._terms.items() if grade(m) == k})

    def grades(self) -> List[int]:
        return sorted({grade(m) for m in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def vector_coordinates(self) -> Tuple[Scalar, ...]:
        """Coordinates of the grade-1 component"""
        return tuple(self._terms.get(1 << j, 0) for j in range(self.n))

    # Arithmetic

    def _check_same(self, other: "ExteriorElement"):
        if not isinstance(other, ExteriorElement):
            raise TypeError(f"Expected an ExteriorElement, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatchError(f"Dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check_same(other)
        terms = dict(self._terms)
        for mask, coeff in other._terms.items():
            terms[mask] = terms.get(mask, 0) + coeff
        return ExteriorElement(self.n, terms)

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check_same(other)
        terms = dict(self._terms)
        for mask, coeff in other._terms.items():
            terms[mask] = terms.get(mask, 0) - coeff
        return ExteriorElement(self.n, terms)

    def __neg__(self) -> "ExteriorElement":
        return ExteriorElement(self.n, {m: -c for m, c in self._terms.items()})

    def scale(self, value: Scalar) -> "ExteriorElement":
        if value == 0:
            return ExteriorElement(self.n)
        return ExteriorElement(self.n, {m: c * value for m, c in self._terms.items()})

    def __mul__(self, value) -> "ExteriorElement":
        if isinstance(value, ExteriorElement):
            return NotImplemented
        return self.scale(value)

    __rmul__ = __mul__

    def wedge(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check_same(other)
        terms: Dict[int, Scalar] = {}
        for mask_a, coeff_a in self._terms.items():
            for mask_b, coeff_b in other._terms.items():
                sign = sign_of_interleave(mask_a, mask_b)
                if sign == 0:
                    continue
                mask = mask_a | mask_b
                product = coeff_a * coeff_b
                terms[mask] = terms.get(mask, 0) + (product if sign > 0 else -product)
        return ExteriorElement(self.n, terms)

    __xor__ = wedge

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, tuple(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"ExteriorElement({self.n}, 0)"
        parts = []
        for mask, coeff in self._terms.items():
            name = "^".join(f"e{i}" for i in blade_indices(mask)) or "1"
            parts.append(f"{coeff}*{name}")
        return f"ExteriorElement({self.n}, {' + '.join(parts)})"

    # Serialization

    def to_json(self, mode: str = RATIONAL) -> dict:
        field = field_for(mode)
        return {
            "n": self.n,
            "terms": [
                {"blade": list(blade_indices(mask)), "coeff": field.render(coeff)}
                for mask, coeff in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, document: dict, mode: str = RATIONAL) -> "ExteriorElement":
        field = field_for(mode)
        n = document["n"]
        _check_dimension(n)
        result = cls(n)
        for term in document.get("terms", []):
            result = result + cls.blade(n, term["blade"], field.coerce(term["coeff"]))
        return result


def wedge(u: ExteriorElement, v: ExteriorElement) -> ExteriorElement:
    return u.wedge(v)


def top_form_coefficient(u: ExteriorElement) -> Scalar:
    return u.top_form_coefficient()


def blades_of_grade(n: int, k: int) -> List[int]:
    """All masks of grade k in ascending order"""
    return [mask for mask in range(1 << n) if grade(mask) == k]
