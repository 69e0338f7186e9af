#!/usr/bin/env python3
"""
HS Trace Tool - Scalar Field
Exact rational arithmetic (the reference mode) and binary floats (diagnostics)
"""

import math
import re
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float, int]

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

# "p", "-p" or "p/q" with q > 0
_SCALAR_PATTERN = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


class HSTraceError(Exception):
    """Base class for every error raised by the HS trace tool"""


class ScalarFormatError(HSTraceError, ValueError):
    """A scalar could not be parsed from its external representation"""


class FieldDivisionError(HSTraceError, ZeroDivisionError):
    """Division by an exact zero"""


class DimensionMismatchError(HSTraceError, ValueError):
    """Operands live over different dimensions or have the wrong shape"""


class SingularMatrixError(HSTraceError, ValueError):
    """A matrix or operator that must be invertible is not"""


class IndexRangeError(HSTraceError, ValueError):
    """A multi-index lies outside the range an operation accepts"""


class ResourceBudgetExceeded(HSTraceError, RuntimeError):
    """A configured time or memory budget was exhausted"""


class ScalarField:
    """Ground field of characteristic zero.

    In rational mode every value is a ``Fraction`` (always reduced, positive
    denominator). In float mode values are Python floats; this mode exists only
    to observe numerical degradation and never decides acceptance.
    """

    def __init__(self, mode: str = RATIONAL):
        if mode not in MODES:
            raise ValueError(f"Unknown arithmetic mode: {mode!r} (expected one of {', '.join(MODES)})")
        self.mode = mode

    def __repr__(self):
        return f"ScalarField({self.mode!r})"

    def __eq__(self, other):
        return isinstance(other, ScalarField) and other.mode == self.mode

    def __hash__(self):
        return hash(("ScalarField", self.mode))

    @property
    def exact(self) -> bool:
        return self.mode == RATIONAL

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0

    def coerce(self, value) -> Scalar:
        """Convert ints, Fractions, floats or "p/q" strings into a field element"""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise ScalarFormatError(f"Booleans are not scalars: {value!r}")
        if self.exact:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, float):
                if value.is_integer():
                    return Fraction(int(value))
                raise ScalarFormatError(
                    f"Non-integral number {value!r} in rational mode; quote it as \"p/q\""
                )
            raise ScalarFormatError(f"Cannot interpret {value!r} as a rational scalar")
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise ScalarFormatError(f"Cannot interpret {value!r} as a float scalar")

    def parse(self, text: str) -> Scalar:
        """Parse the external string format: optional '-', digits, optional '/' positive digits"""
        match = _SCALAR_PATTERN.match(text)
        if not match:
            if not self.exact:
                try:
                    return float(text)
                except ValueError:
                    pass
            raise ScalarFormatError(f"Invalid scalar {text!r}: expected \"p\" or \"p/q\"")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise ScalarFormatError(f"Invalid scalar {text!r}: zero denominator")
        value = Fraction(numerator, denominator)
        return value if self.exact else float(value)

    def render(self, value: Scalar) -> str:
        """Render a scalar as "p/q" (or "p" when q = 1); floats use repr"""
        if self.exact:
            value = Fraction(value)
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return repr(float(value))

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        if b == 0:
            if self.exact:
                raise FieldDivisionError("Division by zero in rational mode")
            # IEEE semantics for the diagnostic mode
            if a == 0:
                return math.nan
            return math.copysign(math.inf, a) * math.copysign(1.0, b)
        if self.exact:
            return Fraction(a) / Fraction(b)
        return float(a) / float(b)

    def inverse(self, a: Scalar) -> Scalar:
        return self.div(self.one, a)

    def inverse_factorial(self, k: int) -> Scalar:
        """1/k! exactly (rational) or its closest float"""
        if k < 0:
            raise ValueError(f"Factorial of a negative integer: {k}")
        if self.exact:
            return Fraction(1, math.factorial(k))
        return 1.0 / math.factorial(k)

    def is_zero(self, value: Scalar, tol: float = 0.0) -> bool:
        if self.exact:
            return value == 0
        return abs(float(value)) <= tol


RATIONAL_FIELD = ScalarField(RATIONAL)
FLOAT_FIELD = ScalarField(FLOAT)


def field_for(mode: str) -> ScalarField:
    """Shared field instance for a mode name"""
    if mode == RATIONAL:
        return RATIONAL_FIELD
    if mode == FLOAT:
        return FLOAT_FIELD
    raise ValueError(f"Unknown arithmetic mode: {mode!r}")


def parse_scalar(text: str, mode: str = RATIONAL) -> Scalar:
    return field_for(mode).parse(text)


def render_scalar(value: Scalar, mode: str = RATIONAL) -> str:
    return field_for(mode).render(value)


def inverse_factorial(k: int, mode: str = RATIONAL) -> Scalar:
    return field_for(mode).inverse_factorial(k)
