#!/usr/bin/env python3
"""
HS Trace Tool - Input Documents
JSON input for the command line: the dimension, the arithmetic mode and the
matrices to work on.

    {"n": 2, "mode": "rational",
     "matrices": [[["1", "2"], ["3", "4"]], [["0", "1/2"], ["-1", "0"]]],
     "seed": 42}
"""

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from .hs_matrix import Matrix
from .hs_scalars import DimensionMismatchError, MODES, RATIONAL, ScalarFormatError, field_for
from .hs_series import EndoTuple

MAX_SEED = 2 ** 64


class DocumentFormatError(ScalarFormatError):
    """The input document is not valid JSON or violates the schema"""


def parse_matrix(rows, n: int, mode: str = RATIONAL, label: str = "matrix") -> Matrix:
    """Parse a list of rows of scalars (strings or JSON numbers) into an n x n matrix"""
    scalar_field = field_for(mode)
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise DocumentFormatError(f"{label} must be a list of rows")
    if len(rows) != n or any(len(row) != n for row in rows):
        shape = f"{len(rows)}x{len(rows[0]) if rows else 0}"
        raise DimensionMismatchError(f"{label} is {shape}, expected {n}x{n}")
    try:
        return Matrix([[scalar_field.coerce(value) for value in row] for row in rows])
    except ScalarFormatError as e:
        raise DocumentFormatError(f"{label}: {e}") from None


def matrix_to_json(matrix: Matrix, mode: str = RATIONAL) -> list:
    scalar_field = field_for(mode)
    return [[scalar_field.render(x) for x in row] for row in matrix.rows]


@dataclass
class InputDocument:
    """Validated input: n x n matrices over the chosen field"""

    n: int
    mode: str = RATIONAL
    matrices: List[Matrix] = field(default_factory=list)
    seed: Optional[int] = None
    conjugator: Optional[Matrix] = None

    @classmethod
    def from_dict(cls, data, default_mode: str = RATIONAL) -> "InputDocument":
        if not isinstance(data, dict):
            raise DocumentFormatError("The input document must be a JSON object")
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise DocumentFormatError(f"'n' must be a positive integer, got {n!r}")
        mode = data.get("mode", default_mode)
        if mode not in MODES:
            raise DocumentFormatError(f"'mode' must be one of {', '.join(MODES)}, got {mode!r}")
        raw_matrices = data.get("matrices", [])
        if not isinstance(raw_matrices, list):
            raise DocumentFormatError("'matrices' must be a list")
        matrices = [
            parse_matrix(rows, n, mode, label=f"matrix {position}")
            for position, rows in enumerate(raw_matrices, 1)
        ]
        seed = data.get("seed")
        if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < MAX_SEED):
            raise DocumentFormatError(f"'seed' must be an unsigned 64-bit integer, got {seed!r}")
        conjugator = data.get("conjugator")
        if conjugator is not None:
            conjugator = parse_matrix(conjugator, n, mode, label="conjugator")
        return cls(n=n, mode=mode, matrices=matrices, seed=seed, conjugator=conjugator)

    @classmethod
    def from_text(cls, text: str, default_mode: str = RATIONAL) -> "InputDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentFormatError(f"Invalid JSON: {e}") from None
        return cls.from_dict(data, default_mode)

    @classmethod
    def load(cls, source: str, default_mode: str = RATIONAL) -> "InputDocument":
        """Read a document from a file path, or from stdin for '-'"""
        if source == "-":
            return cls.from_text(sys.stdin.read(), default_mode)
        path = Path(source)
        if not path.exists():
            raise FileNotFoundError(f"Input file not found: {source}")
        return cls.from_text(path.read_text(encoding="utf-8"), default_mode)

    def to_dict(self) -> dict:
        document = {
            "n": self.n,
            "mode": self.mode,
            "matrices": [matrix_to_json(matrix, self.mode) for matrix in self.matrices],
        }
        if self.seed is not None:
            document["seed"] = self.seed
        if self.conjugator is not None:
            document["conjugator"] = matrix_to_json(self.conjugator, self.mode)
        return document

    def require_count(self, count: int, at_least: bool = False, size: Optional[int] = None) -> "InputDocument":
        """Check the number of matrices (and optionally the dimension) a command needs"""
        if size is not None and self.n != size:
            raise DimensionMismatchError(f"This check needs {size}x{size} matrices, got n={self.n}")
        have = len(self.matrices)
        if (at_least and have < count) or (not at_least and have != count):
            expected = f"at least {count}" if at_least else f"exactly {count}"
            raise DimensionMismatchError(f"Expected {expected} matrices, got {have}")
        return self

    def endo_tuple(self) -> EndoTuple:
        """The matrices as an n-tuple"""
        self.require_count(self.n)
        return EndoTuple(self.matrices)
