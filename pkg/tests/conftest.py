"""Shared fixtures and hypothesis strategies for the HS trace tool tests."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from hs_trace_tool.hs_matrix import Matrix
from hs_trace_tool.hs_series import EndoTuple
from hs_trace_tool.hs_suite import random_matrix, random_tuple

# Small rationals p/q with |p|, q <= 9 keep exact arithmetic fast
small_fractions = st.fractions(min_value=-9, max_value=9, max_denominator=9)


def matrices(size):
    """Strategy for size x size matrices with small rational entries"""
    row = st.lists(small_fractions, min_size=size, max_size=size)
    return st.lists(row, min_size=size, max_size=size).map(Matrix)


def mat(rows):
    """Matrix from ints or "p/q" strings, with Fraction entries"""
    return Matrix([[Fraction(x) for x in row] for row in rows])


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def make_tuple(rng):
    def factory(n, count=None):
        return random_tuple(rng, n, count)
    return factory


@pytest.fixture
def make_matrix(rng):
    def factory(size):
        return random_matrix(rng, size)
    return factory


@pytest.fixture
def golden_pair():
    """A = [[1, 2], [3, 4]], B = [[0, 1], [-1, 0]]"""
    return EndoTuple([mat([[1, 2], [3, 4]]), mat([[0, 1], [-1, 0]])])


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep the user's real config file out of every test"""
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.setenv("LOCALAPPDATA", str(home))
    return home
