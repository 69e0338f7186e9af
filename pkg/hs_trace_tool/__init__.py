"""
HS Trace Tool - Package Initialization

Exact-arithmetic traces of tuples of endomorphisms, computed through
multivariate Hasse-Schmidt derivations on the exterior algebra, together
with checkers for the generalized Cayley-Hamilton identity and the star
products built from it.
"""

__version__ = "1.0.0"
__author__ = "HS Trace Tool Team"

# Import main CLI function for console script entry point
from .cli import main

__all__ = ["main"]
