"""Weyl groupoid toolkit.

Exact computations with Weyl groupoids of bicharacters of diagonal type:
exploration, Weyl equivalence, necessary conditions for finiteness and the
verification of the rank 4 and rank >= 5 classification tables.
"""

__version__ = "0.1.0"
