"""Symbolic sets over an infinite supply of atoms with only equality.

Definable subsets of A^k, families of finite subsets of A, relations
between them and rank-bounded definable maps, each with a canonical form,
exact cardinality classes and a brute-force oracle on finite windows.
"""

__version__ = "0.1.0"
