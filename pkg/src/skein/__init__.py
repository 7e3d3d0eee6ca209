"""Kauffman bracket skein algebras of planar surfaces: exact presentation,
relation catalog, normal forms, and a classical SL(2) trace oracle."""

__version__ = "0.1.0"
