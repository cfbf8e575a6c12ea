"""Degree-3 cohomological invariants of split semisimple groups of types A1, D6, E6, E7."""

__version__ = "0.1.0"
