"""Triangulated solid tori, lens spaces and equilibrium triangulations of 4-dimensional quasitoric manifolds."""
__version__ = "0.1.0"
