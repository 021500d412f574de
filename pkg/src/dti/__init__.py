"""Tight closure and test ideals of diagonal hypersurfaces over F_p."""

__version__ = "0.1.0"
