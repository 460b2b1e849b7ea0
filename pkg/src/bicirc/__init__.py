"""Bicircular matroids of multigraphs, their duals and minors."""

__version__ = "0.1.0"
