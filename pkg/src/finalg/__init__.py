"""Exact computations with finite-dimensional (DG) algebras over Q."""

__version__ = "0.1.0"
