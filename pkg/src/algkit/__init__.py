"""Exact computer algebra for finite-dimensional unital associative algebras over Q."""

__version__ = "0.1.0"
