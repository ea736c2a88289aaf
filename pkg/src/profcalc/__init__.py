"""Finite profunctor calculus with certified universal properties."""

__version__ = "0.1.0"
