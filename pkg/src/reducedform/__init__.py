"""Reduced forms of symplectic linear differential systems over Q(i)(t)[sqrt(D)]."""

__version__ = "0.1.0"
