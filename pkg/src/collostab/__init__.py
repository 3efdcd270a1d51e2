"""Exact construction and stability classification of Runge-Kutta collocation methods."""

__version__ = "0.1.0"
