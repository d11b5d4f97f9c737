"""Finite-scale calculus of (half) derivators over rational vector spaces."""

__version__ = "0.1.0"
