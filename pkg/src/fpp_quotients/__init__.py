"""Exact verification of the classification of quotients of fake projective planes."""

__version__ = "0.1.0"
