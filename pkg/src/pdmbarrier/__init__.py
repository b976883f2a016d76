"""Transmission through barriers with a position-dependent effective mass."""

__version__ = "0.1.0"
