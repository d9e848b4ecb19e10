"""Combinatorics of wonderful and spherical varieties in exact arithmetic."""

__version__ = "0.1.0"
