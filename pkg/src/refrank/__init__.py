"""Rank reviewer candidates from the authors a manuscript cites."""

__version__ = "0.1.0"
