"""Exact point configurations, triangulations and bistellar flips."""

__version__ = "0.1.0"
