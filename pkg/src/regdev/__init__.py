"""Composite regional development indices, k-means ratings and map exports."""

__version__ = "0.1.0"
