"""Exterior calculus and tetrad curvature checks for (generalized) Taub-NUT."""

__version__ = "0.1.0"
