"""Computational toolkit for hyperbolic ladder surfaces: pentagon and
hexagon trigonometry, Fenchel-Nielsen holonomy, explicit homogeneity
constant chains, modular pants graphs, pentagon tilings with certified
distance-minimizing verticals, and regular-cover classification tables."""

__version__ = "0.1.0"
