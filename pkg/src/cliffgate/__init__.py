"""Clifford algebras for quantum gates, fermions and rotations."""

__version__ = "0.1.0"
