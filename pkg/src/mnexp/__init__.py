"""Finite, verifiable experiments on (m, n)-expansive homeomorphisms."""
__version__ = "0.1.0"
