"""Exact mould calculus: moulds, flexions, ari/gari, ma, braid algebras and bal."""

__version__ = "0.1.0"
