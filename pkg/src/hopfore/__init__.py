"""Hopf-Ore extensions of finite abelian group algebras and their weight modules."""

__version__ = "0.1.0"
