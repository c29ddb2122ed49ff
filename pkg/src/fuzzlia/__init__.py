"""Fuzzy operators, law-of-importation pairs and hierarchical inference engines."""

__version__ = "0.1.0"
