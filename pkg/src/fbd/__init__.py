"""Fully blocked digraphs: construction, verification and the flip counterexample."""

__version__ = "0.1.0"
