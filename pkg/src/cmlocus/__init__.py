"""Exact and numerical verification toolkit for Calogero-Moser equilibria,
Hermite Wronskians and their Young-diagram spectra."""

__version__ = "0.1.0"
