"""Exact symbolic toolkit for the two-boundary Temperley-Lieb loop model
on standard and Kazhdan-Lusztig bases."""

__version__ = "0.1.0"
