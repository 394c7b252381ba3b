"""Exact symbolic toolkit for locally nilpotent derivations on affine varieties."""

__version__ = "0.1.0"
