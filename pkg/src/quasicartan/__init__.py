"""Finite-scale twisted convolution algebras over groupoids: construction,
diagonal/Cartan/quasi-Cartan classification, and twist reconstruction from
the normaliser semigroup."""

from . import finring, groupoid, twist, steinberg, pairs, reconstruct, grouprings

__all__ = ["finring", "groupoid", "twist", "steinberg", "pairs",
           "reconstruct", "grouprings"]
