"""Parabolic Kazhdan-Lusztig polynomials from H-special matchings of lower Bruhat intervals."""

from .coxeter import INFINITY, CoxeterMatrix, CoxeterSystem, Element, new_system

__version__ = "0.1.0"
