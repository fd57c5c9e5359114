"""Counting multicurves on surfaces with boundary, and the matching SL2 trace-function checks."""

from .genfun import IntPoly, RationalGF, check_reciprocal_symmetry, series_coeffs
from .surface import SurfaceSig, canonical_class, make_sig
from .diagrams import ChordDiagram, Multicurve, enumerate_reduced, extract_multicurve
from .polygraph import G_gf, H_gf, Z_gf, Zgn_gf, h_gf

__all__ = [
    "IntPoly",
    "RationalGF",
    "check_reciprocal_symmetry",
    "series_coeffs",
    "SurfaceSig",
    "canonical_class",
    "make_sig",
    "ChordDiagram",
    "Multicurve",
    "enumerate_reduced",
    "extract_multicurve",
    "G_gf",
    "H_gf",
    "Z_gf",
    "Zgn_gf",
    "h_gf",
]
