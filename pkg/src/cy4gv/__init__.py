"""Exact Gopakumar-Vafa type invariant calculus for Calabi-Yau 4-folds."""
from .foundation import CurveClass, NovikovSeries, Rational
from .geometry import GeometryData, GeometryError, load_fixture, load_geometry

__all__ = [
    "CurveClass",
    "NovikovSeries",
    "Rational",
    "GeometryData",
    "GeometryError",
    "load_fixture",
    "load_geometry",
]
