"""Exact dimer partition functions on 2 x n torus strips of squares and hexagons."""

from dimerstrip.laurent import LaurentPoly2, PowerSeries1, series_of_rational

__version__ = "0.1.0"

__all__ = ["LaurentPoly2", "PowerSeries1", "series_of_rational", "__version__"]
