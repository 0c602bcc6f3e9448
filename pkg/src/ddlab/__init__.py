"""Exact experiments on distinct distances between a circle and a planar point set."""

from .exact import Point2, Point4, annulus_filter, phi, phi_inverse, sq_dist

__all__ = ["Point2", "Point4", "annulus_filter", "phi", "phi_inverse", "sq_dist"]
__version__ = "0.1.0"
