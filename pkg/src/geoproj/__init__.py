"""Closed geodesics on cusped hyperbolic surfaces and their projection bounds."""

__version__ = "0.1.0"
