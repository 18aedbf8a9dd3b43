"""Bijective and enumerative toolkit for essentially 3-connected toroidal maps."""

__version__ = "0.1.0"
