"""Frobenius pushforwards, finite F-type and F-abundance over normal toric rings."""

__version__ = "0.1.0"
