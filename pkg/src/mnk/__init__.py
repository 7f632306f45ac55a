"""Rational cohomology of SO(2n)/T^n and SO(2n)/(U(k) x SO(2n-2k)) as quotient rings."""

__version__ = "0.1.0"
