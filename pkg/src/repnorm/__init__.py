"""repnorm: matrix coefficients, Sobolev-norm calculus and weighted
integrals for the rank-one hyperbolic group, with dual-path verification."""

__version__ = "0.1.0"
