"""Chebyshev-race: logarithmic densities of prime number races"""

__version__ = "1.0.0"
