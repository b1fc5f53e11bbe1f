"""Exact recognition of implicit surfaces of revolution.

Decides whether ``f(x, y, z) = 0`` with rational coefficients is a surface
of revolution, recovers its axis and profile, and studies rationality via
the associated tubular surface.
"""

__version__ = "0.1.0"
