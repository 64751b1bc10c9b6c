"""Exact derivation of differential relations among Kleinian p-functions.

The package builds, for a plane (n,s)-curve with a single branch point at
infinity, the complete weight-graded hierarchy of polynomial relations
among the Kleinian p-functions: the KdV-type four-index relations, the
Jacobi-variety quadratic relations, the quasilinear relations, and the
genus-2 Kummer quartic.  The primary derivation route goes through hook
determinants of the curve's tau model; a classical genus-2 expansion
engine provides an independent cross-check.
"""

__version__ = "1.0.0"

ENGINE_VERSION = __version__
