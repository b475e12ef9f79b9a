"""Generalized coherent states for the Heisenberg-Weyl, SU(2) and SU(1,1)
groups: closed-form overlaps, resolutions of identity, reproducing
kernels, spin dynamics, P/Q representations and lattice completeness
analysis."""

from . import dynamics, frames, halfint, quadrature, special, su2, su11, weyl

__version__ = "0.1.0"

__all__ = [
    "dynamics", "frames", "halfint", "quadrature", "special",
    "su2", "su11", "weyl",
]
