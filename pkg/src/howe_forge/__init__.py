"""Exact finite-rank checks for dual-pair decompositions, algebraic
induction, and coadjoint-orbit matching.

The algebraic modules (weights, tensor, fock, rieffel) are exact over the
rationals; classical carries the floating-point orbit checks; cli fronts
the verification grids.
"""

__version__ = "0.1.0"
