"""Numerical laboratory for the generalized Hilbert matrix operator on the unit disk."""
