"""Exact lattice tools for simultaneous Diophantine approximation and
decompositions of integer vectors."""

from .exact import IdentityViolation
from .lattice import ApproxTarget, Lattice, lattice_from_n

__all__ = ["ApproxTarget", "IdentityViolation", "Lattice", "lattice_from_n"]
