"""Exact lattice and period computations for glued K3 surfaces."""
__version__ = "0.1.0"
