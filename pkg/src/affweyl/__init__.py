"""Exact combinatorics of extended affine Weyl groups."""

from .rootsys import RootSystem, WeylElt, Coweight, build_root_system

__all__ = ["RootSystem", "WeylElt", "Coweight", "build_root_system"]
