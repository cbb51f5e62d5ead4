"""Exact computer algebra for invariant differential operators on the unit
sphere bundles of rank-one symmetric spaces: Lie algebras, the enveloping
algebra in PBW form, reduction modulo U(g)k0, the generators and their
commutation relations."""
from __future__ import annotations

from .generators import build_generators, casimir, central_elements
from .liealg import build_algebra, resolve_space, structure_audit
from .reduction import Quotient, ideal_reduce, is_invariant
from .relations import discover, interpolate_n, shipped_relations, verify, verify_suite
from .uea import UEA, DegreeCapExceeded

__all__ = [
    "build_algebra",
    "resolve_space",
    "structure_audit",
    "UEA",
    "DegreeCapExceeded",
    "Quotient",
    "ideal_reduce",
    "is_invariant",
    "build_generators",
    "casimir",
    "central_elements",
    "verify",
    "verify_suite",
    "shipped_relations",
    "discover",
    "interpolate_n",
]

__version__ = "0.1.0"
