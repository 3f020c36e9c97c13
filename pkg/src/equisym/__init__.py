"""Finite group actions on compact Riemann surfaces: signatures, generating
vectors, topological equivalence and Jacobian decompositions."""

from .errors import (
    CapabilityError,
    ConsistencyError,
    EquisymError,
    GroupValidationError,
    NotAdmissibleError,
    ParseError,
    ShapeError,
)
from .genvec import GeneratingVector, count_vectors, enumerate_vectors, find_vector, is_surface_kernel, parse_vector
from .group import Group, Subgroup, automorphisms, build_group, cyclic, dihedral, from_table, load_catalog
from .mcg import Move, apply_move, are_equivalent, orbits
from .representations import decompose, quotient_genus, rational_irreducibles
from .scanner import arithmetic_max, linear_form_analysis, realizable_max, scan
from .signature import Signature, enumerate_signatures, parse_signature, rh_genus, teich_dim

__version__ = "0.1.0"
