"""Abstract regular polyhedra as rank-3 string C-groups, and a census of the vertex-faithful ones."""

__version__ = "0.1.0"

from .fp import CosetLimitExceeded, Presentation, Word, group_order, parse_presentation
from .perm import Permutation, PermGroup, generate, parse_cycles, parse_generators
from .polyhedron import (
    Polyhedron,
    PolyhedronError,
    covers,
    from_generators,
    from_presentation,
    iso_as_polyhedra,
    try_polyhedron,
)
from .operators import dual, petrial, petrial_dual_torus, vertex_faithful_quotient
from .families import LambdaParams, flat_family_catalog, flat_orientable_predicate, toroidal_44
from .enumerate import CensusRecord, enumerate_vertex_faithful

__all__ = [
    "CensusRecord", "CosetLimitExceeded", "LambdaParams", "PermGroup", "Permutation",
    "Polyhedron", "PolyhedronError", "Presentation", "Word", "covers", "dual",
    "enumerate_vertex_faithful", "flat_family_catalog", "flat_orientable_predicate",
    "from_generators", "from_presentation", "generate", "group_order", "iso_as_polyhedra",
    "parse_cycles", "parse_generators", "parse_presentation", "petrial", "petrial_dual_torus",
    "toroidal_44", "try_polyhedron", "vertex_faithful_quotient",
]
