"""Simplicial complexes with small g2: moves, rigidity, recognition."""
from .complex import (
    FHGVectors,
    SimplicialComplex,
    boundary_of_simplex,
    fhg_vectors,
    from_facets,
    join,
    parse_facets,
    read_facets,
    write_facets,
)
from .canonical import canonical_form, is_isomorphic
from .errors import Gee2Error, MoveError
from .verify import Field, betti, is_homology_manifold, is_homology_sphere, is_normal, normality

__version__ = "0.1.0"
