"""Constructors for the named complexes used throughout the library.

Labels start at 1 so the output can be written as a facet-list file as is.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable

from .complex import SimplicialComplex, boundary_of_simplex, join_all
from .errors import TooFewVertices, UnknownVertex
from .moves import facet_subdivision, one_vertex_suspension


def boundary_sphere(d: int, start: int = 1) -> SimplicialComplex:
    """∂σ^{d+1} on the vertices start .. start+d+1."""
    return boundary_of_simplex(range(start, start + d + 2))


def stacked_sphere(d: int, subdivision_count: int, seed: int = 0) -> SimplicialComplex:
    rng = random.Random(seed)
    k = boundary_sphere(d)
    for _ in range(subdivision_count):
        facet = rng.choice(k.facet_list)
        k, _ = facet_subdivision(k, facet, apex=max(k.vertices) + 1)
    return k


def join_spheres(dims: Iterable[int]) -> SimplicialComplex:
    """Join of ∂σ^k over k in ``dims`` (k is the simplex dimension, so ∂σ^k is a (k-1)-sphere).

    ``(1, i, d - i)`` gives ∂σ¹⋆∂σ^i⋆∂σ^{d-i}, a sphere of dimension d.
    A zero entry contributes {∅} and leaves the join unchanged.
    """
    factors = []
    nxt = 1
    for k in dims:
        if k < 0:
            raise ValueError("simplex dimensions must be >= 0")
        factors.append(boundary_of_simplex(range(nxt, nxt + k + 1)))
        nxt += k + 1
    return join_all(factors)


def cross_polytope(d: int) -> SimplicialComplex:
    """Join of d+1 copies of S⁰; antipodal pairs are (1,2), (3,4), ..."""
    return join_all(SimplicialComplex([(2 * i + 1,), (2 * i + 2,)]) for i in range(d + 1))


def _gale_even(subset: tuple[int, ...], n: int) -> bool:
    s = set(subset)
    outside = [j for j in range(1, n + 1) if j not in s]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for v in subset if a < v < b) % 2:
            return False
    return True


def cyclic_sphere(n: int, d: int) -> SimplicialComplex:
    """Boundary of the cyclic (d+1)-polytope on n vertices, by Gale evenness."""
    if n < d + 2:
        raise TooFewVertices(f"cyclic sphere needs n >= d + 2, got n={n}, d={d}")
    return SimplicialComplex(c for c in combinations(range(1, n + 1), d + 1) if _gale_even(c, n))


def rp2_6() -> SimplicialComplex:
    return SimplicialComplex([
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
    ])


def _cone_over_square(apex: int, a: int, b: int, c: int, d: int) -> list[tuple[int, ...]]:
    # ∂(ab) ⋆ ∂(cd) is the 4-cycle a-c-b-d
    cycle = [a, c, b, d]
    return [(apex, cycle[i], cycle[(i + 1) % 4]) for i in range(4)]


def rp2_7() -> SimplicialComplex:
    """7-vertex ℝP² made of three cones over 4-cycles.

    Vertices: 1 = u, 2 = x1, 3 = x2, 4 = u_k, 5 = u_i, 6 = v_l, 7 = v_{d-i}.
    """
    facets = (_cone_over_square(1, 6, 7, 4, 5)
              + _cone_over_square(2, 6, 4, 5, 7)
              + _cone_over_square(3, 5, 6, 4, 7))
    return SimplicialComplex(facets)


def suspension_tower(base: SimplicialComplex, steps: Iterable[int]) -> tuple[SimplicialComplex, list[int]]:
    """Fold one-vertex suspensions; returns the result and g2 after each step."""
    k = base
    trace = []
    for v in steps:
        if v not in k.vertices:
            raise UnknownVertex(f"vertex {v} not in complex")
        top = max(k.vertices)
        k, _ = one_vertex_suspension(k, v, top + 1, top + 2)
        trace.append(k.g2)
    return k, trace


def universal_vertex(k: SimplicialComplex) -> int:
    """Smallest vertex adjacent to all others (raises if none)."""
    for v in k.vertices:
        if k.degree(v) == k.f0 - 1:
            return v
    raise UnknownVertex("no vertex is adjacent to all others")


def rp2_tower(height: int, seven: bool = False) -> SimplicialComplex:
    """``height`` one-vertex suspensions of ℝP²₆ (or ℝP²₇) at universally adjacent vertices."""
    k = rp2_7() if seven else rp2_6()
    for _ in range(height):
        k, _ = suspension_tower(k, [universal_vertex(k)])
    return k
