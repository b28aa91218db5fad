"""Recognition of stacked spheres by peeling off stacking vertices."""
from __future__ import annotations

from itertools import combinations
from typing import Optional

from .complex import Simplex, SimplicialComplex, boundary_of_simplex


def stacking_vertex(k: SimplicialComplex, v: int) -> Optional[Simplex]:
    """If ``v`` has link ∂τ for a (d)-simplex τ missing from ``k``, return τ."""
    d = k.dim
    if k.degree(v) != d + 1:
        return None
    lk = k.link((v,))
    tau = lk.vertices
    if lk != boundary_of_simplex(tau) or tau in k.face_set:
        return None
    return tau


def stacked_witness(k: SimplicialComplex) -> Optional[list[tuple[int, Simplex]]]:
    """Removal order [(v, τ), ...] reducing ``k`` to ∂σ^{d+1}, or None.

    Each step deletes a vertex whose link is the boundary of a missing
    simplex τ and inserts τ (an inverse facet subdivision).
    """
    d = k.dim
    if not k.is_pure or d < 1:
        return None
    if d >= 3 and k.g2 != 0:
        return None
    steps: list[tuple[int, Simplex]] = []
    cur = k
    while cur.f0 > d + 2:
        for v in cur.vertices:
            tau = stacking_vertex(cur, v)
            if tau is not None:
                cur = SimplicialComplex(cur.deletion(v) + [tau])
                steps.append((v, tau))
                break
        else:
            return None
    if cur.f0 == d + 2 and cur == boundary_of_simplex(cur.vertices):
        return steps
    return None


def is_stacked_sphere(k: SimplicialComplex) -> bool:
    return stacked_witness(k) is not None


def clique_closure(k: SimplicialComplex, size: int) -> list[Simplex]:
    """All ``size``-subsets of V(k) whose edges all lie in the graph of ``k``."""
    adj = k.adjacency
    out = []
    for c in combinations(k.vertices, size):
        if all(b in adj[a] for a, b in combinations(c, 2)):
            out.append(c)
    return out
