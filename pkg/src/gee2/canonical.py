"""Vertex-colour refinement, canonical forms and isomorphism testing.

Colours are refined on the vertex/facet incidence structure until stable
(equitable).  Canonical forms individualise vertices of the first
non-singleton cell and keep the lexicographically least relabelled facet list
over all leaves; isomorphism search stops at the first consistent leaf.
"""
from __future__ import annotations

from collections import Counter
from typing import Optional

from .complex import SimplicialComplex
from .errors import ResourceBound

DEFAULT_VERTEX_CAP = 64


def _incidence(k: SimplicialComplex) -> dict[int, list[tuple]]:
    inc: dict[int, list[tuple]] = {v: [] for v in k.vertices}
    for f in k.facet_list:
        for v in f:
            inc[v].append(f)
    return inc


def _signatures(inc, colors):
    sig = {}
    for v, fs in inc.items():
        around = sorted(tuple(sorted(colors[u] for u in f if u != v)) for f in fs)
        sig[v] = (colors[v], tuple(around))
    return sig


def _refine(incs, colorings):
    """Jointly refine several colourings so colour ids stay comparable."""
    colorings = [dict(c) for c in colorings]
    while True:
        sigs = [_signatures(inc, c) for inc, c in zip(incs, colorings)]
        table = {s: i for i, s in enumerate(sorted(set().union(*[set(s.values()) for s in sigs])))}
        new = [{v: table[s[v]] for v in s} for s in sigs]
        stable = all(len(set(n.values())) == len(set(c.values())) for n, c in zip(new, colorings))
        colorings = new
        if stable:
            return colorings


def _individualize(colors, v):
    keyed = {u: (c, 0 if u == v else 1) for u, c in colors.items()}
    table = {s: i for i, s in enumerate(sorted(set(keyed.values())))}
    return {u: table[s] for u, s in keyed.items()}


def _target_cell(colors):
    counts = Counter(colors.values())
    multi = [c for c, n in counts.items() if n > 1]
    if not multi:
        return None
    c = min(multi)
    return sorted(u for u, col in colors.items() if col == c)


def _initial(k):
    return {v: 0 for v in k.vertices}


def canonical_form(k: SimplicialComplex, max_vertices: int = 16) -> tuple[tuple, dict[int, int]]:
    """Return (relabelled facet tuple on 0..n-1, labelling) invariant under isomorphism."""
    if k.f0 > max_vertices:
        raise ResourceBound(f"canonical form limited to {max_vertices} vertices")
    inc = _incidence(k)
    best: list = [None, None]

    def leaf(colors):
        form = tuple(sorted(tuple(sorted(colors[v] for v in f)) for f in k.facet_list))
        if best[0] is None or form < best[0]:
            best[0], best[1] = form, dict(colors)

    def search(colors):
        (colors,) = _refine([inc], [colors])
        cell = _target_cell(colors)
        if cell is None:
            leaf(colors)
            return
        for v in cell:
            search(_individualize(colors, v))

    search(_initial(k))
    return best[0], best[1]


def canonical_key(k: SimplicialComplex) -> tuple:
    return (k.dim, k.f0, canonical_form(k)[0])


def is_isomorphic(
    k1: SimplicialComplex, k2: SimplicialComplex, max_vertices: int = DEFAULT_VERTEX_CAP
) -> Optional[dict[int, int]]:
    """A facet-preserving vertex bijection k1 -> k2, or None."""
    if k1.f_vector != k2.f_vector:
        return None
    if k1.f0 > max_vertices:
        raise ResourceBound(f"isomorphism search limited to {max_vertices} vertices")
    if sorted(map(k1.degree, k1.vertices)) != sorted(map(k2.degree, k2.vertices)):
        return None
    inc1, inc2 = _incidence(k1), _incidence(k2)
    target = k2.facets

    def consistent(c1, c2):
        return Counter(c1.values()) == Counter(c2.values())

    def search(c1, c2):
        c1, c2 = _refine([inc1, inc2], [c1, c2])
        if not consistent(c1, c2):
            return None
        cell1 = _target_cell(c1)
        if cell1 is None:
            inv2 = {c: v for v, c in c2.items()}
            phi = {v: inv2[c] for v, c in c1.items()}
            if all(tuple(sorted(phi[v] for v in f)) in target for f in k1.facet_list):
                return phi
            return None
        v1 = cell1[0]
        col = c1[v1]
        for v2 in sorted(u for u, c in c2.items() if c == col):
            found = search(_individualize(c1, v1), _individualize(c2, v2))
            if found is not None:
                return found
        return None

    return search(_initial(k1), _initial(k2))
