"""Recognition predicates: normal pseudomanifolds and homology spheres/manifolds.

Homology is computed from ranks of boundary matrices only (no torsion).  Over
GF(2) rows are Python ints used as bitsets; over the rationals elimination is
sparse and exact with :class:`fractions.Fraction`.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction

import networkx as nx

from .complex import SimplicialComplex, Simplex
from .errors import NotNormal, ResourceBound

MAX_FACES = 2 ** 20


class Field(str, Enum):
    GF2 = "GF2"
    Q = "Rational"


@dataclass(frozen=True)
class BettiProfile:
    field: Field
    reduced_betti: tuple[int, ...]  # beta~_0 .. beta~_d


@dataclass(frozen=True)
class NormalityReport:
    pure: bool
    ridge_ok: bool
    strongly_connected: bool
    links_connected: bool
    is_normal: bool

    def as_dict(self) -> dict:
        return asdict(self)


# connectivity -------------------------------------------------------------------

def _graph_connected(k: SimplicialComplex) -> bool:
    verts = k.vertices
    if not verts:
        return False
    adj = k.adjacency
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def dual_components(facets: list[Simplex], forbidden: frozenset = frozenset()) -> list[list[Simplex]]:
    """Components of the facet-adjacency graph, not crossing ridges in ``forbidden``."""
    g = nx.Graph()
    g.add_nodes_from(facets)
    by_ridge: dict[Simplex, list[Simplex]] = {}
    for f in facets:
        for i in range(len(f)):
            r = f[:i] + f[i + 1:]
            if r in forbidden:
                continue
            by_ridge.setdefault(r, []).append(f)
    for fs in by_ridge.values():
        for a, b in zip(fs, fs[1:]):
            g.add_edge(a, b)
    comps = [sorted(c) for c in nx.connected_components(g)]
    return sorted(comps)


def normality(k: SimplicialComplex) -> NormalityReport:
    pure = k.is_pure
    d = k.dim
    if not pure or d < 1:
        return NormalityReport(pure, False, False, False, False)
    ridge_ok = all(len(fs) == 2 for fs in k.ridge_facets.values())
    strongly = len(dual_components(list(k.facet_list))) == 1
    links_ok = True
    for i in range(0, d - 1):
        for face in k.faces(i):
            if not _graph_connected(k.link(face)):
                links_ok = False
                break
        if not links_ok:
            break
    links_ok = links_ok and _graph_connected(k)
    return NormalityReport(pure, ridge_ok, strongly, links_ok, pure and ridge_ok and strongly and links_ok)


def is_normal(k: SimplicialComplex) -> bool:
    return normality(k).is_normal


def require_normal(k: SimplicialComplex) -> None:
    if not is_normal(k):
        raise NotNormal("complex is not a normal pseudomanifold")


# ranks --------------------------------------------------------------------------

def _rank_gf2(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                rank += 1
                break
    return rank


def _rank_q(rows: list[dict[int, int]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        while r:
            col = min(r)
            piv = pivots.get(col)
            if piv is None:
                lead = r[col]
                pivots[col] = {c: v / lead for c, v in r.items()}
                rank += 1
                break
            factor = r[col]
            for c, v in piv.items():
                nv = r.get(c, 0) - factor * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return rank


def _boundary_ranks(k: SimplicialComplex, field: Field) -> dict[int, int]:
    """rank of the boundary map C_i -> C_{i-1}, for i = 0..d (C_{-1} = span{∅})."""
    d = k.dim
    ranks = {}
    index = {}
    for i in range(-1, d + 1):
        index[i] = {f: n for n, f in enumerate(sorted(k.faces(i)))}
    for i in range(0, d + 1):
        lower = index[i - 1]
        faces = index[i]
        if field is Field.GF2:
            rows = []
            for f in faces:
                bits = 0
                for j in range(len(f)):
                    bits |= 1 << lower[f[:j] + f[j + 1:]]
                rows.append(bits)
            ranks[i] = _rank_gf2(rows)
        else:
            rows = []
            for f in faces:
                rows.append({lower[f[:j] + f[j + 1:]]: (-1) ** j for j in range(len(f))})
            ranks[i] = _rank_q(rows)
    return ranks


def betti(k: SimplicialComplex, field: Field | str = Field.GF2) -> BettiProfile:
    """Reduced Betti numbers beta~_0..beta~_d of ``k``."""
    field = Field(field)
    if len(k.face_set) > MAX_FACES:
        raise ResourceBound(f"more than {MAX_FACES} faces")
    d = k.dim
    if d < 0:
        return BettiProfile(field, ())
    ranks = _boundary_ranks(k, field)
    out = []
    for i in range(0, d + 1):
        dim_ci = len(k.faces(i))
        out.append(dim_ci - ranks[i] - ranks.get(i + 1, 0))
    return BettiProfile(field, tuple(out))


def sphere_betti(dim: int) -> tuple[int, ...]:
    return tuple(1 if i == dim else 0 for i in range(dim + 1))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GEE2_THREADS", "1")))
    except ValueError:
        return 1


def _link_is_sphere(k: SimplicialComplex, face, field: Field) -> bool:
    lk = k.link(face) if face else k
    dim = k.dim - len(face)
    if lk.dim != dim:
        return False
    if dim == 0:
        return lk.f0 == 2
    return betti(lk, field).reduced_betti == sphere_betti(dim)


def is_homology_sphere(k: SimplicialComplex, field: Field | str = Field.GF2) -> bool:
    """Every face link (∅ included) has the reduced homology of a sphere of the right dimension."""
    field = Field(field)
    if not k.is_pure:
        return False
    if len(k.face_set) > MAX_FACES:
        raise ResourceBound(f"more than {MAX_FACES} faces")
    faces = sorted((f for f in k.face_set if len(f) <= k.dim), key=lambda f: (len(f), f))
    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return all(pool.map(lambda f: _link_is_sphere(k, f, field), faces))
    return all(_link_is_sphere(k, f, field) for f in faces)


def is_homology_manifold(k: SimplicialComplex, field: Field | str = Field.GF2) -> bool:
    field = Field(field)
    if not k.is_pure:
        return False
    return all(is_homology_sphere(k.link((v,)), field) for v in k.vertices)


def g2_of_all_links(k: SimplicialComplex) -> dict[Simplex, int]:
    """g2 of the link of every nonempty face of codimension >= 3."""
    if k.dim < 3:
        raise NotNormal("links of codimension >= 3 need d >= 3")
    require_normal(k)
    out = {}
    for i in range(0, k.dim - 2):
        for face in sorted(k.faces(i)):
            out[face] = k.link(face).g2
    return out


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum((-1) ** i * n for i, n in enumerate(k.f_vector[1:]))
