"""Retriangulation moves with legality checks and reversible records.

Every move is a pure function ``move(K, ...) -> (K', MoveRecord)``.  The
record carries the forward parameters (so it can be replayed on an
isomorphic-by-construction base), the parameters of the inverse move, and
the g2 difference recomputed from the two complexes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterable, Optional, Sequence

from .complex import Simplex, SimplicialComplex, boundary_of_simplex, simplex
from .errors import (
    ApexCollision,
    DimensionMismatch,
    DiscDecompositionFailed,
    EdgeNotMissing,
    EdgePresent,
    FaceNotPresent,
    FreshVertexCollision,
    IdentificationCollision,
    InteriorFacePresent,
    LinkConditionFailed,
    LinkNotBoundaryOfSimplex,
    LinkNotQuadrilateral,
    LinkNotSphere,
    LinkNotStacked,
    MinimumVertices,
    NotABall,
    NotAFacet,
    NotDimension3,
    NotSeparating,
    PatternMismatch,
    RidgeNotInterior,
    TauNotMissing,
    TauPresent,
    VertexMissing,
)
from .stacked import clique_closure, stacked_witness
from .verify import Field, dual_components, is_homology_sphere


class MoveKind(str, Enum):
    EdgeFlip = "EdgeFlip"
    Bistellar1 = "Bistellar1"
    BistellarDminus1 = "BistellarDminus1"
    GenBistellar1 = "GenBistellar1"
    GenBistellarDminus1 = "GenBistellarDminus1"
    EdgeContract = "EdgeContract"
    EdgeExpand = "EdgeExpand"
    CentralRetri = "CentralRetri"
    InverseCentralRetri = "InverseCentralRetri"
    OneVertexSuspension = "OneVertexSuspension"
    InverseOneVertexSuspension = "InverseOneVertexSuspension"
    Swartz = "Swartz"
    InverseSwartz = "InverseSwartz"
    FacetSubdivision = "FacetSubdivision"
    ConnectedSum = "ConnectedSum"
    ConnectedSumSplit = "ConnectedSumSplit"


@dataclass(frozen=True)
class MoveRecord:
    kind: MoveKind
    params: dict
    inverse_kind: MoveKind
    inverse_params: dict
    g2_delta: int
    notes: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "params": _jsonable(self.params),
            "inverse_kind": self.inverse_kind.value,
            "inverse_params": _jsonable(self.inverse_params),
            "g2_delta": self.g2_delta,
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "MoveRecord":
        return cls(
            MoveKind(data["kind"]),
            data["params"],
            MoveKind(data["inverse_kind"]),
            data["inverse_params"],
            int(data["g2_delta"]),
            data.get("notes", ""),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _record(kind, params, inv_kind, inv_params, before: SimplicialComplex, after: SimplicialComplex, notes=""):
    return MoveRecord(MoveKind(kind), params, MoveKind(inv_kind), inv_params, after.g2 - before.g2, notes)


def _facets_lists(facets: Iterable[Simplex]) -> list[list[int]]:
    return [list(f) for f in sorted(facets)]


def _require_edge(k: SimplicialComplex, edge: Sequence[int]) -> Simplex:
    e = simplex(edge)
    if len(e) != 2 or e not in k.face_set:
        raise FaceNotPresent(f"{e} is not an edge")
    return e


def _replace(k: SimplicialComplex, removed: Iterable[Simplex], added: Iterable[Simplex]) -> SimplicialComplex:
    rm = set(removed)
    return SimplicialComplex([f for f in k.facet_list if f not in rm] + [simplex(f) for f in added])


def _fresh(k: SimplicialComplex, given: Optional[int], taken: Iterable[int] = ()) -> int:
    taken = set(taken)
    if given is None:
        return k.fresh_vertices(1, avoid=taken)[0]
    if given in k.vertices or given in taken:
        raise FreshVertexCollision(f"vertex {given} is already in use")
    return given


def _is_cycle(k: SimplicialComplex) -> bool:
    if k.dim != 1 or not k.is_pure:
        return False
    return all(k.degree(v) == 2 for v in k.vertices) and len(dual_components(list(k.facet_list))) == 1


def _boundary_ridges(facets: Iterable[Simplex]) -> set[Simplex]:
    count: dict[Simplex, int] = {}
    for f in facets:
        for i in range(len(f)):
            r = f[:i] + f[i + 1:]
            count[r] = count.get(r, 0) + 1
    return {r for r, c in count.items() if c == 1}


# edge flip --------------------------------------------------------------------------

def edge_flip(k: SimplicialComplex, edge: Sequence[int], new_edge: Sequence[int]):
    """Replace the star of ``ac`` (link a 4-cycle b p d q) by ``bd ⋆ C(a,p,c,q)``."""
    if k.dim != 3:
        raise NotDimension3("edge flips are defined for d = 3")
    ac = _require_edge(k, edge)
    bd = simplex(new_edge)
    lk = k.link(ac)
    if not (_is_cycle(lk) and lk.f0 == 4):
        raise LinkNotQuadrilateral(f"link of {ac} is not a 4-cycle")
    if not set(bd) <= set(lk.vertices) or len(bd) != 2:
        raise PatternMismatch(f"{bd} is not a pair of link vertices of {ac}")
    if bd in k.face_set:
        raise EdgeNotMissing(f"{bd} is an edge")
    p, q = sorted(set(lk.vertices) - set(bd))
    a, c = ac
    removed = k.star_facets(ac)
    added = [bd + (a, p), bd + (p, c), bd + (c, q), bd + (q, a)]
    out = _replace(k, removed, added)
    rec = _record("EdgeFlip", {"edge": list(ac), "new_edge": list(bd)},
                  "EdgeFlip", {"edge": list(bd), "new_edge": list(ac)}, k, out)
    return out, rec


# bistellar moves ----------------------------------------------------------------------

def bistellar_dminus1(k: SimplicialComplex, edge: Sequence[int]):
    """Edge uv with lk(uv) = ∂τ, τ missing: replace the star of uv by τ⋆u ∪ τ⋆v."""
    uv = _require_edge(k, edge)
    d = k.dim
    lk = k.link(uv)
    tau = lk.vertices
    if len(tau) != d or lk != boundary_of_simplex(tau):
        raise LinkNotBoundaryOfSimplex(f"link of {uv} is not the boundary of a (d-1)-simplex")
    if tau in k.face_set:
        raise TauPresent(f"{tau} is a face")
    u, v = uv
    out = _replace(k, k.star_facets(uv), [tau + (u,), tau + (v,)])
    rec = _record("BistellarDminus1", {"edge": list(uv)}, "Bistellar1", {"ridge": list(tau)}, k, out)
    return out, rec


def bistellar_1(k: SimplicialComplex, ridge: Sequence[int]):
    """Ridge τ in exactly the facets τu, τv with uv missing: replace them by uv⋆∂τ."""
    tau = simplex(ridge)
    d = k.dim
    owners = k.ridge_facets.get(tau, []) if len(tau) == d else []
    if len(owners) != 2:
        raise RidgeNotInterior(f"{tau} is not a ridge in exactly two facets")
    (u,) = set(owners[0]) - set(tau)
    (v,) = set(owners[1]) - set(tau)
    uv = simplex((u, v))
    if uv in k.face_set:
        raise EdgePresent(f"{uv} is an edge")
    added = [uv + tau[:i] + tau[i + 1:] for i in range(len(tau))]
    out = _replace(k, owners, added)
    rec = _record("Bistellar1", {"ridge": list(tau)}, "BistellarDminus1", {"edge": list(uv)}, k, out)
    return out, rec


def _suspended_boundary(x: int, y: int, tau: Simplex) -> set[Simplex]:
    return {simplex((w,) + tau[:i] + tau[i + 1:]) for w in (x, y) for i in range(len(tau))}


def gen_bistellar_dminus1(k: SimplicialComplex, edge: Sequence[int], x: Optional[int] = None, y: Optional[int] = None):
    """Edge uv with lk(uv) = ∂(∂(xy)⋆τ), τ a missing (d-2)-simplex: replace st(uv) by ∂(uv)⋆∂(xy)⋆τ."""
    uv = _require_edge(k, edge)
    d = k.dim
    if d < 4:
        raise PatternMismatch("generalized bistellar moves are used for d >= 4")
    lk = k.link(uv)
    verts = lk.vertices
    pairs = [simplex((x, y))] if x is not None and y is not None else [
        (a, b) for i, a in enumerate(verts) for b in verts[i + 1:]
    ]
    found = None
    for a, b in pairs:
        tau = tuple(w for w in verts if w not in (a, b))
        if len(tau) == d - 1 and lk.facets == _suspended_boundary(a, b, tau):
            found = (a, b, tau)
            break
    if found is None:
        raise PatternMismatch(f"link of {uv} is not ∂(∂(xy)⋆τ)")
    a, b, tau = found
    if tau in k.face_set:
        raise TauPresent(f"{tau} is a face")
    u, v = uv
    added = [simplex((p, q) + tau) for p in (u, v) for q in (a, b)]
    out = _replace(k, k.star_facets(uv), added)
    rec = _record("GenBistellarDminus1", {"edge": list(uv), "x": a, "y": b},
                  "GenBistellar1", {"x": a, "y": b, "tau": list(tau)}, k, out)
    return out, rec


def gen_bistellar_1(k: SimplicialComplex, x: int, y: int, tau: Sequence[int]):
    """(d-2)-face τ with lk(τ) the 4-cycle x u y v, uv missing: insert uv, remove τ."""
    d = k.dim
    if d < 4:
        raise PatternMismatch("generalized bistellar moves are used for d >= 4")
    t = simplex(tau)
    if len(t) != d - 1 or t not in k.face_set:
        raise PatternMismatch(f"{t} is not a (d-2)-face")
    lk = k.link(t)
    if not (_is_cycle(lk) and lk.f0 == 4) or x not in lk.vertices or y not in lk.vertices:
        raise PatternMismatch(f"link of {t} is not a 4-cycle through {x}, {y}")
    if simplex((x, y)) in lk.face_set:
        raise PatternMismatch(f"{x}, {y} are adjacent in the link of {t}")
    u, v = sorted(set(lk.vertices) - {x, y})
    if (u, v) in k.face_set:
        raise EdgePresent(f"{(u, v)} is an edge")
    added = [simplex((u, v) + (w,) + t[:i] + t[i + 1:]) for w in (x, y) for i in range(len(t))]
    out = _replace(k, k.star_facets(t), added)
    rec = _record("GenBistellar1", {"x": x, "y": y, "tau": list(t)},
                  "GenBistellarDminus1", {"edge": [u, v], "x": x, "y": y}, k, out)
    return out, rec


# edge contraction / expansion -------------------------------------------------------------

def link_condition(k: SimplicialComplex, edge: Sequence[int]) -> bool:
    u, v = _require_edge(k, edge)
    common = k.link((u,)).face_set & k.link((v,)).face_set
    return common == k.link((u, v)).face_set


def edge_contract(k: SimplicialComplex, edge: Sequence[int]):
    """Merge ``v`` into ``u`` for edge (u, v); the label ``u`` (first entry) survives."""
    u, v = edge
    _require_edge(k, edge)
    d = k.dim
    if k.f0 - 1 < d + 2:
        raise MinimumVertices(f"contraction would leave fewer than {d + 2} vertices")
    if not link_condition(k, edge):
        raise LinkConditionFailed(f"lk({u}) ∩ lk({v}) != lk({u}{v})")
    lk_uv = k.link((u, v))
    d2 = [tuple(w for w in f if w != v) for f in k.star_facets((v,)) if u not in f]
    new = []
    for f in k.facet_list:
        if v in f:
            if u in f:
                continue
            f = simplex([u if w == v else w for w in f])
        new.append(f)
    out = SimplicialComplex(new)
    rec = _record("EdgeContract", {"edge": [u, v]}, "EdgeExpand",
                  {"vertex": u, "sphere": _facets_lists(lk_uv.facets), "new_vertex": v,
                   "d2": _facets_lists(d2)}, k, out)
    return out, rec


def edge_expand(k: SimplicialComplex, vertex: int, sphere: Iterable[Iterable[int]],
                new_vertex: Optional[int] = None, d2: Optional[Iterable[Iterable[int]]] = None):
    """Split ``vertex`` into an edge along a (d-2)-sphere ``sphere`` of its link.

    The old label keeps the disc not selected by ``d2``; the new vertex
    (fresh if not given) gets the other one.
    """
    w = vertex
    if w not in k.vertices:
        raise VertexMissing(f"vertex {w} not in complex")
    d = k.dim
    lk = k.link((w,))
    s = SimplicialComplex(sphere)
    if s.dim != d - 2 or not s.facets <= lk.face_set:
        raise NotSeparating("sphere must be a (d-2)-dimensional subcomplex of the link")
    if d >= 2 and not is_homology_sphere(s, Field.GF2):
        raise NotSeparating("given subcomplex is not a homology sphere")
    comps = dual_components(list(lk.facet_list), frozenset(s.facets))
    if len(comps) != 2:
        raise NotSeparating(f"sphere splits the link into {len(comps)} pieces")
    for c in comps:
        if _boundary_ridges(c) != set(s.facets):
            raise DiscDecompositionFailed("a side does not have the sphere as boundary")
    if d2 is None:
        disc1, disc2 = comps
    else:
        want = {simplex(f) for f in d2}
        if want == set(comps[0]):
            disc2, disc1 = comps
        elif want == set(comps[1]):
            disc1, disc2 = comps
        else:
            raise DiscDecompositionFailed("d2 is not one of the two discs")
    v = _fresh(k, new_vertex)
    added = ([simplex((w, v) + f) for f in s.facets]
             + [simplex((w,) + f) for f in disc1]
             + [simplex((v,) + f) for f in disc2])
    out = SimplicialComplex(k.deletion(w) + added)
    rec = _record("EdgeExpand", {"vertex": w, "sphere": _facets_lists(s.facets), "new_vertex": v,
                                 "d2": _facets_lists(disc2)},
                  "EdgeContract", {"edge": [w, v]}, k, out)
    return out, rec


# central retriangulation -----------------------------------------------------------------

def _check_ball(k: SimplicialComplex, ball: list[Simplex]) -> set[Simplex]:
    d = k.dim
    if not ball or any(f not in k.facets for f in ball):
        raise NotABall("ball must be a nonempty set of facets")
    bd = _boundary_ridges(ball)
    bdc = SimplicialComplex(bd)
    if bdc.dim != d - 1 or not (
        is_homology_sphere(bdc, Field.GF2) and is_homology_sphere(bdc, Field.Q)
    ):
        raise NotABall("boundary of the ball is not a homology sphere")
    outside = SimplicialComplex([f for f in k.facet_list if f not in set(ball)])
    interior = SimplicialComplex(ball).face_set - bdc.face_set
    if outside.facets != {()} and interior & outside.face_set:
        raise NotABall("an interior face of the ball is used outside it")
    return bd


def central_retriangulation(k: SimplicialComplex, ball: Iterable[Iterable[int]], apex: Optional[int] = None,
                            _kind: str = "CentralRetri"):
    """Remove the facets of ``ball`` and cone its boundary from a fresh apex."""
    b = sorted({simplex(f) for f in ball})
    bd = _check_ball(k, b)
    if apex is not None and apex in k.vertices:
        raise ApexCollision(f"apex {apex} already in complex")
    a = _fresh(k, apex)
    out = _replace(k, b, [simplex((a,) + r) for r in bd])
    if _kind == "FacetSubdivision":
        params = {"facet": list(b[0]), "apex": a}
    else:
        params = {"ball": _facets_lists(b), "apex": a}
    rec = _record(_kind, params, "InverseCentralRetri", {"vertex": a, "ball": _facets_lists(b)}, k, out)
    return out, rec


def facet_subdivision(k: SimplicialComplex, facet: Iterable[int], apex: Optional[int] = None):
    f = simplex(facet)
    if f not in k.facets:
        raise NotAFacet(f"{f} is not a facet")
    return central_retriangulation(k, [f], apex, _kind="FacetSubdivision")


def inverse_central_retriangulation(k: SimplicialComplex, vertex: int,
                                    ball: Optional[Iterable[Iterable[int]]] = None):
    """Replace the star of ``vertex`` by a ball with the same boundary.

    Without ``ball`` the link must be a stacked sphere and the ball is its
    clique closure lk(v)(1) (all d-simplices spanned by cliques of the link graph).
    """
    v = vertex
    if v not in k.vertices:
        raise VertexMissing(f"vertex {v} not in complex")
    d = k.dim
    lk = k.link((v,))
    if ball is None:
        if stacked_witness(lk) is None:
            raise LinkNotStacked(f"link of {v} is not a stacked sphere")
        b = clique_closure(lk, d + 1)
        if {simplex(r) for r in _boundary_ridges(b)} != set(lk.facets):
            raise LinkNotStacked(f"clique closure of the link of {v} is not a ball bounded by the link")
    else:
        b = sorted({simplex(f) for f in ball})
        if _boundary_ridges(b) != set(lk.facets):
            raise NotABall("ball boundary differs from the vertex link")
    interior = SimplicialComplex(b).face_set - lk.face_set
    if interior & k.face_set:
        raise InteriorFacePresent("an interior face of the ball is already a face")
    out = SimplicialComplex(k.deletion(v) + list(b))
    rec = _record("InverseCentralRetri", {"vertex": v, "ball": _facets_lists(b)},
                  "CentralRetri", {"ball": _facets_lists(b), "apex": v}, k, out)
    return out, rec


# one-vertex suspension ----------------------------------------------------------------------

def one_vertex_suspension(k: SimplicialComplex, vertex: int, x: Optional[int] = None, y: Optional[int] = None):
    """Σ_v K: facets xy⋆(F∖v) for F ∋ v, and x⋆F, y⋆F for F ∌ v."""
    v = vertex
    if v not in k.vertices:
        raise VertexMissing(f"vertex {v} not in complex")
    x = _fresh(k, x)
    y = _fresh(k, y, taken=[x])
    new = []
    for f in k.facet_list:
        if v in f:
            new.append(simplex((x, y) + tuple(w for w in f if w != v)))
        else:
            new.append(simplex((x,) + f))
            new.append(simplex((y,) + f))
    out = SimplicialComplex(new)
    rec = _record("OneVertexSuspension", {"vertex": v, "x": x, "y": y},
                  "InverseOneVertexSuspension", {"x": x, "y": y, "vertex": v}, k, out)
    return out, rec


def inverse_one_vertex_suspension(k: SimplicialComplex, x: int, y: int, vertex: Optional[int] = None):
    """Recover K from Σ_v K given the two suspension vertices x, y."""
    _require_edge(k, (x, y))
    v = _fresh(k, vertex)
    base = k.link((x,)).relabel({y: v})
    if base.dim != k.dim - 1 or one_vertex_suspension(base, v, x, y)[0] != k:
        raise PatternMismatch(f"{x}, {y} are not one-vertex suspension apexes")
    rec = _record("InverseOneVertexSuspension", {"x": x, "y": y, "vertex": v},
                  "OneVertexSuspension", {"vertex": v, "x": x, "y": y}, k, base)
    return base, rec


# Swartz operation --------------------------------------------------------------------------

def _is_missing_in_link(lk: SimplicialComplex, tau: Simplex) -> bool:
    return tau not in lk.face_set and all(tau[:i] + tau[i + 1:] in lk.face_set for i in range(len(tau)))


def swartz_operation(k: SimplicialComplex, vertex: int, tau: Iterable[int],
                     apexes: Optional[Sequence[Optional[int]]] = None, allow_simplex: bool = True):
    """Remove ``vertex``, insert the missing facet τ of its link, and cone off both sides.

    A side equal to the boundary of a d-simplex missing from K ∪ {τ} is filled
    by that simplex instead (side S1 considered first) unless ``allow_simplex``
    is False.  With cones on both sides this is the composite of an edge
    expansion and a bistellar (d-1)-move.
    """
    v = vertex
    if v not in k.vertices:
        raise VertexMissing(f"vertex {v} not in complex")
    t = simplex(tau)
    d = k.dim
    lk = k.link((v,))
    if not is_homology_sphere(lk, Field.GF2):
        raise LinkNotSphere(f"link of {v} is not a homology sphere")
    if len(t) != d or not _is_missing_in_link(lk, t) or t in k.face_set:
        raise TauNotMissing(f"{t} is not a missing facet of lk({v}) absent from K")
    ridges = frozenset(t[:i] + t[i + 1:] for i in range(len(t)))
    comps = dual_components(list(lk.facet_list), ridges)
    if len(comps) != 2:
        raise NotSeparating(f"∂{t} splits the link into {len(comps)} pieces")
    given = list(apexes) if apexes is not None else [None, None]
    rest = k.deletion(v)
    taken: list[int] = [w for w in given if w is not None]
    k_minus = SimplicialComplex(rest + [t])
    added: list[Simplex] = []
    used_apexes: list[Optional[int]] = []
    simplices: list[Optional[list[int]]] = []
    branches = []
    filled: set = set()
    for i, disc in enumerate(comps):
        side = SimplicialComplex(list(disc) + [t])
        sigma = side.vertices
        if (allow_simplex and len(sigma) == d + 1 and side == boundary_of_simplex(sigma)
                and sigma not in k_minus.face_set and sigma not in filled):
            added.append(sigma)
            filled.add(sigma)
            used_apexes.append(None)
            simplices.append(list(sigma))
            branches.append("simplex")
            continue
        want = given[i]
        if want is not None and want != v and want in k.vertices:
            raise FreshVertexCollision(f"apex {want} already in complex")
        a = want if want is not None else SimplicialComplex(rest).fresh_vertices(1, avoid=taken + [v])[0]
        taken.append(a)
        added.extend(simplex((a,) + f) for f in side.facets)
        used_apexes.append(a)
        simplices.append(None)
        branches.append("cone")
    out = SimplicialComplex(rest + added)
    rec = _record("Swartz", {"vertex": v, "tau": list(t), "apexes": used_apexes, "allow_simplex": allow_simplex},
                  "InverseSwartz", {"vertex": v, "tau": list(t), "apexes": used_apexes, "simplices": simplices},
                  k, out, notes="branches=" + ",".join(branches))
    return out, rec


def inverse_swartz(k: SimplicialComplex, vertex: int, tau: Iterable[int],
                   apexes: Sequence[Optional[int]], simplices: Sequence[Optional[Iterable[int]]]):
    v = vertex
    if v in k.vertices and v not in apexes:
        raise FreshVertexCollision(f"vertex {v} already in complex")
    t = simplex(tau)
    removed: list[Simplex] = []
    discs: list[Simplex] = []
    for a, s in zip(apexes, simplices):
        if a is not None:
            if a not in k.vertices:
                raise PatternMismatch(f"apex {a} missing")
            star = k.star_facets((a,))
            removed.extend(star)
            discs.extend(tuple(w for w in f if w != a) for f in star)
        else:
            sig = simplex(s)
            if sig not in k.facets:
                raise PatternMismatch(f"{sig} is not a facet")
            removed.append(sig)
            discs.extend(sig[:i] + sig[i + 1:] for i in range(len(sig)))
    discs = [f for f in discs if f != t]
    out = _replace(k, removed, [simplex((v,) + f) for f in discs])
    rec = _record("InverseSwartz", {"vertex": v, "tau": list(t), "apexes": list(apexes), "simplices": list(simplices)},
                  "Swartz", {"vertex": v, "tau": list(t), "apexes": list(apexes),
                             "allow_simplex": any(s is not None for s in simplices)}, k, out)
    return out, rec


# connected sum ----------------------------------------------------------------------------------

def connected_sum(k1: SimplicialComplex, k2: SimplicialComplex, facet: Iterable[int], other_facet: Iterable[int],
                  bijection: Optional[dict[int, int]] = None):
    """Glue ``k2`` to ``k1`` along facets (other_facet -> facet), deleting both."""
    if k1.dim != k2.dim:
        raise DimensionMismatch(f"dimensions {k1.dim} and {k2.dim} differ")
    f1, f2 = simplex(facet), simplex(other_facet)
    if f1 not in k1.facets or f2 not in k2.facets:
        raise NotAFacet("gluing simplices must be facets")
    phi = dict(bijection) if bijection is not None else dict(zip(f2, f1))
    phi = {int(a): int(b) for a, b in phi.items()}
    if set(phi) != set(f2) or set(phi.values()) != set(f1):
        raise IdentificationCollision("bijection must map the second facet onto the first")
    rest2 = set(k2.vertices) - set(f2)
    clash = rest2 & set(k1.vertices)
    if clash:
        raise IdentificationCollision(f"vertices {sorted(clash)} occur in both complexes")
    k2r = k2.relabel(phi)
    out = SimplicialComplex([f for f in k1.facet_list if f != f1] + [f for f in k2r.facet_list if f != f1])
    keep = next(f for f in k1.facet_list if f != f1)
    rec = _record("ConnectedSum", {"other": _facets_lists(k2r.facets), "facet": list(f1),
                                   "other_facet": list(f1), "bijection": None},
                  "ConnectedSumSplit", {"tau": list(f1), "keep": list(keep)}, k1, out)
    return out, rec


def split_connected_sum(k: SimplicialComplex, tau: Iterable[int], keep: Iterable[int]):
    """Cut ``k`` along the missing facet τ; return the side containing facet ``keep``, closed by τ."""
    t = simplex(tau)
    kp = simplex(keep)
    if t in k.face_set:
        raise TauPresent(f"{t} is a face")
    ridges = frozenset(t[:i] + t[i + 1:] for i in range(len(t)))
    comps = dual_components(list(k.facet_list), ridges)
    if len(comps) != 2:
        raise NotSeparating(f"∂{t} splits the complex into {len(comps)} pieces")
    side, other = (comps[0], comps[1]) if kp in comps[0] else (comps[1], comps[0])
    if kp not in side:
        raise NotAFacet(f"{kp} is not a facet")
    out = SimplicialComplex(list(side) + [t])
    k2 = SimplicialComplex(list(other) + [t])
    rec = _record("ConnectedSumSplit", {"tau": list(t), "keep": list(kp)},
                  "ConnectedSum", {"other": _facets_lists(k2.facets), "facet": list(t),
                                   "other_facet": list(t), "bijection": None}, k, out)
    return out, rec


# dispatch ---------------------------------------------------------------------------------------

def _connected_sum_move(k, other, facet, other_facet, bijection=None):
    if bijection is not None:
        bijection = {int(a): int(b) for a, b in dict(bijection).items()}
    return connected_sum(k, SimplicialComplex(other), facet, other_facet, bijection)


MOVES: dict[MoveKind, Callable] = {
    MoveKind.EdgeFlip: edge_flip,
    MoveKind.Bistellar1: bistellar_1,
    MoveKind.BistellarDminus1: bistellar_dminus1,
    MoveKind.GenBistellar1: gen_bistellar_1,
    MoveKind.GenBistellarDminus1: gen_bistellar_dminus1,
    MoveKind.EdgeContract: edge_contract,
    MoveKind.EdgeExpand: edge_expand,
    MoveKind.CentralRetri: central_retriangulation,
    MoveKind.InverseCentralRetri: inverse_central_retriangulation,
    MoveKind.OneVertexSuspension: one_vertex_suspension,
    MoveKind.InverseOneVertexSuspension: inverse_one_vertex_suspension,
    MoveKind.Swartz: swartz_operation,
    MoveKind.InverseSwartz: inverse_swartz,
    MoveKind.FacetSubdivision: facet_subdivision,
    MoveKind.ConnectedSum: _connected_sum_move,
    MoveKind.ConnectedSumSplit: split_connected_sum,
}


def apply_move(k: SimplicialComplex, kind: MoveKind | str, params: dict):
    return MOVES[MoveKind(kind)](k, **params)


def invert(k: SimplicialComplex, record: MoveRecord):
    """Apply the recorded inverse of ``record`` to the complex it produced."""
    return apply_move(k, record.inverse_kind, record.inverse_params)


def replay(base: SimplicialComplex, records: Iterable[MoveRecord]) -> SimplicialComplex:
    k = base
    for rec in records:
        k, _ = apply_move(k, rec.kind, rec.params)
    return k
