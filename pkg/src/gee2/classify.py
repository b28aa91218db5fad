"""Decision procedures for complexes with small g2.

Each procedure returns a :class:`Certificate`: a base complex and a list of
forward moves whose replay reproduces the input.  Bases are taken in the
input's own labels, so replay is exact equality, not only isomorphism.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Optional

from .canonical import is_isomorphic
from .complex import SimplicialComplex, boundary_of_simplex
from .errors import HypothesisViolation, MoveError, SearchExhausted
from .generators import cyclic_sphere, rp2_6, rp2_7
from .moves import (
    MoveRecord,
    bistellar_1,
    central_retriangulation,
    connected_sum,
    edge_contract,
    edge_expand,
    edge_flip,
    facet_subdivision,
    gen_bistellar_1,
    gen_bistellar_dminus1,
    inverse_central_retriangulation,
    inverse_one_vertex_suspension,
    link_condition,
    one_vertex_suspension,
    replay,
    swartz_operation,
)
from .stacked import stacked_witness, stacking_vertex
from .verify import dual_components, is_normal

log = logging.getLogger(__name__)


class Verdict(str, Enum):
    StackedSphere = "StackedSphere"
    JoinCyclePlusSimplex = "JoinCyclePlusSimplex"
    JoinTwoSimplexBoundaries = "JoinTwoSimplexBoundaries"
    JoinThreeSpheres = "JoinThreeSpheres"
    CyclicDplus4 = "CyclicDplus4"
    SuspensionTowerRP6 = "SuspensionTowerRP6"
    SuspensionTowerCyclic = "SuspensionTowerCyclic"
    EdgeExpansionOfLowG2 = "EdgeExpansionOfLowG2"
    GenBistellar1OfLowG2 = "GenBistellar1OfLowG2"
    Bistellar1PlusContraction = "Bistellar1PlusContraction"
    FlipPlusCentralRetri = "FlipPlusCentralRetri"
    ConnectedSumSplit = "ConnectedSumSplit"
    Unrecognized = "Unrecognized"


@dataclass
class Certificate:
    verdict: Verdict
    base: SimplicialComplex
    moves: list[MoveRecord] = field(default_factory=list)
    notes: str = ""

    def replay(self) -> SimplicialComplex:
        return replay(self.base, self.moves)

    def g2_total(self) -> int:
        return self.base.g2 + sum(m.g2_delta for m in self.moves)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "base": [list(f) for f in self.base.facet_list],
            "base_g2": self.base.g2,
            "moves": [m.to_json() for m in self.moves],
            "notes": self.notes,
        }


# joins ----------------------------------------------------------------------------------------

def _factors_over(k: SimplicialComplex, part: set) -> bool:
    p1 = {tuple(v for v in f if v in part) for f in k.facet_list}
    p2 = {tuple(v for v in f if v not in part) for f in k.facet_list}
    return len(p1) * len(p2) == len(k.facets) and () not in p1 and () not in p2


def _missing_edge_components(k: SimplicialComplex) -> list[list[int]]:
    verts = k.vertices
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in combinations(verts, 2):
        if b not in k.adjacency[a]:
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def join_decomposition(k: SimplicialComplex) -> Optional[list[tuple[int, ...]]]:
    """Vertex sets of the finest join factorization (at least two factors), or None.

    Every factor is a union of components of the missing-edge graph; the
    smallest union containing the first remaining component that splits off
    is taken, then the rest is factored again.
    """
    if not k.is_pure or k.dim < 1:
        return None
    comps = _missing_edge_components(k)
    factors: list[tuple[int, ...]] = []
    cur = k
    while True:
        if len(comps) <= 1:
            break
        first, rest = comps[0], comps[1:]
        found = None
        for size in range(0, len(rest)):
            for extra in combinations(range(len(rest)), size):
                part = set(first).union(*(rest[i] for i in extra))
                if _factors_over(cur, part):
                    found = (part, set(extra))
                    break
            if found:
                break
        if found is None:
            break
        part, used = found
        factors.append(tuple(sorted(part)))
        comps = [c for i, c in enumerate(rest) if i not in used]
        cur = SimplicialComplex(tuple(v for v in f if v not in part) for f in cur.facet_list)
    if not factors:
        return None
    factors.append(cur.vertices)
    return factors


def _factor_complexes(k: SimplicialComplex, parts) -> list[SimplicialComplex]:
    return [SimplicialComplex(tuple(v for v in f if v in set(p)) for f in k.facet_list) for p in parts]


def _is_boundary_simplex(k: SimplicialComplex) -> bool:
    return k == boundary_of_simplex(k.vertices)


def _is_cycle(k: SimplicialComplex) -> bool:
    return (k.dim == 1 and all(k.degree(v) == 2 for v in k.vertices)
            and len(dual_components(list(k.facet_list))) == 1)


# connected sums ------------------------------------------------------------------------------

def connected_sum_split(k: SimplicialComplex, notes: Optional[list[str]] = None):
    """Split along the first missing facet whose boundary separates ``k``.

    Returns (K1, K2, record) with ``record`` the ConnectedSum move that glues
    K2 back onto K1, or None.  Missing facets that do not separate are
    reported through ``notes`` and the log.
    """
    for tau in sorted(k.missing_faces(k.dim)):
        ridges = frozenset(tau[:i] + tau[i + 1:] for i in range(len(tau)))
        comps = dual_components(list(k.facet_list), ridges)
        if len(comps) != 2:
            msg = f"missing facet {list(tau)} does not separate ({len(comps)} piece(s))"
            log.info(msg)
            if notes is not None:
                notes.append(msg)
            continue
        k1 = SimplicialComplex(list(comps[0]) + [tau])
        k2 = SimplicialComplex(list(comps[1]) + [tau])
        out, rec = connected_sum(k1, k2, tau, tau)
        if out != k:
            continue
        return k1, k2, rec
    return None


# g2 <= 2 ---------------------------------------------------------------------------------------

def _peel(k: SimplicialComplex) -> tuple[SimplicialComplex, list[MoveRecord], bool]:
    """Undo facet subdivisions and connected sums until prime.

    Returns (prime part, forward moves, whether a genuine connected sum was split).
    """
    tail: list[MoveRecord] = []
    cur = k
    split = False
    d = k.dim
    while not cur.is_prime and cur.f0 > d + 2:
        step = None
        for v in cur.vertices:
            tau = stacking_vertex(cur, v)
            if tau is not None:
                step = (v, tau)
                break
        if step is not None:
            v, tau = step
            smaller = SimplicialComplex(cur.deletion(v) + [tau])
            _, rec = facet_subdivision(smaller, tau, apex=v)
            tail.append(rec)
            cur = smaller
            continue
        parts = connected_sum_split(cur)
        if parts is None:
            break
        k1, _, rec = parts
        tail.append(rec)
        cur = k1
        split = True
    return cur, list(reversed(tail)), split


def _sd_inverse_candidates(k: SimplicialComplex):
    d = k.dim
    for v in k.vertices:
        lk = k.link((v,))
        if lk.f0 < d + 1 or stacked_witness(lk) is None:
            continue
        try:
            smaller, _ = inverse_central_retriangulation(k, v)
        except MoveError:
            continue
        if smaller.f0 < d + 2 or not is_normal(smaller):
            continue
        yield v, smaller


def _forward_central(smaller: SimplicialComplex, k: SimplicialComplex, v: int) -> MoveRecord:
    ball = [f for f in smaller.facet_list if f not in k.facets]
    out, rec = central_retriangulation(smaller, ball, apex=v)
    assert out == k
    return rec


def _classify_prime_le2(k: SimplicialComplex) -> Certificate:
    if k.g2 == 0 and _is_boundary_simplex(k):
        return Certificate(Verdict.StackedSphere, k, [], "boundary of a simplex")
    parts = join_decomposition(k)
    if parts is not None:
        factors = _factor_complexes(k, parts)
        if all(_is_boundary_simplex(f) or _is_cycle(f) for f in factors):
            if any(_is_cycle(f) and f.f0 >= 5 for f in factors):
                return Certificate(Verdict.JoinCyclePlusSimplex, k, [],
                                   f"join factors {[list(p) for p in parts]}")
            return Certificate(Verdict.JoinTwoSimplexBoundaries, k, [],
                               f"join of boundary simplices on {[list(p) for p in parts]}")
    trace: list[str] = []
    cert = _central_branch(k, trace)
    if cert is not None:
        return cert
    raise SearchExhausted("no recognised structure for g2 <= 2 complex", trace=[f"f={k.f_vector}"] + trace)


def _flips(k: SimplicialComplex, e):
    """All edge flips of ``e``; yields (flipped complex, record flipping back)."""
    lk = k.link(e)
    if lk.f0 != 4 or len(lk.facets) != 4:
        return
    for bd in combinations(lk.vertices, 2):
        if bd in lk.face_set or bd in k.face_set:
            continue
        try:
            flipped, _ = edge_flip(k, e, bd)
        except MoveError:
            continue
        yield flipped, edge_flip(flipped, bd, e)[1]


def classify_g2_le2(k: SimplicialComplex) -> Certificate:
    """Certificate for a normal pseudomanifold with d >= 3 and g2 <= 2."""
    if k.dim < 3:
        raise HypothesisViolation("dimension must be at least 3")
    if not is_normal(k):
        raise HypothesisViolation("complex is not a normal pseudomanifold")
    if k.g2 > 2:
        raise HypothesisViolation(f"g2 = {k.g2} > 2")
    prime, peel_moves, split = _peel(k)
    if not prime.is_prime and prime.f0 > k.dim + 2:
        raise SearchExhausted("could not split a non-prime complex", trace=[f"f={prime.f_vector}"])
    if prime.g2 == 0 and peel_moves and _is_boundary_simplex(prime):
        verdict = Verdict.ConnectedSumSplit if split else Verdict.StackedSphere
        return Certificate(verdict, prime, peel_moves, "")
    sub = _classify_prime_le2(prime)
    verdict = Verdict.ConnectedSumSplit if split else sub.verdict
    return Certificate(verdict, sub.base, sub.moves + peel_moves, sub.notes)


# g2 = 3 ---------------------------------------------------------------------------------------

def _is_cyclic_d4(k: SimplicialComplex) -> bool:
    d = k.dim
    return d >= 3 and d % 2 == 1 and k.f0 == d + 4 and is_isomorphic(k, cyclic_sphere(d + 4, d)) is not None


def _suspension_pairs(k: SimplicialComplex):
    z = k.fresh_vertices(1)[0]
    for x, y in sorted(k.edges):
        if k.link((x,)).relabel({y: z}) == k.link((y,)).relabel({x: z}):
            yield x, y


def _tower(k: SimplicialComplex, depth: int = 0) -> Optional[tuple[str, SimplicialComplex, list[MoveRecord]]]:
    if k.dim == 2:
        if is_isomorphic(k, rp2_6()) is not None:
            return "rp2_6", k, []
        if is_isomorphic(k, rp2_7()) is not None:
            return "rp2_7", k, []
        return None
    if depth > 0 and _is_cyclic_d4(k):
        return "cyclic", k, []
    for x, y in _suspension_pairs(k):
        try:
            base, inv = inverse_one_vertex_suspension(k, x, y)
        except MoveError:
            continue
        found = _tower(base, depth + 1)
        if found is None:
            continue
        kind, bottom, moves = found
        _, rec = one_vertex_suspension(base, inv.params["vertex"], x, y)
        return kind, bottom, moves + [rec]
    return None


def _by_link_g2(k: SimplicialComplex) -> list[int]:
    return sorted(k.vertices, key=lambda v: (k.link((v,)).g2, v))


def _try_low(smaller: SimplicialComplex) -> Optional[Certificate]:
    if smaller.g2 > 2 or smaller.dim < 3 or not is_normal(smaller):
        return None
    try:
        return classify_g2_le2(smaller)
    except SearchExhausted:
        return None


def _nonprime_link_branch(k: SimplicialComplex, trace: list[str]) -> Optional[Certificate]:
    d = k.dim
    for u in _by_link_g2(k):
        lk = k.link((u,))
        for tau in sorted(lk.missing_faces(d - 1)):
            if tau in k.face_set:
                continue
            w2 = k.fresh_vertices(1)[0]
            try:
                smaller, _ = swartz_operation(k, u, tau, apexes=[u, w2], allow_simplex=False)
                mid, r1 = bistellar_1(smaller, tau)
                out, r2 = edge_contract(mid, (u, w2))
            except MoveError as exc:
                trace.append(f"swartz at {u}, tau {list(tau)}: {type(exc).__name__}")
                continue
            if out != k:
                continue
            sub = _try_low(smaller)
            if sub is None:
                trace.append(f"swartz at {u}, tau {list(tau)}: g2={smaller.g2}, no low certificate")
                continue
            return Certificate(Verdict.Bistellar1PlusContraction, sub.base, sub.moves + [r1, r2],
                               f"non-prime link at {u}, missing face {list(tau)}; " + sub.notes)
    return None


def _contraction_branch(k: SimplicialComplex, trace: list[str]) -> Optional[Certificate]:
    d = k.dim
    if k.f0 - 1 < d + 2:
        return None
    for u in _by_link_g2(k):
        for w in sorted(k.adjacency[u]):
            if not link_condition(k, (u, w)):
                continue
            try:
                smaller, rec = edge_contract(k, (u, w))
            except MoveError:
                continue
            if smaller.g2 > 2:
                continue
            sub = _try_low(smaller)
            if sub is None:
                trace.append(f"contract {u}{w}: g2={smaller.g2}, no low certificate")
                continue
            try:
                out, fwd = edge_expand(smaller, **rec.inverse_params)
            except MoveError as exc:
                trace.append(f"contract {u}{w}: expansion refused ({type(exc).__name__})")
                continue
            if out != k:
                continue
            return Certificate(Verdict.EdgeExpansionOfLowG2, sub.base, sub.moves + [fwd],
                               f"contract {u}{w}; " + sub.notes)
    return None


def _central_branch(k: SimplicialComplex, trace: list[str]) -> Optional[Certificate]:
    for v, smaller in _sd_inverse_candidates(k):
        sub = _try_low(smaller)
        if sub is not None:
            rec = _forward_central(smaller, k, v)
            return Certificate(Verdict.FlipPlusCentralRetri, sub.base, sub.moves + [rec],
                               f"central retriangulation at {v}; " + sub.notes)
    if k.dim != 3:
        return None
    for e in sorted(k.edges):
        for flipped, back in _flips(k, e):
            for v, smaller in _sd_inverse_candidates(flipped):
                sub = _try_low(smaller)
                if sub is not None:
                    rec = _forward_central(smaller, flipped, v)
                    return Certificate(Verdict.FlipPlusCentralRetri, sub.base, sub.moves + [rec, back],
                                       f"flip {list(e)}, central retriangulation at {v}; " + sub.notes)
    trace.append("no flip/central retriangulation reduction")
    return None


def _gen_bistellar_branch(k: SimplicialComplex, trace: list[str]) -> Optional[Certificate]:
    if k.dim < 4:
        return None
    for e in sorted(k.edges):
        try:
            smaller, rec = gen_bistellar_dminus1(k, e)
        except MoveError:
            continue
        sub = _try_low(smaller)
        if sub is None:
            trace.append(f"gen bistellar at {list(e)}: g2={smaller.g2}, no low certificate")
            continue
        out, fwd = gen_bistellar_1(smaller, **rec.inverse_params)
        if out == k:
            return Certificate(Verdict.GenBistellar1OfLowG2, sub.base, sub.moves + [fwd],
                               f"generalized bistellar move at {list(e)}; " + sub.notes)
    trace.append("no generalized bistellar pattern")
    return None


def decompose_g2_3(k: SimplicialComplex) -> Certificate:
    """Certificate for a prime normal pseudomanifold with d >= 3 and g2 = 3.

    Tried in order: named-complex fingerprints, a vertex with non-prime link,
    contractible edges, central retriangulations (after at most one flip when
    d = 3), generalized bistellar patterns.
    """
    if k.dim < 3:
        raise HypothesisViolation("dimension must be at least 3")
    if not is_normal(k):
        raise HypothesisViolation("complex is not a normal pseudomanifold")
    if k.g2 != 3:
        raise HypothesisViolation(f"g2 = {k.g2}, expected 3")
    if not k.is_prime:
        raise HypothesisViolation("complex is not prime")
    trace: list[str] = []

    parts = join_decomposition(k)
    if parts is not None:
        factors = _factor_complexes(k, parts)
        if len(factors) == 3 and all(_is_boundary_simplex(f) for f in factors):
            return Certificate(Verdict.JoinThreeSpheres, k, [],
                               f"join of boundary simplices on {[list(p) for p in parts]}")
        trace.append(f"join with {len(factors)} factors, not three boundary simplices")
    if _is_cyclic_d4(k):
        return Certificate(Verdict.CyclicDplus4, k, [], f"isomorphic to C^{k.dim}_{k.f0}")
    tower = _tower(k)
    if tower is not None:
        kind, bottom, moves = tower
        verdict = Verdict.SuspensionTowerCyclic if kind == "cyclic" else Verdict.SuspensionTowerRP6
        return Certificate(verdict, bottom, moves, f"bottom isomorphic to {kind}")
    trace.append("no fingerprint")

    for branch in (_nonprime_link_branch, _contraction_branch, _central_branch, _gen_bistellar_branch):
        cert = branch(k, trace)
        if cert is not None:
            return cert
    raise SearchExhausted("no certificate found; input may lie outside the covered cases", trace=trace)


def classify(k: SimplicialComplex) -> Certificate:
    """Dispatch on g2: <= 2 or = 3."""
    if k.g2 <= 2:
        return classify_g2_le2(k)
    return decompose_g2_3(k)
