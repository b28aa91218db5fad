"""Simplicial complexes stored as a set of facets.

A simplex is a sorted tuple of nonnegative ints.  Complexes are immutable;
face enumeration and adjacency are computed lazily and cached on the instance.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Mapping

from .errors import (
    DimensionOutOfRange,
    EmptyInput,
    FaceNotPresent,
    InvalidSimplex,
    NonPure,
    UnknownVertex,
    VertexOverlap,
)

Simplex = tuple  # tuple[int, ...], strictly increasing


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize ``vertices`` to a simplex, rejecting repeats and bad labels."""
    s = tuple(sorted(vertices))
    for v in s:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidSimplex(f"vertex labels must be nonnegative ints, got {v!r}")
    for a, b in zip(s, s[1:]):
        if a == b:
            raise InvalidSimplex(f"repeated vertex {a} in {s}")
    return s


class SimplicialComplex:
    """A finite simplicial complex given by its maximal faces.

    The complex need not be pure (``induced`` can produce non-pure output);
    :func:`from_facets` is the validating constructor for pure input.  An
    empty facet list gives the complex ``{∅}`` of dimension -1.
    """

    def __init__(self, facets: Iterable[Iterable[int]] = ()):
        fs = {simplex(f) for f in facets}
        if not fs:
            fs = {()}
        sizes = {len(f) for f in fs}
        if len(sizes) > 1:
            fs = _maximal(fs)
        self._facets = frozenset(fs)

    # identity ----------------------------------------------------------
    @cached_property
    def facet_list(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self._facets))

    @property
    def facets(self) -> frozenset:
        return self._facets

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._facets == other._facets

    def __hash__(self) -> int:
        return hash(self._facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f0={self.f0}, facets={len(self._facets)})"

    def __contains__(self, face: Iterable[int]) -> bool:
        return tuple(sorted(face)) in self.face_set

    # basic shape ---------------------------------------------------------
    @cached_property
    def dim(self) -> int:
        return max(len(f) for f in self._facets) - 1

    @cached_property
    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) == 1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self._facets for v in f}))

    @property
    def f0(self) -> int:
        return len(self.vertices)

    @cached_property
    def _faces_by_dim(self) -> dict[int, frozenset]:
        out: dict[int, set] = defaultdict(set)
        for f in self._facets:
            for r in range(len(f) + 1):
                out[r - 1].update(combinations(f, r))
        return {i: frozenset(s) for i, s in out.items()}

    @cached_property
    def face_set(self) -> frozenset:
        return frozenset().union(*self._faces_by_dim.values())

    def faces(self, i: int) -> frozenset:
        """All ``i``-dimensional faces, ``-1 <= i <= dim``."""
        if i < -1 or i > self.dim:
            raise DimensionOutOfRange(f"i={i} outside [-1, {self.dim}]")
        return self._faces_by_dim.get(i, frozenset())

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        """(f_-1, f_0, ..., f_d)."""
        return tuple(len(self._faces_by_dim.get(i, ())) for i in range(-1, self.dim + 1))

    @cached_property
    def edges(self) -> frozenset:
        return self._faces_by_dim.get(1, frozenset())

    @cached_property
    def adjacency(self) -> dict[int, frozenset]:
        adj: dict[int, set] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(s) for v, s in adj.items()}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def g2(self) -> int:
        d = self.dim
        return len(self.edges) - (d + 1) * self.f0 + comb(d + 2, 2)

    @cached_property
    def ridge_facets(self) -> dict[Simplex, list[Simplex]]:
        """Map each codimension-one face of a facet to the facets containing it."""
        out: dict[Simplex, list[Simplex]] = defaultdict(list)
        for f in self.facet_list:
            for i in range(len(f)):
                out[f[:i] + f[i + 1:]].append(f)
        return dict(out)

    # local structure ------------------------------------------------------
    def _require_face(self, sigma: Iterable[int]) -> Simplex:
        s = simplex(sigma)
        if s not in self.face_set:
            raise FaceNotPresent(f"{s} is not a face")
        return s

    def star_facets(self, sigma: Iterable[int]) -> list[Simplex]:
        s = set(sigma)
        return [f for f in self.facet_list if s.issubset(f)]

    def link(self, sigma: Iterable[int]) -> SimplicialComplex:
        s = self._require_face(sigma)
        ss = set(s)
        return SimplicialComplex(tuple(v for v in f if v not in ss) for f in self.star_facets(s))

    def star(self, sigma: Iterable[int]) -> SimplicialComplex:
        s = self._require_face(sigma)
        return SimplicialComplex(self.star_facets(s))

    def induced(self, vertex_set: Iterable[int]) -> SimplicialComplex:
        vs = set(vertex_set)
        unknown = vs.difference(self.vertices)
        if unknown:
            raise UnknownVertex(f"vertices {sorted(unknown)} not in complex")
        return SimplicialComplex(tuple(v for v in f if v in vs) for f in self._facets)

    def deletion(self, v: int) -> list[Simplex]:
        """Facets avoiding ``v`` (the facet list of the antistar)."""
        return [f for f in self.facet_list if v not in f]

    def missing_faces(self, i: int) -> set[Simplex]:
        """All ``i``-simplices on V(K) whose proper faces are present but which are not."""
        if i < 0 or i > self.dim + 1:
            raise DimensionOutOfRange(f"i={i} outside [0, {self.dim + 1}]")
        if i == 0:
            return set()
        lower = self._faces_by_dim.get(i - 1, frozenset())
        present = self._faces_by_dim.get(i, frozenset())
        verts = self.vertices
        out = set()
        for tau in lower:
            top = tau[-1]
            for w in verts:
                if w <= top:
                    continue
                cand = tau + (w,)
                if cand in present:
                    continue
                if all(cand[:k] + cand[k + 1:] in lower for k in range(len(cand) - 1)):
                    out.add(cand)
        return out

    @property
    def is_prime(self) -> bool:
        """True iff the complex has no missing facet (missing ``dim``-face)."""
        return not self.missing_faces(self.dim)

    # constructions ---------------------------------------------------------
    def relabel(self, mapping: Mapping[int, int]) -> SimplicialComplex:
        return SimplicialComplex(tuple(mapping.get(v, v) for v in f) for f in self._facets)

    def fresh_vertices(self, k: int = 1, avoid: Iterable[int] = ()) -> list[int]:
        """The ``k`` smallest nonnegative labels not used by the complex (or ``avoid``)."""
        used = set(self.vertices).union(avoid)
        out, v = [], 0
        while len(out) < k:
            if v not in used:
                out.append(v)
            v += 1
        return out

    # I/O -------------------------------------------------------------------
    def to_text(self) -> str:
        return "".join(" ".join(map(str, f)) + "\n" for f in self.facet_list)


def _maximal(fs: set) -> set:
    by_size = sorted(fs, key=len, reverse=True)
    kept: list[Simplex] = []
    covered: set = set()
    for f in by_size:
        if f in covered:
            continue
        kept.append(f)
        for r in range(len(f)):
            covered.update(combinations(f, r))
    return set(kept)


def from_facets(facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Validate and build a pure complex; duplicate facets are merged."""
    fs = [simplex(f) for f in facets]
    if not fs:
        raise EmptyInput("no facets given")
    sizes = {len(f) for f in fs}
    if len(sizes) != 1:
        raise NonPure(f"facet cardinalities differ: {sorted(sizes)}")
    return SimplicialComplex(fs)


def boundary_of_simplex(vertices: Iterable[int]) -> SimplicialComplex:
    """∂σ on the given vertex set; a single vertex gives {∅}."""
    vs = simplex(vertices)
    if len(vs) <= 1:
        return SimplicialComplex()
    return SimplicialComplex(combinations(vs, len(vs) - 1))


def join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    overlap = set(k1.vertices) & set(k2.vertices)
    if overlap:
        raise VertexOverlap(f"join factors share vertices {sorted(overlap)}")
    return SimplicialComplex(a + b for a in k1.facets for b in k2.facets)


def join_all(factors: Iterable[SimplicialComplex]) -> SimplicialComplex:
    out = SimplicialComplex()
    for k in factors:
        out = join(out, k)
    return out


# f-, h-, g-vectors ------------------------------------------------------------

@dataclass(frozen=True)
class FHGVectors:
    f: tuple[int, ...]  # f_-1 .. f_d
    h: tuple[int, ...]  # h_0 .. h_{d+1}
    g: tuple[int, ...]  # g_0 .. g_{d+1}

    @property
    def d(self) -> int:
        return len(self.f) - 2

    def g_(self, i: int) -> int:
        return self.g[i] if 0 <= i < len(self.g) else 0


def h_from_f(f: tuple[int, ...]) -> tuple[int, ...]:
    d = len(f) - 2
    return tuple(
        sum((-1) ** (i - j) * comb(d + 1 - j, i - j) * f[j] for j in range(i + 1))
        for i in range(d + 2)
    )


def fhg_vectors(k: SimplicialComplex) -> FHGVectors:
    f = k.f_vector
    h = h_from_f(f)
    g = (h[0],) + tuple(h[i] - h[i - 1] for i in range(1, len(h)))
    return FHGVectors(f, h, g)


def g2_formula(f0: int, f1: int, d: int) -> int:
    return f1 - (d + 1) * f0 + comb(d + 2, 2)


def g3_shortcut(k: SimplicialComplex) -> int:
    """The closed form ``f2 - d f1 + C(d+1,2) - C(d+2,3)`` (kept only for comparison)."""
    d = k.dim
    f = k.f_vector
    f1 = f[2] if len(f) > 2 else 0
    f2 = f[3] if len(f) > 3 else 0
    return f2 - d * f1 + comb(d + 1, 2) - comb(d + 2, 3)


def g3_consistency(k: SimplicialComplex) -> dict:
    """Compare g3 from h-differences with the closed-form shortcut."""
    g3 = fhg_vectors(k).g_(3)
    short = g3_shortcut(k)
    return {"g3": g3, "g3_shortcut": short, "agree": g3 == short}


# facet-list text format ---------------------------------------------------------

def parse_facets(text: str) -> SimplicialComplex:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            rows.append([int(t) for t in s.split()])
        except ValueError as exc:
            raise InvalidSimplex(f"line {lineno}: {exc}") from None
    return from_facets(rows)


def read_facets(path: str | Path) -> SimplicialComplex:
    return parse_facets(Path(path).read_text(encoding="utf-8"))


def write_facets(k: SimplicialComplex, path: str | Path, header: str | None = None) -> None:
    text = k.to_text()
    if header:
        text = "".join(f"# {h}\n" for h in header.splitlines()) + text
    Path(path).write_text(text, encoding="utf-8")


