"""Generic rigidity over GF(p): rigidity matrices, stress spaces, participation.

Coordinates are uniform in GF(p) for p = 2^31 - 1.  A random specialization
can only lose rank, so the maximum rank over a few seeded trials is taken as
the generic rank; each trial fails with probability at most
(number of edges) / p by the Schwartz-Zippel bound.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .complex import SimplicialComplex
from .errors import MissingCoordinate
from .verify import require_normal

P = 2 ** 31 - 1

Edge = tuple[int, int]


@dataclass(frozen=True)
class GenericEmbedding:
    dimension: int
    coords: dict[int, tuple[int, ...]]
    seed: int
    p: int = P

    @classmethod
    def random(cls, vertices: Iterable[int], dimension: int, seed: int = 0, trial: int = 0,
               p: int = P) -> "GenericEmbedding":
        rng = random.Random(f"{seed}:{trial}")
        coords = {v: tuple(rng.randrange(p) for _ in range(dimension)) for v in sorted(vertices)}
        return cls(dimension, coords, seed, p)


def rigidity_matrix(edges: Iterable[Edge], emb: GenericEmbedding,
                    vertices: Optional[Iterable[int]] = None) -> np.ndarray:
    """Rows per edge (sorted), D columns per vertex (sorted); entries reduced mod p."""
    edges = sorted(tuple(sorted(e)) for e in edges)
    verts = sorted(set(vertices) if vertices is not None else {v for e in edges for v in e})
    missing = [v for v in verts if v not in emb.coords]
    if missing:
        raise MissingCoordinate(f"no coordinates for vertices {missing}")
    col = {v: i for i, v in enumerate(verts)}
    dim, p = emb.dimension, emb.p
    mat = np.zeros((len(edges), dim * len(verts)), dtype=np.int64)
    for r, (u, v) in enumerate(edges):
        fu, fv = emb.coords[u], emb.coords[v]
        for j in range(dim):
            diff = (fu[j] - fv[j]) % p
            mat[r, dim * col[u] + j] = diff
            mat[r, dim * col[v] + j] = (-diff) % p
    return mat


def _rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce mod p.  Pivot: first column with a nonzero entry, lowest row index."""
    a = mat.copy() % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        factors = a[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            a[hit] = (a[hit] - (factors[hit, None] * a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(mat: np.ndarray, p: int = P) -> int:
    if mat.size == 0:
        return 0
    return len(_rref(mat, p)[1])


def left_kernel(mat: np.ndarray, p: int = P) -> np.ndarray:
    """Basis (as rows) of {w : w·mat = 0}."""
    m = mat.shape[0]
    if m == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if mat.shape[1] == 0:
        return np.eye(m, dtype=np.int64)
    red, pivots = _rref(mat.T, p)
    free = [c for c in range(m) if c not in set(pivots)]
    basis = np.zeros((len(free), m), dtype=np.int64)
    for n, fcol in enumerate(free):
        basis[n, fcol] = 1
        for row, pc in enumerate(pivots):
            basis[n, pc] = (-red[row, fcol]) % p
    return basis


def _best_trial(edges, vertices, dim, trials, seed):
    best = None
    for t in range(max(1, trials)):
        emb = GenericEmbedding.random(vertices, dim, seed, t)
        mat = rigidity_matrix(edges, emb, vertices)
        rk = rank_mod_p(mat)
        if best is None or rk > best[0]:
            best = (rk, mat)
    return best


def stress_space_dim(edges: Iterable[Edge], dimension: int, trials: int = 3, seed: int = 0,
                     vertices: Optional[Iterable[int]] = None) -> int:
    """Edge count minus the largest rigidity-matrix rank seen over ``trials`` embeddings."""
    edges = sorted(tuple(sorted(e)) for e in edges)
    verts = sorted(set(vertices) if vertices is not None else {v for e in edges for v in e})
    rk, _ = _best_trial(edges, verts, dimension, trials, seed)
    return len(edges) - rk


@dataclass(frozen=True)
class RigidityReport:
    dimension: int
    edges: int
    rank: int
    corank: int
    participation: dict[int, bool]

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "edges": self.edges,
            "rank": self.rank,
            "corank": self.corank,
            "participation": {str(v): b for v, b in sorted(self.participation.items())},
        }


def rigidity_report(k: SimplicialComplex, seed: int = 0, trials: int = 3) -> RigidityReport:
    require_normal(k)
    dim = k.dim + 1
    edges = sorted(k.edges)
    rk, mat = _best_trial(edges, k.vertices, dim, trials, seed)
    ker = left_kernel(mat)
    part = {v: False for v in k.vertices}
    if ker.size:
        support = np.any(ker != 0, axis=0)
        for (u, v), used in zip(edges, support):
            if used:
                part[u] = part[v] = True
    return RigidityReport(dim, len(edges), rk, len(edges) - rk, part)


def g2_via_rigidity(k: SimplicialComplex, seed: int = 0, trials: int = 3) -> int:
    """Stress-space dimension of the graph of ``k`` in dimension d+1."""
    require_normal(k)
    return stress_space_dim(k.edges, k.dim + 1, trials, seed, k.vertices)


def stress_participation(k: SimplicialComplex, seed: int = 0, trials: int = 3) -> dict[int, bool]:
    return rigidity_report(k, seed, trials).participation
