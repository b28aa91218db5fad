import random
from itertools import combinations
from math import comb

import numpy as np
import pytest

from corpus import corpus
from oracles import dense_rank
from gee2.errors import MissingCoordinate, NotNormal
from gee2.generators import cross_polytope, cyclic_sphere, rp2_6, stacked_sphere
from gee2.rigidity import (
    P,
    GenericEmbedding,
    g2_via_rigidity,
    left_kernel,
    rank_mod_p,
    rigidity_matrix,
    rigidity_report,
    stress_participation,
    stress_space_dim,
)
from gee2.verify import is_normal


def complete(vs):
    return list(combinations(vs, 2))


def random_graph(rng, n, p):
    return [e for e in combinations(range(1, n + 1), 2) if rng.random() < p]


def integer_rank(edges, dim, seed):
    """Rank of the rigidity matrix over Q at random small integer coordinates."""
    rng = random.Random(seed)
    verts = sorted({v for e in edges for v in e})
    x = {v: [rng.randrange(-1000, 1000) for _ in range(dim)] for v in verts}
    col = {v: i for i, v in enumerate(verts)}
    mat = []
    for u, v in edges:
        row = [0] * (dim * len(verts))
        for j in range(dim):
            row[dim * col[u] + j] = x[u][j] - x[v][j]
            row[dim * col[v] + j] = x[v][j] - x[u][j]
        mat.append(row)
    return dense_rank(mat)


def test_single_edge_matrix():
    emb = GenericEmbedding(1, {1: (5,), 2: (3,)}, 0)
    mat = rigidity_matrix([(1, 2)], emb)
    assert mat.tolist() == [[2, P - 2]]


def test_rows_sum_to_zero_per_coordinate():
    edges = complete(range(1, 7))
    emb = GenericEmbedding.random(range(1, 7), 3, seed=4)
    mat = rigidity_matrix(edges, emb)
    for j in range(3):
        assert np.all(mat[:, j::3].sum(axis=1) % P == 0)


def test_missing_coordinate():
    emb = GenericEmbedding(2, {1: (0, 0)}, 0)
    with pytest.raises(MissingCoordinate):
        rigidity_matrix([(1, 2)], emb)


def test_complete_graph_stresses():
    assert stress_space_dim(complete(range(3)), 2) == 0
    assert stress_space_dim(complete(range(4)), 2) == 1
    assert stress_space_dim(complete(range(6)), 3) == 3
    # n points in general position in R^D, n >= D: rank D n - C(D+1, 2)
    for n, dim in [(7, 3), (8, 4), (9, 3)]:
        assert stress_space_dim(complete(range(n)), dim) == comb(n, 2) - (dim * n - comb(dim + 1, 2))


def test_rank_matches_rational_oracle():
    rng = random.Random(1)
    for trial in range(6):
        edges = random_graph(rng, 8, 0.6)
        for dim in (2, 3):
            exact = integer_rank(edges, dim, trial)
            assert len(edges) - stress_space_dim(edges, dim) == exact


def test_rank_mod_p_matches_dense_oracle():
    rng = np.random.default_rng(3)
    for _ in range(5):
        mat = rng.integers(0, P, size=(7, 9), dtype=np.int64)
        mat[3] = (mat[1] + 2 * mat[2]) % P
        assert rank_mod_p(mat) == dense_rank(mat.tolist(), P)


def test_left_kernel_annihilates():
    edges = complete(range(1, 7))
    emb = GenericEmbedding.random(range(1, 7), 3, seed=2)
    mat = rigidity_matrix(edges, emb)
    ker = left_kernel(mat)
    assert ker.shape[0] == len(edges) - rank_mod_p(mat) == 3
    prod = [sum(int(w[i]) * int(mat[i, c]) for i in range(len(edges))) % P for w in ker for c in range(mat.shape[1])]
    assert not any(prod)


def test_coning_raises_dimension_keeps_stresses():
    rng = random.Random(7)
    for _ in range(10):
        n = rng.randrange(5, 9)
        edges = random_graph(rng, n, 0.55)
        if not edges:
            continue
        verts = sorted({v for e in edges for v in e})
        cone = edges + [(v, 0) for v in verts]
        for dim in (2, 3):
            assert stress_space_dim(edges, dim) == stress_space_dim(cone, dim + 1)


def test_gluing_rigid_graphs():
    # two complete graphs sharing a triangle stay rigid in R^3
    a = complete(range(1, 6))
    b = complete([1, 2, 3, 6, 7, 8])
    union = sorted(set(a) | set(b))
    n = 8
    rank = len(union) - stress_space_dim(union, 3)
    assert rank == 3 * n - 6


def test_determinism():
    k = cyclic_sphere(7, 3)
    a = rigidity_report(k, seed=5)
    b = rigidity_report(k, seed=5)
    assert a == b
    one = stress_space_dim(k.edges, 4, trials=1)
    assert stress_space_dim(k.edges, 4, trials=4) <= one


def test_g2_matches_combinatorial_on_corpus():
    for name, k in corpus():
        assert g2_via_rigidity(k) == k.g2, name


def test_non_normal_rejected():
    from gee2.complex import SimplicialComplex
    wedge = SimplicialComplex([(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (4, 5, 6), (4, 5, 7), (4, 6, 7), (5, 6, 7)])
    with pytest.raises(NotNormal):
        g2_via_rigidity(wedge)
    assert is_normal(rp2_6()) and g2_via_rigidity(rp2_6()) == 3


def test_participation():
    assert not any(stress_participation(stacked_sphere(3, 3, 0)).values())
    assert all(stress_participation(cyclic_sphere(7, 3)).values())
    rep = rigidity_report(cross_polytope(3))
    assert rep.corank == 2 and set(rep.as_dict()) == {"dimension", "edges", "rank", "corank", "participation"}
