from math import comb

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from corpus import move_sources, random_legal_moves
from gee2.canonical import canonical_form, is_isomorphic
from gee2.complex import fhg_vectors
from gee2.generators import cyclic_sphere, join_spheres, stacked_sphere
from gee2.moves import invert, one_vertex_suspension
from gee2.rigidity import g2_via_rigidity
from gee2.stacked import is_stacked_sphere
from gee2.verify import is_normal

SETTINGS = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
SOURCES = move_sources()


@SETTINGS
@given(st.integers(3, 5), st.integers(0, 6), st.integers(0, 10 ** 6))
def test_stacked_spheres_have_zero_g2(d, count, seed):
    k = stacked_sphere(d, count, seed)
    assert k.g2 == 0 and is_stacked_sphere(k) and is_normal(k)
    h = fhg_vectors(k).h
    assert h == h[::-1]


@SETTINGS
@given(st.sampled_from(SOURCES), st.randoms(use_true_random=False))
def test_canonical_form_ignores_labels(k, rnd):
    verts = list(k.vertices)
    perm = verts[:]
    rnd.shuffle(perm)
    other = k.relabel({a: b + 50 for a, b in zip(verts, perm)})
    assert canonical_form(other)[0] == canonical_form(k)[0]
    phi = is_isomorphic(k, other)
    assert phi is not None and k.relabel(phi) == other


@SETTINGS
@given(st.integers(0, 10 ** 6))
def test_random_move_is_reversible(seed):
    for k, out, rec in random_legal_moves(1, seed=seed):
        assert rec.g2_delta == out.g2 - k.g2
        assert invert(out, rec)[0] == k
        assert is_normal(out)


@SETTINGS
@given(st.sampled_from(SOURCES), st.data())
def test_one_vertex_suspension_law(k, data):
    v = data.draw(st.sampled_from(k.vertices))
    s, _ = one_vertex_suspension(k, v)
    assert s.g2 == k.g2 + k.f0 - 1 - k.degree(v)
    assert s.dim == k.dim + 1 and is_normal(s)


@SETTINGS
@given(st.lists(st.integers(2, 4), min_size=2, max_size=3))
def test_join_g2_closed_form(dims):
    k = join_spheres(dims)
    n, d = k.f0, k.dim
    assert len(k.edges) == comb(n, 2)
    assert k.g2 == comb(n, 2) - (d + 1) * n + comb(d + 2, 2)


@SETTINGS
@given(st.integers(2, 7).flatmap(lambda d: st.tuples(st.just(d), st.integers(d + 2, d + 6))))
def test_cyclic_spheres_are_neighborly(dn):
    d, n = dn
    k = cyclic_sphere(n, d)
    m = (d + 1) // 2
    assert all(len(k.faces(i - 1)) == comb(n, i) for i in range(1, m + 1))
    h = fhg_vectors(k).h
    assert h == h[::-1]


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(SOURCES), st.integers(0, 1000))
def test_rigidity_matches_g2(k, seed):
    assert g2_via_rigidity(k, seed=seed) == k.g2
