import random

import networkx as nx
import pytest

from gee2.canonical import canonical_form, canonical_key, is_isomorphic
from gee2.enumeration import enumerate_small
from gee2.errors import ResourceBound
from gee2.generators import cross_polytope, cyclic_sphere, rp2_6, stacked_sphere


def nx_isomorphic(a, b):
    """Oracle: isomorphism of vertex/facet incidence graphs via networkx."""
    def graph(k):
        g = nx.Graph()
        for v in k.vertices:
            g.add_node(("v", v), kind="v")
        for f in k.facet_list:
            g.add_node(("f", f), kind="f")
            for v in f:
                g.add_edge(("v", v), ("f", f))
        return g
    return nx.is_isomorphic(graph(a), graph(b), node_match=lambda x, y: x["kind"] == y["kind"])


def shuffled(k, seed):
    rng = random.Random(seed)
    verts = list(k.vertices)
    perm = verts[:]
    rng.shuffle(perm)
    return k.relabel({a: b + 100 for a, b in zip(verts, perm)})


@pytest.mark.parametrize("k", [rp2_6(), cross_polytope(3), cyclic_sphere(8, 3), stacked_sphere(3, 5, 2)])
def test_canonical_form_invariant_under_relabelling(k):
    form = canonical_form(k)[0]
    for seed in range(5):
        assert canonical_form(shuffled(k, seed))[0] == form


def test_canonical_keys_separate_non_isomorphic_spheres():
    spheres = list(enumerate_small(2, 8))
    keys = [canonical_key(k) for k in spheres]
    assert len(set(keys)) == len(keys)
    for i, a in enumerate(spheres):
        for b in spheres[i + 1:]:
            if a.f_vector == b.f_vector:
                assert not nx_isomorphic(a, b)


@pytest.mark.parametrize("k", [rp2_6(), cross_polytope(3), cyclic_sphere(9, 5)])
def test_is_isomorphic_returns_valid_map(k):
    other = shuffled(k, 7)
    phi = is_isomorphic(k, other)
    assert phi is not None
    assert k.relabel(phi) == other


def test_is_isomorphic_rejects():
    a = cyclic_sphere(8, 3)
    b = stacked_sphere(3, 3, 0)
    assert is_isomorphic(a, b) is None
    assert not nx_isomorphic(a, b)
    # same f-vector, different complexes
    two = [k for k in enumerate_small(2, 7) if k.f0 == 7]
    assert is_isomorphic(two[0], two[1]) is None


def test_resource_bound():
    with pytest.raises(ResourceBound):
        canonical_form(cyclic_sphere(20, 3))
