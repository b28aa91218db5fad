import json
import random

import pytest

from corpus import RANDOM_MOVES, bistellar_contraction_instances, move_sources, random_legal_moves
from gee2.canonical import is_isomorphic
from gee2.complex import SimplicialComplex, boundary_of_simplex
from gee2.errors import (
    ApexCollision,
    DimensionMismatch,
    EdgeNotMissing,
    EdgePresent,
    FaceNotPresent,
    FreshVertexCollision,
    IdentificationCollision,
    InteriorFacePresent,
    LinkConditionFailed,
    LinkNotQuadrilateral,
    LinkNotStacked,
    MinimumVertices,
    MoveError,
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
from gee2.generators import boundary_sphere, cross_polytope, cyclic_sphere, join_spheres, stacked_sphere
from gee2.moves import (
    MoveKind,
    MoveRecord,
    apply_move,
    bistellar_1,
    bistellar_dminus1,
    central_retriangulation,
    connected_sum,
    edge_contract,
    edge_expand,
    edge_flip,
    facet_subdivision,
    gen_bistellar_1,
    gen_bistellar_dminus1,
    invert,
    inverse_central_retriangulation,
    inverse_one_vertex_suspension,
    link_condition,
    one_vertex_suspension,
    replay,
    split_connected_sum,
    swartz_operation,
)
from gee2.verify import Field, betti, dual_components, is_normal


def test_edge_flip_roundtrip():
    k = cross_polytope(3)
    out, rec = edge_flip(k, (1, 3), (5, 6))
    assert rec.g2_delta == 0 and out.f_vector == k.f_vector
    assert (5, 6) in out.face_set and (1, 3) not in out.face_set
    back, _ = invert(out, rec)
    assert back == k


def test_edge_flip_errors():
    with pytest.raises(LinkNotQuadrilateral):
        edge_flip(boundary_sphere(3), (1, 2), (3, 4))
    with pytest.raises(NotDimension3):
        edge_flip(cross_polytope(4), (1, 3), (5, 6))
    # neighborly sphere: every link diagonal is already an edge
    c = cyclic_sphere(8, 3)
    hit = False
    for e in c.edges:
        lk = c.link(e)
        if lk.f0 == 4:
            a = lk.vertices[0]
            b = next(w for w in lk.vertices if w != a and (min(a, w), max(a, w)) not in lk.edges)
            with pytest.raises(EdgeNotMissing):
                edge_flip(c, e, (a, b))
            hit = True
            break
    assert hit


def test_bistellar_pair():
    k = stacked_sphere(3, 2, 0)
    ridge = next(r for r, fs in sorted(k.ridge_facets.items())
                 if tuple(sorted(set(fs[0]) ^ set(fs[1]))) not in k.face_set)
    out, rec = bistellar_1(k, ridge)
    assert rec.g2_delta == 1 and out.g2 == 1
    back, rec2 = bistellar_dminus1(out, rec.inverse_params["edge"])
    assert back == k and rec2.g2_delta == -1
    with pytest.raises(TauPresent):
        bistellar_dminus1(boundary_sphere(3), (1, 2))
    with pytest.raises(EdgePresent):
        bistellar_1(boundary_sphere(3), (1, 2, 3))
    with pytest.raises(RidgeNotInterior):
        bistellar_1(boundary_sphere(3), (1, 2, 3, 4))


def test_connected_sum_apexes_are_not_an_edge():
    a, b = boundary_sphere(3), boundary_sphere(3, start=6)
    s, _ = connected_sum(a, b, (1, 2, 3, 4), (6, 7, 8, 9))
    with pytest.raises(FaceNotPresent):
        bistellar_dminus1(s, (5, 10))


def test_generalized_bistellar():
    k = join_spheres([1, 2, 2])
    out, rec = gen_bistellar_dminus1(k, (1, 3), 4, 5)
    assert rec.g2_delta == -1 and is_normal(out)
    back, _ = invert(out, rec)
    assert back == k
    with pytest.raises(PatternMismatch):
        gen_bistellar_dminus1(boundary_sphere(4), (1, 2))
    with pytest.raises(PatternMismatch):
        gen_bistellar_dminus1(cross_polytope(3), (1, 3))
    k = join_spheres([1, 2, 3])
    mid, _ = gen_bistellar_dminus1(k, (1, 3), 4, 5)
    again, rec = invert(mid, _)
    assert again == k and rec.g2_delta == 1


def test_edge_contract_and_expand():
    k = cross_polytope(3)
    assert link_condition(k, (1, 3))
    out, rec = edge_contract(k, (1, 3))
    assert out.f0 == k.f0 - 1 and is_normal(out)
    back, _ = invert(out, rec)
    assert back == k
    with pytest.raises(MinimumVertices):
        edge_contract(boundary_sphere(3), (1, 2))
    j = join_spheres([2, 2])
    assert not link_condition(j, (1, 2))
    with pytest.raises(LinkConditionFailed):
        edge_contract(j, (1, 2))


def test_expansion_equals_central_retriangulation_of_edge_star():
    k = stacked_sphere(3, 3, 2)
    for w, x in [(1, 2), (2, 5), (3, 6)]:
        if (w, x) not in k.edges:
            continue
        e = (w, x)
        sphere = k.link(e).facet_list
        a, _ = edge_expand(k, w, sphere)
        b, _ = central_retriangulation(k, k.star_facets(e))
        assert is_isomorphic(a, b) is not None


def test_edge_expand_errors():
    k = cross_polytope(3)
    with pytest.raises(NotSeparating):
        edge_expand(k, 1, [(2, 5, 7)])
    with pytest.raises(VertexMissing):
        edge_expand(k, 99, [(3, 5)])


def test_central_retriangulation():
    k = cross_polytope(3)
    facet = (1, 3, 5, 7)
    out, rec = central_retriangulation(k, [facet])
    assert rec.g2_delta == 0 and out.f0 == k.f0 + 1
    with pytest.raises(NotABall):
        central_retriangulation(k, [facet, (2, 4, 6, 8)])
    with pytest.raises(NotABall):
        central_retriangulation(k, [facet, (1, 4, 6, 8)])
    with pytest.raises(ApexCollision):
        central_retriangulation(k, [facet], apex=k.vertices[0])


def test_facet_subdivision_and_inverse():
    k = boundary_sphere(2)
    out, rec = facet_subdivision(k, (1, 2, 3))
    assert out.f0 == 5 and out.g2 == 0
    back, _ = invert(out, rec)
    assert back == k
    with pytest.raises(NotAFacet):
        facet_subdivision(k, (1, 2))
    with pytest.raises(LinkNotStacked):
        inverse_central_retriangulation(cross_polytope(3), 1)
    with pytest.raises(InteriorFacePresent):
        inverse_central_retriangulation(boundary_sphere(3), 1)


def test_one_vertex_suspension():
    c3 = SimplicialComplex([(1, 2), (2, 3), (1, 3)])
    out, _ = one_vertex_suspension(c3, 1)
    assert is_isomorphic(out, boundary_sphere(2)) is not None
    octa = cross_polytope(2)
    s, rec = one_vertex_suspension(octa, 1)
    assert s.dim == 3 and s.f_vector[1] == 7 and s.f_vector[2] == 19
    assert s.g2 == octa.f0 - 1 - octa.degree(1) == 1
    back, _ = inverse_one_vertex_suspension(s, **rec.inverse_params)
    assert back == octa
    with pytest.raises(FreshVertexCollision):
        one_vertex_suspension(octa, 1, 2, 99)
    with pytest.raises(VertexMissing):
        one_vertex_suspension(octa, 42)


def test_swartz_errors():
    k = cross_polytope(3)
    with pytest.raises(TauNotMissing):
        swartz_operation(k, 1, (3, 5, 7))
    with pytest.raises(VertexMissing):
        swartz_operation(k, 50, (3, 5, 7))


def test_swartz_cone_cone_equals_expand_then_bistellar():
    found = 0
    for k in move_sources() + bistellar_contraction_instances(1):
        for v in k.vertices:
            lk = k.link((v,))
            for t in sorted(lk.missing_faces(lk.dim)):
                if t in k.face_set:
                    continue
                try:
                    s, rec = swartz_operation(k, v, t, allow_simplex=False)
                except MoveError:
                    continue
                ridges = frozenset(t[:i] + t[i + 1:] for i in range(len(t)))
                w = k.fresh_vertices(1)[0]
                hits = []
                for disc in dual_components(lk.facet_list, ridges):
                    e, _ = edge_expand(k, v, sorted(ridges), new_vertex=w, d2=disc)
                    b, _ = bistellar_dminus1(e, tuple(sorted((v, w))))
                    hits.append(is_isomorphic(b, s) is not None)
                assert any(hits)
                found += 1
    assert found


def test_connected_sum_and_split():
    a, b = boundary_sphere(3), boundary_sphere(3, start=6)
    s, rec = connected_sum(a, b, (1, 2, 3, 4), (6, 7, 8, 9))
    assert s.f0 == 6 and s.g2 == 0 and not s.is_prime
    back, _ = invert(s, rec)
    assert back == a
    with pytest.raises(DimensionMismatch):
        connected_sum(a, boundary_sphere(4, start=10), (1, 2, 3, 4), (10, 11, 12, 13, 14))
    with pytest.raises(IdentificationCollision):
        connected_sum(a, boundary_sphere(3, start=5), (1, 2, 3, 4), (6, 7, 8, 9))
    with pytest.raises(TauPresent):
        split_connected_sum(a, (1, 2, 3), (1, 2, 3, 4))


def test_connected_sum_g2_is_additive():
    rng = random.Random(5)
    pool = [join_spheres([2, 2]), cyclic_sphere(7, 3), stacked_sphere(3, 2, 1), cross_polytope(3),
            cyclic_sphere(6, 3)]
    for _ in range(20):
        x, y = rng.choice(pool), rng.choice(pool)
        shift = max(x.vertices) + 1
        y = y.relabel({v: v + shift for v in y.vertices})
        f1, f2 = rng.choice(x.facet_list), rng.choice(y.facet_list)
        s, rec = connected_sum(x, y, f1, f2)
        assert s.g2 == x.g2 + y.g2 == x.g2 + rec.g2_delta


def test_record_json_roundtrip():
    for _, out, rec in random_legal_moves(len(RANDOM_MOVES), seed=3):
        data = json.loads(rec.dumps())
        again = MoveRecord.from_json(data)
        assert again.to_json() == rec.to_json()
        assert invert(out, again)[0] == invert(out, rec)[0]


def test_every_kind_roundtrips_and_preserves_invariants():
    seen = set()
    for k, out, rec in random_legal_moves(3 * len(RANDOM_MOVES), seed=11):
        seen.add(rec.kind)
        assert rec.g2_delta == out.g2 - k.g2
        assert invert(out, rec)[0] == k
        assert apply_move(k, rec.kind, rec.params)[0] == out
        assert is_normal(out)
        # one-vertex suspension shifts homology up one degree; everything else preserves it
        lo, hi = sorted([k, out], key=lambda c: c.dim)
        shift = (0,) * (hi.dim - lo.dim)
        for field in Field:
            assert betti(hi, field).reduced_betti == shift + betti(lo, field).reduced_betti
    assert seen == set(MoveKind)


def test_replay():
    k = boundary_sphere(3)
    recs = []
    cur = k
    for f, apex in [((1, 2, 3, 4), 6), ((1, 2, 3, 6), 7)]:
        cur, r = facet_subdivision(cur, f, apex)
        recs.append(r)
    assert replay(k, recs) == cur
