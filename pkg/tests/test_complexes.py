import math

import pytest
from hypothesis import given, settings, strategies as st

import systolic as S
from systolic import ComplexError, FacetComplex, FlagComplex

from _oracles import all_cliques, floyd_warshall

INF = math.inf


def random_graph(n: int, p: float, seed: int) -> FlagComplex:
    return S.random_flag_complex(n, p, seed)


graph_params = st.tuples(
    st.integers(min_value=1, max_value=40),
    st.floats(min_value=0.0, max_value=1.0),
    st.integers(min_value=0, max_value=10_000),
)


class TestFlagComplex:
    def test_construction_and_lookup(self):
        g = FlagComplex([0, 1, 2, 5], [(0, 1), (1, 2)])
        assert g.n_vertices == 4
        assert g.vertices == (0, 1, 2, 5)
        assert g.adjacent(0, 1) and not g.adjacent(0, 2)
        assert 5 in g and 3 not in g
        assert g.degree(5) == 0

    def test_rejects_self_loop(self):
        with pytest.raises(ComplexError):
            FlagComplex([0, 1], [(0, 0)])

    def test_rejects_unknown_endpoint(self):
        with pytest.raises(ComplexError):
            FlagComplex([0, 1], [(0, 2)])

    def test_rejects_negative_vertex(self):
        with pytest.raises(ComplexError):
            FlagComplex([-1, 0], [])

    def test_edges_sorted_without_duplicates(self):
        g = FlagComplex([0, 1, 2], [(2, 1), (0, 1), (1, 2)])
        assert list(g.edges()) == [(0, 1), (1, 2)]
        assert g.n_edges == 2

    def test_span_preserves_ids_and_is_full(self, icosa):
        sub = icosa.span([0, 1, 2, 3])
        assert sub.vertices == (0, 1, 2, 3)
        for u in sub.vertices:
            for v in sub.vertices:
                if u < v:
                    assert sub.adjacent(u, v) == icosa.adjacent(u, v)

    def test_span_idempotent(self, icosa):
        sub = icosa.span([0, 1, 2, 6, 7])
        again = sub.span(sub.vertices)
        assert list(again.edges()) == list(sub.edges())

    def test_link_is_common_neighborhood(self, icosa):
        link = icosa.link((0,))
        assert link.vertices == (1, 2, 3, 4, 5)
        # the link of a vertex of the icosahedron is a pentagon
        assert all(link.degree(v) == 2 for v in link.vertices)

    def test_link_of_edge(self, octa):
        link = octa.link((0, 2))
        assert link.vertices == (4, 5)
        assert not link.adjacent(4, 5)

    def test_link_rejects_non_clique(self, octa):
        with pytest.raises(ComplexError):
            octa.link((0, 1))  # antipodal, not an edge

    def test_common_neighbors(self, octa):
        assert octa.common_neighbors((0,)) == frozenset({2, 3, 4, 5})
        assert octa.common_neighbors((0, 2)) == frozenset({4, 5})

    @given(graph_params)
    @settings(max_examples=40, deadline=None)
    def test_cliques_match_brute_force(self, params):
        n, p, seed = params
        g = random_graph(min(n, 12), p, seed)
        assert sorted(g.cliques()) == sorted(all_cliques(g))

    def test_cliques_within_restricts(self, octa):
        inside = list(octa.cliques(within=[0, 2, 4]))
        assert (0, 2, 4) in inside
        assert all(set(c) <= {0, 2, 4} for c in inside)

    def test_maximal_cliques_octahedron(self, octa):
        mc = sorted(octa.maximal_cliques())
        assert len(mc) == 8  # the eight triangular faces
        assert all(len(c) == 3 for c in mc)

    def test_connected_components(self):
        g = FlagComplex([0, 1, 2, 3], [(0, 1), (2, 3)])
        comps = sorted(tuple(sorted(c)) for c in g.connected_components())
        assert comps == [(0, 1), (2, 3)]
        assert not g.is_connected()


class TestDistances:
    @given(graph_params)
    @settings(max_examples=30, deadline=None)
    def test_bfs_matches_floyd_warshall(self, params):
        n, p, seed = params
        g = random_graph(min(n, 25), p, seed)
        fw = floyd_warshall(g)
        for u in g.vertices:
            for v in g.vertices:
                assert g.distance(u, v) == fw[(u, v)]

    @given(graph_params)
    @settings(max_examples=30, deadline=None)
    def test_metric_axioms(self, params):
        n, p, seed = params
        g = random_graph(n, p, seed)
        verts = g.vertices[:10]
        for u in verts:
            assert g.distance(u, u) == 0
            for v in verts:
                assert g.distance(u, v) == g.distance(v, u)
                for w in verts:
                    duv, dvw, duw = g.distance(u, v), g.distance(v, w), g.distance(u, w)
                    if duv != INF and dvw != INF:
                        assert duw <= duv + dvw

    def test_distance_capped(self, icosa):
        o = icosa.oracle
        assert o.distance_capped(0, 11, 3) == 3
        assert o.distance_capped(0, 11, 2) == INF  # beyond the cap
        assert o.distance_capped(0, 1, 5) == 1

    def test_geodesic_is_lex_least(self, octa):
        # 0 -> 1 has four geodesics; the lex-least goes through 2
        assert octa.geodesic(0, 1) == (0, 2, 1)

    @given(graph_params)
    @settings(max_examples=25, deadline=None)
    def test_geodesic_validity(self, params):
        n, p, seed = params
        g = random_graph(min(n, 20), p, seed)
        verts = g.vertices
        for u in verts[:6]:
            for v in verts[:6]:
                path = g.geodesic(u, v)
                if g.distance(u, v) == INF:
                    assert path is None
                    continue
                assert path[0] == u and path[-1] == v
                assert len(path) - 1 == g.distance(u, v)
                assert all(g.adjacent(a, b) for a, b in zip(path, path[1:]))

    def test_eccentricity(self, icosa):
        assert icosa.eccentricity(0) == 3


class TestFacetsAndFlagness:
    def test_antichain_enforced(self):
        with pytest.raises(ComplexError):
            FacetComplex([(0, 1, 2), (0, 1)])

    def test_is_flag_yes(self):
        fc = FacetComplex([(0, 1, 2), (1, 2, 3)])
        assert S.is_flag(fc).is_yes

    def test_is_flag_hollow_triangle(self):
        fc = FacetComplex([(0, 1), (1, 2), (0, 2)])
        v = S.is_flag(fc)
        assert v.is_no
        assert v.witness == (0, 1, 2)

    def test_is_flag_reports_smallest_missing_clique(self):
        # hollow tetrahedron boundary made of triangles IS flag-violating at
        # the full 4-clique only
        fc = FacetComplex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
        v = S.is_flag(fc)
        assert v.is_no
        assert v.witness == (0, 1, 2, 3)

    def test_from_flag_roundtrip(self, octa):
        fc = FacetComplex.from_flag(octa)
        assert S.is_flag(fc).is_yes
        assert list(fc.one_skeleton().edges()) == list(octa.edges())

    def test_contains_simplex(self):
        fc = FacetComplex([(0, 1, 2)])
        assert fc.contains_simplex((0, 2))
        assert not fc.contains_simplex((0, 3))


class TestWindowView:
    def test_margin_bounds(self, window10):
        g = window10.complex
        with pytest.raises(ComplexError):
            S.WindowView(g, window10.basepoint, 10, 0)
        with pytest.raises(ComplexError):
            S.WindowView(g, window10.basepoint, 10, 11)

    def test_trusted_set_is_inner_ball(self, window10):
        base = window10.basepoint
        g = window10.complex
        for v in g.vertices:
            expected = g.distance(base, v) <= window10.radius - window10.margin
            assert window10.is_trusted(v) == expected
        assert len(window10.trusted_vertices) == 1 + 3 * 6 * 7

    def test_trusted_distance_tagging(self, window10):
        base = window10.basepoint
        far = max(
            window10.trusted_vertices,
            key=lambda v: window10.complex.distance(base, v),
        )
        near = window10.complex.geodesic(base, far)[1]
        assert window10.trusted_distance(base, near).trusted
        td = window10.trusted_distance(base, far)
        assert td.value == 6 and not td.trusted  # value above the margin
        # untrusted endpoint
        boundary = next(
            v for v in window10.complex.vertices if not window10.is_trusted(v)
        )
        for u in window10.complex.neighbors(boundary):
            assert not window10.trusted_distance(boundary, u).trusted

    def test_stabilization_under_radius_growth(self):
        small = S.triangular_lattice_window(6, 3)
        large = S.triangular_lattice_window(8, 3)
        to_large = {
            i: large.id_of[c] for i, c in small.coord_of.items() if c in large.id_of
        }
        trusted = sorted(small.trusted_vertices)
        for u in trusted:
            assert large.is_trusted(to_large[u])
            for v in trusted:
                if u >= v:
                    continue
                d_small = small.trusted_distance(u, v)
                d_large = large.trusted_distance(to_large[u], to_large[v])
                if d_small.trusted:
                    assert d_large.trusted
                    assert d_small.value == d_large.value

    def test_ambient_and_scope(self, window10, octa):
        assert S.ambient(window10) is window10.complex
        assert S.ambient(octa) is octa
        g, region, bound = S.scope(window10)
        assert region == window10.trusted_vertices and bound == 4
        g2, region2, bound2 = S.scope(octa)
        assert region2 is None and bound2 == INF
