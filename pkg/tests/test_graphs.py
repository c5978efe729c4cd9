import json

import pytest

from primetop import (
    Graph,
    GraphKind,
    InvalidArgumentError,
    barycentric_refinement,
    build_graph,
    component_diameter,
    components,
    euler_characteristic,
    graph_product,
    heteroclinic,
    induced_subgraph,
    kummer_involution,
    primorial,
    unit_sphere,
    whitney_complex,
)
from primetop.graphs import cliques, complete_graph, cycle_graph, verify_component_diameter_bound


def test_build_graph_examples(sieve):
    G = build_graph(GraphKind.prime(6), sieve)
    assert G.labels == (2, 3, 5, 6)
    assert G.edges() == [(2, 6), (3, 6)]
    GI = build_graph(GraphKind.integer(6), sieve)
    assert GI.labels == (2, 3, 4, 5, 6)
    assert GI.edges() == [(2, 4), (2, 6), (3, 6)]
    D = build_graph(GraphKind.divisor(30), sieve)
    assert D.labels == (2, 3, 5, 6, 10, 15)
    assert all(D.degree(v) == 2 for v in D.labels)
    assert len(components(D)) == 1  # a 6-cycle


def test_build_graph_validation(sieve):
    with pytest.raises(InvalidArgumentError):
        GraphKind.prime(1)
    with pytest.raises(InvalidArgumentError):
        build_graph(GraphKind.prime(sieve.limit + 1), sieve)


def test_induced_subgraph(sieve):
    G = build_graph(GraphKind.prime(10), sieve)
    H = induced_subgraph(G, {2, 6, 3})
    assert H.labels == (2, 3, 6)
    assert H.edges() == [(2, 6), (3, 6)]
    assert induced_subgraph(G, set()).labels == ()
    assert induced_subgraph(G, G.labels) == G
    with pytest.raises(InvalidArgumentError):
        induced_subgraph(G, {4})


def test_unit_sphere(sieve):
    G30 = build_graph(GraphKind.prime(30), sieve)
    S = unit_sphere(G30, 30)
    assert S.labels == (2, 3, 5, 6, 10, 15)
    assert all(S.degree(v) == 2 for v in S.labels)
    G10 = build_graph(GraphKind.prime(10), sieve)
    assert unit_sphere(G10, 7).labels == ()
    G105 = build_graph(GraphKind.prime(105), sieve)
    S105 = unit_sphere(G105, 105)
    assert S105.labels == (3, 5, 7, 15, 21, 35)
    assert all(S105.degree(v) == 2 for v in S105.labels)
    with pytest.raises(InvalidArgumentError):
        unit_sphere(G10, 9999)


def test_components(sieve):
    G = build_graph(GraphKind.prime(10), sieve)
    assert components(G) == [{2, 3, 5, 6, 10}, {7}]
    assert components(Graph([], [])) == []
    assert components(build_graph(GraphKind.prime(3), sieve)) == [{2}, {3}]


def test_component_diameter(sieve):
    assert component_diameter(build_graph(GraphKind.prime(15), sieve), 2) == 5
    assert component_diameter(build_graph(GraphKind.prime(10), sieve), 7) == 0
    assert component_diameter(build_graph(GraphKind.prime(6), sieve), 2) == 2


def test_diameter_bound_sweep_small(sieve):
    G = build_graph(GraphKind.prime(500), sieve)
    assert verify_component_diameter_bound(G, 500) is None
    # the sweep's conclusion matches brute-force diameters at a few n
    for n in (15, 60, 120):
        sub = induced_subgraph(G, [v for v in G.labels if v <= n])
        assert component_diameter(sub, 2) <= 5


def test_prime_is_squarefree_restriction_of_integer(sieve):
    for n in range(2, 501):
        GP = build_graph(GraphKind.prime(n), sieve)
        GI = build_graph(GraphKind.integer(n), sieve)
        restricted = induced_subgraph(GI, GP.labels)
        assert restricted.labels == GP.labels
        assert restricted.edges() == GP.edges()


def test_divisor_vertex_count(sieve):
    # squarefree m with d+1 prime factors: 2^(d+1) - 2 vertices
    for m, count in ((6, 2), (30, 6), (210, 14), (2310, 30)):
        assert build_graph(GraphKind.divisor(m), sieve).n_vertices == count


def test_barycentric_refinement_small():
    P = barycentric_refinement(complete_graph(2))
    assert P.labels == (1, 2, 3)
    assert P.edges() == [(1, 2), (2, 3)]
    B = barycentric_refinement(cycle_graph(4))
    assert B.n_vertices == 8
    assert sorted(B.degree(v) for v in B.labels) == [2] * 8
    assert len(components(B)) == 1  # C_8
    W = barycentric_refinement(complete_graph(3))
    assert W.n_vertices == 7
    assert sorted(W.degree(v) for v in W.labels) == [3, 3, 3, 3, 3, 3, 6]


def test_graph_product(sieve):
    G = build_graph(GraphKind.prime(10), sieve)
    assert graph_product(G, complete_graph(1)) == barycentric_refinement(G)
    assert graph_product(complete_graph(1), complete_graph(1)).labels == (1,)
    P = graph_product(complete_graph(2), complete_graph(2))
    assert euler_characteristic(whitney_complex(P)) == 1


def test_graph_product_vertex_count(sieve):
    for A in (complete_graph(3), cycle_graph(4)):
        for B in (complete_graph(2), cycle_graph(5)):
            na = sum(len(d) for d in cliques(A))
            nb = sum(len(d) for d in cliques(B))
            assert graph_product(A, B).n_vertices == na * nb


def test_kummer_involution(sieve):
    assert kummer_involution(30, sieve) == {2: 15, 15: 2, 3: 10, 10: 3, 5: 6, 6: 5}
    assert kummer_involution(6, sieve) == {2: 3, 3: 2}
    perm = kummer_involution(210, sieve)
    assert len(perm) == 14
    assert all(perm[v] != v for v in perm)
    assert all(perm[perm[v]] == v for v in perm)
    with pytest.raises(InvalidArgumentError):
        kummer_involution(12, sieve)
    with pytest.raises(InvalidArgumentError):
        kummer_involution(5, sieve)


def test_heteroclinic(sieve):
    G210 = build_graph(GraphKind.prime(210), sieve)
    assert heteroclinic(G210, 6, 210) == {6, 30, 42, 210}
    assert heteroclinic(G210, 6, 6) == {6}
    G209 = build_graph(GraphKind.prime(209), sieve)
    assert heteroclinic(G209, 2, 70) == {2, 10, 14, 70}
    with pytest.raises(InvalidArgumentError):
        heteroclinic(G209, 1, 70)


def test_graph_constructor_validation():
    with pytest.raises(InvalidArgumentError):
        Graph([1, 1], [])
    with pytest.raises(InvalidArgumentError):
        Graph([1, 2], [(1, 1)])
    with pytest.raises(InvalidArgumentError):
        Graph([1, 2], [(1, 3)])
    with pytest.raises(InvalidArgumentError):
        Graph([0, 1], [])


def test_json_schema(sieve):
    G = build_graph(GraphKind.prime(30), sieve)
    data = json.loads(G.to_json())
    assert data["kind"] == "prime"
    assert data["param"] == 30
    assert data["vertices"] == sorted(data["vertices"])
    edges = [tuple(e) for e in data["edges"]]
    assert all(a < b for a, b in edges)
    assert edges == sorted(edges)


def test_dot_export(sieve):
    D = build_graph(GraphKind.divisor(210), sieve)
    dot = D.to_dot()
    assert dot.startswith("graph G {")
    assert dot.count(";") == 14 + len(D.edges())
    assert "2 -- 6;" in dot


def test_adjacency_is_sorted_indices(sieve):
    G = build_graph(GraphKind.prime(30), sieve)
    for row in G.adjacency:
        assert list(row) == sorted(row)
    # symmetric
    for i, row in enumerate(G.adjacency):
        for j in row:
            assert i in G.adjacency[j]


def test_kummer_involution_on_primorials(sieve):
    for d in (2, 3, 4, 5):
        m = primorial(d)
        perm = kummer_involution(m, sieve)
        assert all(perm[perm[v]] == v for v in perm)
