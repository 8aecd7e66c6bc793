"""Exchange graphs, C-constant subgraphs, certificates, products, shapes."""

import random
from itertools import combinations

import networkx as nx
import pytest

from conftest import connected_permutations, necklace_of
from positroid_lab import (
    BudgetExceededError,
    LabeledGraph,
    OracleUnavailableError,
    brute_force_maximal_collections,
    canonical_certificate,
    cartesian_product,
    cconstant_graph,
    exchange_graph,
    from_adjacency,
    isomorphic,
    shape,
)
from positroid_lab.catalog import NAMED_ADJACENCY, named_graph
from positroid_lab.cyclic import InvalidInputError, mask_of
from positroid_lab.graphs import codimension


GOLDEN_ORDERS = {
    "312": 1, "3412": 2, "365124": 3, "34512": 5, "345612": 14,
    "351624": 4, "3456712": 42,
}


def test_golden_orders():
    for text, order in GOLDEN_ORDERS.items():
        assert exchange_graph(necklace_of(text)).order == order


def test_exchange_graph_shapes():
    assert shape(exchange_graph(necklace_of("312"))) == ("path", 1)
    assert shape(exchange_graph(necklace_of("3412"))) == ("path", 2)
    assert shape(exchange_graph(necklace_of("365124"))) == ("path", 3)
    assert shape(exchange_graph(necklace_of("34512"))) == ("cycle", 5)
    assert shape(exchange_graph(necklace_of("351624"))) == ("cycle", 4)


def test_exchange_graph_against_named_lists():
    g14 = exchange_graph(necklace_of("345612"))
    assert isomorphic(g14, from_adjacency(NAMED_ADJACENCY["I"]))
    g42 = exchange_graph(necklace_of("3456712"))
    assert isomorphic(g42, from_adjacency(NAMED_ADJACENCY["Z6"]))


def test_budget_guard():
    with pytest.raises(BudgetExceededError):
        exchange_graph(necklace_of("3456712"), budget=10)


def test_vertices_are_collections():
    g = exchange_graph(necklace_of("3412"), verify=True)
    assert {len(v) for v in g.vertices} == {5}
    for coll in g.collections():
        assert coll.is_maximal


def test_cconstant_full_and_trivial():
    nk = necklace_of("3412")
    g = exchange_graph(nk)
    same = cconstant_graph(nk, nk.sets)
    assert isomorphic(same, g) and same.order == g.order
    single = cconstant_graph(nk, g.vertices[0])
    assert single.order == 1 and single.size == 0
    assert codimension(nk, g.vertices[0]) == 0
    assert codimension(nk, nk.sets) == 1


def test_cconstant_codimension_one_is_tiny():
    for text in ["3412", "34512", "345612"]:
        nk = necklace_of(text)
        g = exchange_graph(nk)
        for vertex in g.vertices:
            interior = [m for m in vertex if m not in nk.mask_set]
            for drop in interior:
                sub = cconstant_graph(nk, frozenset(vertex) - {drop}, graph=g)
                assert sub.order in (1, 2)
                assert shape(sub)[0] == "path"


def test_cconstant_rejects_bad_input():
    nk = necklace_of("3412")
    with pytest.raises(InvalidInputError):
        cconstant_graph(nk, [mask_of((1, 3), 4), mask_of((2, 4), 4)])


def test_cconstant_connected_for_single_set_drops():
    # Fixing all but one interior set leaves one or two collections, i.e. a
    # connected path, over every small boundary.
    for n in range(4, 7):
        for perm in connected_permutations(n):
            nk = necklace_of(str(perm))
            g = exchange_graph(nk)
            seen = set()
            for vertex in g.vertices:
                for drop in vertex:
                    if drop in nk.mask_set:
                        continue
                    key = frozenset(vertex) - {drop}
                    if key in seen:
                        continue
                    seen.add(key)
                    sub = cconstant_graph(nk, key, graph=g)
                    assert sub.order in (1, 2) and shape(sub)[0] == "path"


def test_certificate_invariant_under_relabeling():
    rng = random.Random(20240601)
    graphs = [
        named_graph("D"),
        named_graph("I"),
        cartesian_product(named_graph("B"), named_graph("D")),
    ]
    for g in graphs:
        want = canonical_certificate(g)
        for _ in range(100):
            perm = list(range(g.order))
            rng.shuffle(perm)
            assert canonical_certificate(g.relabeled(perm)) == want


def test_certificate_separates_small_graphs():
    p3 = from_adjacency({1: [2], 2: [1, 3], 3: [2]})
    k3 = from_adjacency({1: [2, 3], 2: [1, 3], 3: [1, 2]})
    assert canonical_certificate(p3) != canonical_certificate(k3)
    assert not isomorphic(p3, k3)


def test_certificate_matches_vf2_on_catalog_pairs():
    # Certificates must agree with an independent isomorphism oracle.
    names = ["C", "D", "E", "F", "I", "P", "R"]
    graphs = {nm: named_graph(nm) for nm in names}
    for a, b in combinations(names, 2):
        g1, g2 = graphs[a], graphs[b]
        nx1 = nx.Graph(list(g1.edges))
        nx1.add_nodes_from(range(g1.order))
        nx2 = nx.Graph(list(g2.edges))
        nx2.add_nodes_from(range(g2.order))
        assert nx.is_isomorphic(nx1, nx2) == (
            canonical_certificate(g1) == canonical_certificate(g2)
        )


def test_cartesian_product_shapes_and_sizes():
    B = named_graph("B")
    D = named_graph("D")
    A = named_graph("A")
    assert shape(cartesian_product(B, B)) == ("cycle", 4)
    assert isomorphic(cartesian_product(A, D), D)
    bd = cartesian_product(B, D)
    assert bd.order == 10
    assert bd.size == B.order * D.size + D.order * B.size


def test_shape_enum():
    assert shape(from_adjacency({1: [2], 2: [1]})) == ("path", 2)
    star = from_adjacency({1: [2, 3, 4], 2: [1], 3: [1], 4: [1]})
    assert shape(star) == ("tree", None)
    two = LabeledGraph((1, 2), frozenset())
    assert shape(two) == ("other", None)


def test_brute_force_oracle_examples():
    assert len(brute_force_maximal_collections(necklace_of("3412"))) == 2
    assert len(brute_force_maximal_collections(necklace_of("312"))) == 1
    assert len(brute_force_maximal_collections(necklace_of("34512"))) == 5


def test_brute_force_guard():
    with pytest.raises(OracleUnavailableError):
        brute_force_maximal_collections(necklace_of("567891234"))


def test_oracle_matches_bfs_small():
    for n in range(3, 6):
        for perm in connected_permutations(n):
            nk = necklace_of(str(perm))
            assert sorted(exchange_graph(nk).vertices) == brute_force_maximal_collections(nk)
