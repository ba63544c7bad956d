import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliated_scenes import graph_analysis as ga
from foliated_scenes.builder import direction as d
from foliated_scenes.builder import document, edge, point
from foliated_scenes.core_model import build_scene
from foliated_scenes.errors import CyclicGraph
from foliated_scenes.generate import random_scene

from .conftest import scene


def brute_force_length(sc, v):
    best = 0
    stack = [(v, 0)]
    while stack:
        u, n = stack.pop()
        best = max(best, n)
        for eid in sc.out_edges[u]:
            stack.append((sc.edge(eid).omega, n + 1))
    return best


@pytest.fixture(scope="module")
def chain():
    """r -> s -> a inside one component."""
    pts = [
        point("r", ["A"], [d("u", 1, ["A"]), d("v", 2, ["A"]), d("n", 1, "transversal")]),
        point("s", ["A"], [d("u", -1, ["A"]), d("v", 1, ["A"]), d("n", -1, "transversal")]),
        point("a", ["A"], [d("u", -1, ["A"]), d("v", -2, ["A"]), d("n", -1, "transversal")]),
    ]
    edges = [edge("rs", "r", "s", "trace", ["A"], "u", "u"), edge("sa", "s", "a", "trace", ["A"], "v", "u", ["+"])]
    return build_scene(document("chain", "", ["A"], pts, edges, []))


def test_length_examples(three_lunes, chain):
    assert ga.length(three_lunes, "7") == 0
    assert ga.length(three_lunes, "3") == 1
    assert ga.length(three_lunes, "2") == brute_force_length(three_lunes, "2") == 3
    assert [ga.length(chain, v) for v in "rsa"] == [2, 1, 0]


def test_chain_filtration(chain):
    layers = ga.filtration(chain)
    assert [sorted(l.vertices) for l in layers] == [["a"], ["a", "s"], ["a", "r", "s"]]
    assert [sorted(l.edges) for l in layers] == [[], ["sa"], ["rs", "sa"]]
    assert ga.edge_complement(chain, layers[1]).edges == frozenset({"rs"})


def test_exceptional_filtration(exceptional):
    (only,) = ga.filtration(exceptional)
    assert only.vertices == {"R", "A"} and not only.edges


def test_edge_complement_extremes(three_lunes):
    whole = ga.whole_graph(three_lunes)
    assert ga.edge_complement(three_lunes, whole) == ga.Subgraph(frozenset(), frozenset())
    empty = ga.Subgraph(frozenset(), frozenset())
    comp = ga.edge_complement(three_lunes, empty)
    assert comp.edges == whole.edges
    assert comp.vertices == {v for e in three_lunes.edges for v in (e.alpha, e.omega)}


def test_cycle_detection():
    pts = [
        point("p", ["A"], [d("u", 1, ["A"]), d("v", -1, ["A"]), d("n", 1, "transversal")]),
        point("q", ["A"], [d("u", 1, ["A"]), d("v", -1, ["A"]), d("n", 1, "transversal")]),
    ]
    edges = [
        edge("pq", "p", "q", "trace", ["A"], "u", "v", None, ["+"]),
        edge("qp", "q", "p", "trace", ["A"], "u", "v", None, ["+"]),
    ]
    sc = build_scene(document("loop", "", ["A"], pts, edges, []))
    assert ga.find_cycles(sc)
    with pytest.raises(CyclicGraph):
        ga.lengths(sc)


def test_s_leq_examples(three_lunes):
    assert ga.s_leq(three_lunes, "3/+", "3/+")
    assert ga.s_leq(three_lunes, "2/o", "5/o")
    assert not ga.s_leq(three_lunes, "5/o", "7/o") and not ga.s_leq(three_lunes, "7/o", "5/o")


def test_face_limits(three_lunes, exceptional):
    assert ga.face_limits(three_lunes, "A1") == ("2/o", "5/o")
    assert ga.face_limits(exceptional, "F") == ("R/o", "A/o")


def _check_graph_properties(sc):
    ell = ga.lengths(sc)
    for v in ell:
        assert ell[v] == brute_force_length(sc, v)
    for e in sc.edges:
        assert ell[e.alpha] > ell[e.omega]
    layers = ga.filtration(sc)
    for a, b in zip(layers, layers[1:]):
        assert a <= b
    assert layers[-1] == ga.whole_graph(sc)
    attractors = {p.id for p in sc.points if sc.vertex_class(p.id).kind == "D-node-attractor"}
    if not sc.is_exceptional():
        assert layers[0].vertices == attractors
    nus = [n.id for n in sc.s_components]
    for a, b, c in itertools.product(nus, repeat=3):
        if ga.s_leq(sc, a, b) and ga.s_leq(sc, b, c):
            assert ga.s_leq(sc, a, c)
    for a, b in itertools.combinations(nus, 2):
        assert not (ga.s_leq(sc, a, b) and ga.s_leq(sc, b, a))
    for a in nus:
        assert ga.s_leq(sc, a, a)


@pytest.mark.parametrize("name", ["three_lunes", "corner_transitions", "random_1", "random_2", "random_3"])
def test_properties_on_bundled(name):
    _check_graph_properties(scene(name))


@given(st.integers(0, 10_000))
@settings(max_examples=60)
def test_properties_on_random(seed):
    _check_graph_properties(build_scene(random_scene(seed)))
