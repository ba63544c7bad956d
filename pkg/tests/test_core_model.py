import copy
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from foliated_scenes import catalog
from foliated_scenes.builder import direction as d
from foliated_scenes.builder import document, face, point
from foliated_scenes.core_model import (
    ATTRACTOR,
    TANGENTIAL,
    TRANSVERSAL,
    build_scene,
    classify_vertex,
    derive_class,
    reverse_document,
    s_components_at,
    serialize,
)
from foliated_scenes.errors import (
    DanglingReference,
    DuplicateId,
    InconsistentEigenvalueSigns,
    SchemaViolation,
)
from foliated_scenes.generate import random_scene

from .conftest import scene_doc

seeds = st.integers(min_value=0, max_value=10_000)


def test_three_lunes_point_kinds(three_lunes):
    kinds = {p.id: classify_vertex(three_lunes, p.id).kind for p in three_lunes.points}
    assert len(three_lunes.points) == 7
    assert sorted(p for p, k in kinds.items() if k == TRANSVERSAL) == ["3", "4"]
    assert [p for p, k in kinds.items() if k == TANGENTIAL] == ["1"]
    assert sorted(p for p, k in kinds.items() if "node" in k) == ["2", "5", "6", "7"]


def test_exceptional_scene_builds(exceptional):
    assert len(exceptional.points) == 2 and exceptional.edges == ()
    assert exceptional.is_exceptional()


def test_unknown_component_is_dangling():
    doc = scene_doc("three_lunes")
    doc["points"][0]["components"][0] = "Z"
    with pytest.raises(DanglingReference):
        build_scene(doc)


def test_duplicate_edge_id():
    doc = scene_doc("three_lunes")
    doc["edges"][1]["id"] = doc["edges"][0]["id"]
    with pytest.raises(DuplicateId):
        build_scene(doc)


def test_schema_rejects_missing_field():
    doc = scene_doc("three_lunes")
    del doc["points"][0]["directions"]
    with pytest.raises(SchemaViolation):
        build_scene(doc)


def _pt(dirs, comps=("A",)):
    doc = point("p", list(comps), dirs)
    return build_scene(document("one", "", list(comps), [doc], [], [])).point("p")


def test_all_negative_is_plain_attractor():
    vc = derive_class(_pt([d("u", -1, ["A"]), d("v", -2, ["A"]), d("n", -1, "transversal")]))
    assert vc.kind == ATTRACTOR and not vc.is_3d_saddle and vc.dim_w == 3


def test_trace_point_transversal_saddle():
    vc = derive_class(_pt([d("u", -1, ["A"]), d("v", 1, ["A"]), d("n", 1, "transversal")]))
    assert vc.kind == TRANSVERSAL and vc.w2_stable is False and vc.w1 == ("u",)
    assert vc.dim_w == 2


def test_corner_with_w2_in_a_component_is_tangential():
    pt = _pt([d("ab", 1, ["A", "B"]), d("bc", -1, ["B", "C"]), d("ca", -2, ["C", "A"])], ("A", "B", "C"))
    vc = derive_class(pt)
    assert vc.kind == TANGENTIAL and vc.w2_component == "C"


def test_zero_eigenvalue_is_rejected():
    with pytest.raises(InconsistentEigenvalueSigns):
        derive_class(_pt([d("u", "0", ["A"]), d("v", -2, ["A"]), d("n", -1, "transversal")]))


def test_declared_class_must_match():
    doc = scene_doc("three_lunes")
    doc["points"][2]["class"] = "D-node-attractor"
    sc = build_scene(doc)
    with pytest.raises(InconsistentEigenvalueSigns):
        sc.vertex_class(doc["points"][2]["id"])


def test_s_component_counts(three_lunes):
    assert [n.id for n in s_components_at(three_lunes, "3")] == ["3/+", "3/-"]
    assert len(s_components_at(three_lunes, "7")) == 1
    assert len(s_components_at(three_lunes, "1")) == 1


def _invariants(sc):
    n_tr = sum(1 for p in sc.points if sc.vertex_class(p.id).is_transversal)
    assert len(sc.s_components) == len(sc.points) + n_tr
    for e in sc.edges:
        assert sc.point(e.alpha).direction(e.alpha_direction).eigenvalue.sign > 0
        assert sc.point(e.omega).direction(e.omega_direction).eigenvalue.sign < 0


@pytest.mark.parametrize("name", ["three_lunes", "exceptional", "corner_transitions", "random_1", "resonant_chain"])
def test_bundled_invariants(name):
    _invariants(build_scene(scene_doc(name)))


@given(seeds)
def test_round_trip_and_invariants(seed):
    sc = build_scene(random_scene(seed))
    _invariants(sc)
    assert build_scene(serialize(sc)) == sc


@given(seeds)
def test_double_reversal_is_identity(seed):
    doc = random_scene(seed)
    assert build_scene(reverse_document(reverse_document(doc))) == build_scene(doc)


def test_reversal_swaps_attractors_and_repellers(three_lunes):
    rev = three_lunes.reversed()
    for p in three_lunes.points:
        a, b = three_lunes.vertex_class(p.id), rev.vertex_class(p.id)
        assert a.is_node == b.is_node
        if a.is_node:
            assert a.kind != b.kind
    assert rev.reversed() is three_lunes


def test_catalog_documents_build():
    for name, fn in catalog.BUILDERS.items():
        build_scene(fn())


def test_shuffled_document_gives_equal_lookup():
    doc = copy.deepcopy(scene_doc("three_lunes"))
    rng = random.Random(3)
    for key in ("points", "edges", "faces"):
        rng.shuffle(doc[key])
    a, b = build_scene(scene_doc("three_lunes")), build_scene(doc)
    assert a.point_map == b.point_map and a.edge_map == b.edge_map and a.face_map == b.face_map
