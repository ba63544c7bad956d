import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliated_scenes import graph_analysis as ga
from foliated_scenes.core_model import build_scene
from foliated_scenes.generate import random_scene
from foliated_scenes.validators import (
    check_acyclicity,
    check_faces,
    check_hyperbolicity,
    check_index_formula,
    check_morse_smale,
    check_resonance,
    check_transversal_degree,
    hypothesis_summary,
    index_counts,
    validate_all,
)

from .conftest import INVALID_SCENES, VALID_SCENES, mutate, scene, scene_doc


def drop_point(doc, pid):
    gone = {e["id"] for e in doc["edges"] if pid in (e["alpha"], e["omega"])}
    doc["points"] = [p for p in doc["points"] if p["id"] != pid]
    doc["edges"] = [e for e in doc["edges"] if e["id"] not in gone]
    doc["faces"] = [
        f
        for f in doc["faces"]
        if pid not in (f["alpha_vertex"], f["omega_vertex"])
        and not any(e in gone for path in f["boundary_paths"] for e in path)
    ]


@pytest.mark.parametrize("name", VALID_SCENES)
def test_bundled_valid_scenes_pass(name):
    report = validate_all(scene(name))
    assert report.passed, report.errors
    assert all(ok for _, ok in hypothesis_summary(report))


def test_invalid_scenes_fail_in_their_group():
    assert {v.group for v in validate_all(scene("resonant_chain")).errors} == {"non-resonance"}
    assert "morse-smale.saddle-connection" in validate_all(scene("morse_smale_violation")).rules()


def test_zero_real_part():
    def zero(doc):
        doc["points"][0]["directions"][0]["eigenvalue"] = {"sign": "0"}

    assert "hyperbolicity.zero-real-part" in check_hyperbolicity(mutate("three_lunes", zero)).rules()


def test_sign_markers_only_node_is_hyperbolic():
    def markers(doc):
        for p in doc["points"]:
            if p["id"] == "A":
                for x in p["directions"]:
                    x["eigenvalue"] = {"sign": "-"}

    report = check_hyperbolicity(mutate("exceptional", markers))
    assert report.passed


def test_two_cycle_lists_both_edges():
    def cycle(doc):
        doc["edges"] += [
            {"id": "pq", "alpha": "R", "omega": "A", "kind": "trace", "components": ["S"],
             "alpha_direction": "u", "omega_direction": "u"},
            {"id": "qp", "alpha": "A", "omega": "R", "kind": "trace", "components": ["S"],
             "alpha_direction": "u", "omega_direction": "u"},
        ]

    report = check_acyclicity(mutate("exceptional", cycle))
    (v,) = report.errors
    assert set(v.entities) == {"pq", "qp"}


def test_acyclicity_examples(three_lunes, exceptional):
    assert check_acyclicity(three_lunes).passed and check_acyclicity(exceptional).passed


def test_index_formula(three_lunes, exceptional):
    assert index_counts(three_lunes)["nodes"] == 4 and index_counts(three_lunes)["transversal_saddles"] == 2
    assert check_index_formula(three_lunes).passed and check_index_formula(exceptional).passed
    assert not check_index_formula(mutate("three_lunes", lambda d: drop_point(d, "5"))).passed


def test_transversal_in_degree_one():
    def cut(doc):
        doc["edges"] = [e for e in doc["edges"] if e["id"] != "a1"]
        doc["faces"] = [f for f in doc["faces"] if f["id"] not in ("A1", "A2")]

    assert "spherical-divisor.transversal-degree" in check_transversal_degree(mutate("three_lunes", cut)).rules()


def test_attractor_with_outgoing_edge():
    def leave(doc):
        doc["edges"].append(
            {"id": "bad", "alpha": "5", "omega": "7", "kind": "trace", "components": ["A"],
             "alpha_direction": "d1", "omega_direction": "ab"}
        )

    sc = mutate("three_lunes", leave)
    assert "spherical-divisor.node-degree" in check_transversal_degree(sc).rules()


def test_morse_smale_examples(three_lunes, corners):
    assert check_morse_smale(three_lunes).passed  # trace edges saddle -> attractor
    assert check_morse_smale(corners).passed  # skeleton saddle connection N -> S
    assert not check_morse_smale(scene("morse_smale_violation")).passed


def test_face_path_wrong_end():
    def wrong(doc):
        for f in doc["faces"]:
            if f["id"] == "A1":
                f["boundary_paths"][1] = ["a2"]

    assert "spherical-divisor.face-path" in check_faces(mutate("three_lunes", wrong)).rules()


def test_exceptional_face_in_big_scene():
    def exc(doc):
        doc["faces"][0]["boundary_paths"] = "exceptional-two-vertex-face"

    assert "spherical-divisor.exceptional-face" in check_faces(mutate("three_lunes", exc)).rules()


def test_resonance_group(three_lunes):
    assert check_resonance(three_lunes).passed
    assert not check_resonance(scene("resonant_chain")).passed


def _shuffled(doc, seed):
    rng = random.Random(seed)
    for key in ("components", "points", "edges", "faces"):
        rng.shuffle(doc[key])
    for p in doc["points"]:
        rng.shuffle(p["directions"])
    return doc


@given(st.integers(0, 5000), st.integers(0, 99))
@settings(max_examples=40)
def test_order_independent(seed, perm):
    doc = random_scene(seed)
    a = validate_all(build_scene(doc))
    b = validate_all(build_scene(_shuffled(doc, perm)))
    assert a == b and a.passed


@pytest.mark.parametrize("name", INVALID_SCENES)
def test_order_independent_on_failures(name):
    a = validate_all(scene(name))
    b = validate_all(build_scene(_shuffled(scene_doc(name), 1)))
    assert a == b


@given(st.integers(0, 5000))
@settings(max_examples=40)
def test_every_saddle_lies_on_a_repeller_attractor_path(seed):
    sc = build_scene(random_scene(seed))
    for p in sc.points:
        vc = sc.vertex_class(p.id)
        if vc.is_node:
            continue
        path = ga.repeller_attractor_path(sc, p.id)
        vs = ga.path_vertices(sc, path)
        assert p.id in vs
        assert sc.vertex_class(vs[0]).kind == "D-node-repeller"
        assert sc.vertex_class(vs[-1]).kind == "D-node-attractor"
