from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliated_scenes import fattening as fat
from foliated_scenes.core_model import build_scene
from foliated_scenes.errors import GoodSaturationsRequired, NotDistinguished, ValidationFailed
from foliated_scenes.generate import random_scene

from .conftest import scene

FORBIDDEN = {"e-e", "i-i"}


@pytest.fixture(scope="module")
def three_lunes_model():
    return fat.build_distinguished(scene("three_lunes"))


def test_three_lunes_counts(three_lunes_model):
    assert three_lunes_model.distinguished and three_lunes_model.predistinguished
    assert len(three_lunes_model.chimneys) == 9
    assert sorted(three_lunes_model.tubes) == sorted(e.id for e in three_lunes_model.scene.edges)
    assert len(fat.enumerate_free_doors(three_lunes_model)) == 2 * 9 + 4


def test_exceptional_model(exceptional):
    m = fat.build_distinguished(exceptional)
    assert m.distinguished and len(m.chimneys) == 2 and not m.tubes
    free = fat.enumerate_free_doors(m)
    assert len(free) == 2 and {d.association for d in free} == {"F"}
    assert {d.direction for d in free} == {"in", "out"}


def test_invalid_scene_is_refused():
    with pytest.raises(ValidationFailed):
        fat.build_distinguished(scene("resonant_chain"))


def test_equal_base_pairing(three_lunes_model):
    for eid in ("a3", "a4", "c3", "c4"):
        tube = three_lunes_model.tubes[eid]
        assert tube.equal_base
        pair = [three_lunes_model.doors[d] for d in tube.out_doors]
        assert len(pair) == 2 and pair[0].base == pair[1].base


def test_chimney_sides(three_lunes_model):
    ch = three_lunes_model.chimneys
    assert ch["2/o"].fence_topology == "cylinder" and ch["2/o"].out_part == ("fence", "lid")
    assert ch["7/o"].in_part == ("fence", "lid")
    assert ch["3/+"].fence_topology == "disc" and ch["3/+"].out_part == ("fence",)
    assert ch["5/o"].in_part == ("fence",) and ch["5/o"].out_part == ("lid",)


def test_free_doors_touch_their_face_ends(three_lunes_model):
    from foliated_scenes.graph_analysis import face_limits

    for f in three_lunes_model.scene.faces:
        doors = [d for d in fat.enumerate_free_doors(three_lunes_model) if d.association == f.id]
        assert {d.chimney for d in doors} == set(face_limits(three_lunes_model.scene, f.id))
        assert sorted(d.direction for d in doors) == ["in", "out"]


def test_not_distinguished_guards(three_lunes_model):
    broken = fat.FatteningModel(
        three_lunes_model.scene,
        three_lunes_model.chimneys,
        three_lunes_model.tubes,
        three_lunes_model.doors,
        three_lunes_model.construction_order,
        [fat.Violation("door.side", ("x",), "forced")],
    )
    for fn in (fat.enumerate_free_doors, fat.classify_fattening_frontier, fat.extend_support):
        with pytest.raises(NotDistinguished):
            fn(broken)


def test_classification_items(three_lunes_model):
    by_target = {t.target: t for t in fat.classify_fattening_frontier(three_lunes_model)}
    saddle_in = by_target["free:1/o:C1"]  # in-door at the tangential saddle, fence inner
    assert saddle_in.rule == "(i)"
    assert set(saddle_in.types.values()) == {"e-i", "e-t", "t-i", "t-t"}
    assert by_target["lid:5/o"].types == {"interior": "i-e", "boundary": "t-e"}
    assert by_target["lid:7/o"].rule == "(iii)"
    assert by_target["free:7/o:A2"].types == {"door-minus-jambs": "e-i", "jambs": "t-i"}
    for t in by_target.values():
        assert not FORBIDDEN & set(t.types.values())


def test_itineraries_and_checks(three_lunes_model):
    its = {it.generator: it for it in fat.stain_itineraries(three_lunes_model)}
    one_stop = its["fixed:3:a3"]
    assert [s.door for s in one_stop.stops] == ["door:5/o:a3"] and one_stop.terminal == "5"
    assert [s.chimney for s in its["fixed:4:c3"].stops] == ["1/o", "7/o"]
    report = fat.check_good_saturations(three_lunes_model)
    assert report.passed
    sanctioned = [v for v in report.violations if v.rule_id == "gsfd.sanctioned"]
    assert len(sanctioned) == 9


def test_out_door_jamb_follows_theta(corners):
    m = fat.build_distinguished(corners)
    its = {it.generator: it for it in fat.stain_itineraries(m)}
    jamb = its["jamb:N/o:C1:1"]
    assert [s.chimney for s in jamb.stops] == ["S/o", "A1/o"]


def test_injected_conflicts():
    m = fat.build_distinguished(scene("three_lunes_injected_conflict"))
    report = fat.check_good_saturations(m)
    assert "gsfm" in report.rules()
    with pytest.raises(GoodSaturationsRequired):
        fat.extend_support(m, report)


def test_free_door_visit_injection():
    doc = scene("three_lunes")
    from foliated_scenes.core_model import serialize

    raw = serialize(doc)
    raw["injections"] = [{"kind": "free-door-visit", "generators": ["fixed:3:a3"]}]
    m = fat.build_distinguished(build_scene(raw))
    assert "gsfmfd" in fat.check_good_saturations(m).rules()


def test_three_lunes_frontier(three_lunes_model):
    fr = fat.extend_support(three_lunes_model)
    assert len(fr.discs) == 6
    assert fr.summary["absorbed_free_doors"] == 18
    for disc in fr.discs:
        if disc.dim_w == 2:
            assert len(disc.tt_points) == 4
            assert not any(s.meets_base for s in disc.tt_points)
            assert len([s for s in disc.segments if s.type in ("t-i", "i-t") and s.meets_base]) == 2
        if disc.dim_w == 1:
            assert {s.type for s in disc.segments if s.kind == "arc"} <= {"e-t", "t-e"}
        assert not FORBIDDEN & {s.type for s in disc.segments}
    pair = {p.face: p for p in fr.pairings}["A1"]
    assert pair.jamb_map == {"jamb:2/o:A1:1": "jamb:5/o:A1:1", "jamb:2/o:A1:2": "jamb:5/o:A1:2"}


def test_disjoint_family(three_lunes_model, exceptional):
    rep = fat.disjoint_family_report(three_lunes_model)
    assert rep["passed"] and set(rep["members"]) == {"W:3", "W:4", "L1:3", "L2:3", "L1:4", "L2:4"}
    rep = fat.disjoint_family_report(fat.build_distinguished(scene("random_3")))
    assert rep["passed"] and any(set(s["members"]) == {"W:4", "W:s1"} for s in rep["closure_sharing"])
    assert fat.disjoint_family_report(fat.build_distinguished(exceptional)) == {
        "passed": True,
        "members": {},
        "conflicts": [],
        "closure_sharing": [],
    }


def _model_properties(sc):
    m = fat.build_distinguished(sc)
    assert m.distinguished, m.problems
    for nu, ch in m.chimneys.items():
        unfree = [d for d in m.doors_at(nu) if not d.is_free]
        assert len(unfree) == len(set(sc.edges_meeting(nu)))
        assert (ch.fence_topology == "cylinder") == sc.vertex_class(ch.point).is_node
    n_tr = sum(1 for p in sc.points if sc.vertex_class(p.id).is_transversal)
    nodes = sum(1 for p in sc.points if sc.vertex_class(p.id).is_node)
    free = fat.enumerate_free_doors(m)
    assert len(free) == 2 * len(sc.faces) + 2 * n_tr
    assert Counter(d.association for d in free if d.association in {f.id for f in sc.faces}) == {
        f.id: 2 for f in sc.faces
    }
    its = fat.stain_itineraries(m)
    for it in its:
        chimneys = [s.chimney for s in it.stops]
        assert len(chimneys) == len(set(chimneys))
        assert sc.vertex_class(it.terminal).is_node
    report = fat.check_good_saturations(m, its)
    assert report.passed
    fr = fat.extend_support(m, report)
    assert fr.summary["absorbed_free_doors"] == 2 * len(sc.faces)
    assert len(fr.discs) == nodes + n_tr
    for t in fat.classify_fattening_frontier(m):
        assert not FORBIDDEN & set(t.types.values())
    assert fat.disjoint_family_report(m, its)["passed"]


@pytest.mark.parametrize("name", ["three_lunes", "corner_transitions", "exceptional", "random_1", "random_2", "random_3"])
def test_model_properties_bundled(name):
    _model_properties(scene(name))


@given(st.integers(0, 10_000))
@settings(max_examples=60)
def test_model_properties_random(seed):
    _model_properties(build_scene(random_scene(seed)))
