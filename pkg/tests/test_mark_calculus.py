import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliated_scenes import catalog
from foliated_scenes import graph_analysis as ga
from foliated_scenes import mark_calculus as mc
from foliated_scenes.builder import direction as d
from foliated_scenes.builder import document, edge, point
from foliated_scenes.core_model import build_scene
from foliated_scenes.errors import DomainError, NotInSPrime, ResonantStep
from foliated_scenes.generate import random_scene

from .conftest import VALID_SCENES, scene

Q = Fraction


def corner(pid, t12, t13, t23):
    comps = ["D1", "D2", "D3"]
    return point(pid, comps, [d("t12", t12, ["D1", "D2"]), d("t13", t13, ["D1", "D3"]), d("t23", t23, ["D2", "D3"])])


def three_edge_chain(p_t23=-5, c1=(-1, 1, 2)):
    """p -> c1 -> c2 -> q through two corner saddles, both crossed by transitions inside D1.

    ``g4`` carries the escape of c1 inside D2 to an attracting corner x.
    """
    eig = {
        "p": (1, -1, p_t23),
        "c1": c1,
        "c2": (1, -2, 1),
        "q": (-3, 1, 2),
        "x": (-1, -1, -1),
    }
    pts = [corner(k, *v) for k, v in eig.items()]
    edges = [
        edge("g1", "p", "c1", "skeleton", ["D1", "D2"], "t12", "t12"),
        edge("g2", "c1", "c2", "skeleton", ["D1", "D3"], "t13", "t13"),
        edge("g3", "c2", "q", "skeleton", ["D1", "D2"], "t12", "t12"),
        edge("g4", "c1", "x", "skeleton", ["D2", "D3"], "t23", "t23"),
    ]
    return build_scene(document("chain3", "", ["D1", "D2", "D3"], pts, edges, [])), eig


def hand_iteration(eig, rho0):
    """Independent recursion: each corner's W1 is stable, the mark leaves along W2 inside D1."""
    # c1: W1 = t12, W2 direction in D1 is t13, in D2 is t23.
    a1, li1, lj1 = (Q(x) for x in eig["c1"])
    r1 = (lj1 - li1 * rho0) / a1
    # c2: W1 = t13, W2 direction in D1 is t12, in D3 is t23.
    li2, a2, lj2 = (Q(x) for x in eig["c2"])
    r2 = (lj2 - li2 * r1) / a2
    return [rho0, r1, r2]


def test_three_edge_chain_matches_hand_iteration():
    sc, eig = three_edge_chain()
    rho0 = mc.QuasiOrder(Q(5), "D1", "g1")
    got = mc.propagate_quasi_order(sc, ["g1", "g2", "g3"], rho0)
    assert [q.value for q in got] == hand_iteration(eig, Q(5)) == [5, 3, 1]
    assert [q.edge for q in got] == ["g1", "g2", "g3"]
    for q in got:
        other = next(c for c in sc.edge(q.edge).components if c != q.component)
        assert q.value * q.against(sc, other).value == 1


def test_chain_resonance_switch():
    resonant, _ = three_edge_chain(p_t23=-7)
    assert mc.is_s_resonant(resonant, ["g1", "g2", "g3"])
    assert mc.find_resonances(resonant) == [("g1", "g2", "g3")]
    generic, _ = three_edge_chain(p_t23=-5)
    assert not mc.is_s_resonant(generic, ["g1", "g2", "g3"])


def test_chain_escape():
    sc, _ = three_edge_chain()
    out = mc.propagate_quasi_order(sc, ["g1", "g2", "g3"], mc.QuasiOrder(Q(3, 2), "D1", "g1"))
    assert isinstance(out, mc.Escaped) and (out.point, out.edge) == ("c1", "g4")
    resonant_step = mc.propagate_quasi_order(sc, ["g1", "g2", "g3"], mc.QuasiOrder(Q(2), "D1", "g1"))
    assert isinstance(resonant_step, mc.ResonantAt) and resonant_step.point == "c1"


def test_single_step_path():
    sc, _ = three_edge_chain()
    out = mc.propagate_quasi_order(sc, ["g1", "g2"], mc.QuasiOrder(Q(4), "D1", "g1"))
    assert [q.value for q in out] == [4, 2]


def test_weights_and_trace_to_angle():
    sc = build_scene(catalog.resonant_chain())
    assert mc.weight(sc, "p", "D1").value == 2
    assert mc.weight(sc, "p", "D2").value == Q(1, 2)
    ri, rj = mc.trace_to_angle(sc, "p", "p/+")
    assert (ri.value, rj.value) == (2, Q(1, 2))
    with pytest.raises(NotInSPrime):
        mc.weight(scene("three_lunes"), "3", "A")


@pytest.mark.parametrize("name", VALID_SCENES + ("resonant_chain",))
def test_weight_pairs_are_reciprocal(name):
    sc = scene(name)
    for p in sc.points:
        vc = sc.vertex_class(p.id)
        if vc.s_prime:
            i, j = vc.w1_components
            assert mc.weight(sc, p.id, i).value * mc.weight(sc, p.id, j).value == 1


# -------------------------------------------------- transitions on the corner scene


@pytest.fixture(scope="module")
def corner_s(corners):
    vc, sigma = mc._corner_w1_edge(corners, "S")
    return corners, sigma, vc


def test_transition_examples():
    # alpha=-1, lambda_i=1, lambda_j=2 at c1 of the chain scene, against D1
    sc, _ = three_edge_chain()
    tm = mc.transition_map(sc, "c1", "D1")
    assert tm.lower == 2
    assert tm.apply(Q(3)) == 1 and tm.apply(Q(5)) == 3
    assert tm.invert(Q(1)) == 3
    with pytest.raises(ResonantStep):
        tm.apply(Q(2))
    with pytest.raises(DomainError):
        tm.apply(Q(1))


def test_inverse_example_with_other_eigenvalues():
    # alpha=-2, lambda_i=3, lambda_j=1: rho = 1/3 - (1/2)(-2/3) = 2/3 > 1/3
    sc, _ = three_edge_chain(c1=(-2, 3, 1))
    tm = mc.transition_map(sc, "c1", "D1")
    assert tm.lower == Q(1, 3)
    assert tm.invert(Q(1, 2)) == Q(2, 3)
    assert tm.apply(Q(2, 3)) == Q(1, 2)


def test_transition_inverse_identity_1000(corner_s):
    sc, sigma, vc = corner_s
    rng = random.Random(20240611)
    comps = list(vc.w1_components)
    done = 0
    while done < 1000:
        rho = Q(rng.randint(1, 400), rng.randint(1, 60))
        comp = rng.choice(comps)
        mark = mc.QuasiOrder(rho, comp, sigma)
        try:
            tau, out = mc.transition(sc, sigma, "S", mark)
        except ResonantStep:
            continue
        back = mc.inverse_transition(sc, tau, "S", out)
        assert back.against(sc, comp).value == rho
        again = mc.transition(sc, sigma, "S", back)
        assert again == (tau, out)
        done += 1


@given(st.fractions(min_value=Q(1, 1000), max_value=Q(1000)).filter(lambda x: x > 0))
def test_inverse_then_transition_is_identity(rho_out):
    sc = scene("corner_transitions")
    _, sigma = mc._corner_w1_edge(sc, "S")
    vc = sc.vertex_class("S")
    for comp in vc.w1_components:
        tau = mc.exit_edge(sc, "S", comp)
        mark = mc.QuasiOrder(rho_out, comp, tau)
        back = mc.inverse_transition(sc, tau, "S", mark)
        assert mc.transition(sc, sigma, "S", back) == (tau, mark)


def test_image_of_domain_approaches_zero(corner_s):
    sc, _, vc = corner_s
    for comp in vc.w1_components:
        tm = mc.transition_map(sc, "S", comp)
        outs = [tm.apply(tm.lower + Q(1, n)) for n in range(1, 200)]
        assert all(o > 0 for o in outs)
        assert all(a > b for a, b in zip(outs, outs[1:]))
        assert outs[-1] < Q(1, 50)
        assert tm.a * tm.lower + tm.b == 0


# -------------------------------------------------- resonance


def test_bundled_resonance():
    assert mc.find_resonances(scene("resonant_chain")) == [("pq",)]
    assert mc.find_resonances(build_scene(catalog.resonant_chain(q_pair=(2, 5)))) == []
    assert mc.find_resonances(scene("exceptional")) == []


# -------------------------------------------------- saturation paths


def test_theta_examples(three_lunes, corners):
    t = mc.theta_path(three_lunes, "1/o")
    assert (t.edges, t.terminal) == (("t1",), "7")
    t = mc.theta_path(corners, "N/o")
    assert t.edges == ("NS", "SA1") and t.terminal == "A1"
    assert [q.value for q in t.quasi_orders] == [Q(1, 2), 4]
    back = mc.theta_path(corners, "S/o")
    assert back.orientation == "backward" and back.edges == ("NS", "Y2N")


def test_pi_examples(three_lunes, corners):
    pp = mc.pi_paths(three_lunes, "3")
    assert pp.paths == (("a3",), ("a4",)) and pp.orientation == "forward"
    pp = mc.pi_paths(three_lunes, "4")
    assert pp.paths == (("c3", "t1"), ("c4",))
    pp = mc.pi_paths(corners, "s2")
    assert pp.orientation == "backward"
    assert pp.paths == (("Ss2", "NS", "Y2N"), ("Y2s2",))


def _theta_ok(sc):
    for nu, tp in mc.all_theta_paths(sc).items():
        assert mc.theta_violations(sc, tp) == []
        oriented = sc.reversed() if tp.orientation == "backward" else sc
        vs = ga.path_vertices(oriented, tp.edges)
        assert len(vs) == len(set(vs))
        assert oriented.vertex_class(tp.terminal).is_node
        assert tp.edges[0] == mc.w1_edge(sc, nu)
        assert mc.theta_path(sc, nu) == tp
    assert mc.check_theta_wellformed(sc).passed


@given(st.integers(0, 10_000))
@settings(max_examples=60)
def test_theta_properties_on_random(seed):
    _theta_ok(build_scene(random_scene(seed)))


def test_corrupted_theta_is_flagged(three_lunes):
    tp = mc.theta_path(three_lunes, "1/o")
    bad = mc.ThetaPath("1/o", ("c3",), "4", tp.orientation)
    report = mc.check_theta_wellformed(three_lunes, overrides={"1/o": bad})
    assert not report.passed


def test_shared_support_is_informational(three_lunes):
    report = mc.check_theta_wellformed(scene("random_3"))
    assert report.passed
    assert any(v.rule_id == "theta.shared-support" for v in report.violations)
