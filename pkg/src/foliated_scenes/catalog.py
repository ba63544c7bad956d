"""Hand-built scene documents.

The bundled JSON files under ``scenes/`` are produced from these functions
(see ``python -m foliated_scenes.catalog``); tests use the functions
directly to build parameterised variants.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

from .builder import direction as d
from .builder import document, edge, face, point

SCENES_DIR = Path(__file__).with_name("scenes")


def _angle(pid: str, c1: str, c2: str, along, in1, in2, label: str | None = None) -> dict:
    return point(
        pid,
        [c1, c2],
        [d("t", along, [c1, c2]), d(f"d{c1}", in1, [c1]), d(f"d{c2}", in2, [c2])],
        label,
    )


def _interior(pid: str, comp: str, u, v, n, label: str | None = None) -> dict:
    return point(pid, [comp], [d("u", u, [comp]), d("v", v, [comp]), d("n", n, "transversal")], label)


def hemispheres() -> dict:
    """Two hemispheres glued along an equator carrying one repeller and one attractor."""
    return document(
        "hemispheres",
        "Two hemispheres D1, D2; the equator carries an angle repeller R and an angle attractor A.",
        ["D1", "D2"],
        [
            _angle("R", "D1", "D2", 1, 2, 3, "angle repeller"),
            _angle("A", "D1", "D2", -1, -2, -3, "angle attractor"),
        ],
        [
            edge("east", "R", "A", "skeleton", ["D1", "D2"], "t", "t"),
            edge("west", "R", "A", "skeleton", ["D1", "D2"], "t", "t"),
        ],
        [face("F1", "D1", "R", "A", [["east"], ["west"]]), face("F2", "D2", "R", "A", [["east"], ["west"]])],
    )


def lunes() -> dict:
    """Three lunes between a repelling and an attracting corner pole."""
    comps = ["A", "B", "C"]
    pole = lambda pid, s, lab: point(  # noqa: E731
        pid, comps, [d("ab", s * 1, ["A", "B"]), d("bc", s * 2, ["B", "C"]), d("ca", s * 3, ["C", "A"])], lab
    )
    return document(
        "lunes",
        "Three lunes A, B, C between corner poles N (repeller) and S (attractor).",
        comps,
        [pole("N", 1, "repelling pole"), pole("S", -1, "attracting pole")],
        [
            edge("m_ab", "N", "S", "skeleton", ["A", "B"], "ab", "ab"),
            edge("m_bc", "N", "S", "skeleton", ["B", "C"], "bc", "bc"),
            edge("m_ca", "N", "S", "skeleton", ["C", "A"], "ca", "ca"),
        ],
        [
            face("FA", "A", "N", "S", [["m_ab"], ["m_ca"]]),
            face("FB", "B", "N", "S", [["m_ab"], ["m_bc"]]),
            face("FC", "C", "N", "S", [["m_bc"], ["m_ca"]]),
        ],
    )


def exceptional() -> dict:
    return document(
        "exceptional",
        "Single spherical component with one repeller and one attractor and no edges.",
        ["S"],
        [_interior("R", "S", 1, 2, 1, "repeller"), _interior("A", "S", -1, -2, -1, "attractor")],
        [],
        [face("F", "S", "R", "A", "exceptional-two-vertex-face")],
    )


def resonant_chain(q_pair: tuple = (2, 4)) -> dict:
    """Two angle saddles p, q on an equator joined by one skeleton edge.

    With the default eigenvalues the weights of p and q against D1 agree, so
    the one-edge chain p -> q is resonant; ``q_pair=(2, 5)`` breaks it.
    """
    q1, q2 = (Fraction(x) for x in q_pair)
    name = "resonant_chain" if q2 / q1 == 2 else "resonant_chain_broken"
    return document(
        name,
        "Hemispheres D1, D2; p and q are angle transversal saddles joined along the equator.",
        ["D1", "D2"],
        [
            _angle("p", "D1", "D2", 1, -1, -2, "angle saddle, W1 along the equator unstable"),
            _angle("q", "D1", "D2", -1, q1, q2, "angle saddle, W1 along the equator stable"),
            _angle("Y", "D1", "D2", 1, 1, 2, "angle repeller"),
            _angle("X", "D1", "D2", -1, -1, -2, "angle attractor"),
            _interior("r1", "D1", 1, 2, 1, "repeller in D1"),
            _interior("r2", "D2", 1, 2, -1, "repeller in D2"),
        ],
        [
            edge("pq", "p", "q", "skeleton", ["D1", "D2"], "t", "t", ["+"], ["+"]),
            edge("Yq", "Y", "q", "skeleton", ["D1", "D2"], "t", "t", None, ["-"]),
            edge("YX", "Y", "X", "skeleton", ["D1", "D2"], "t", "t"),
            edge("pX", "p", "X", "skeleton", ["D1", "D2"], "t", "t", ["-"]),
            edge("r1p", "r1", "p", "trace", ["D1"], "u", "dD1"),
            edge("r2p", "r2", "p", "trace", ["D2"], "u", "dD2"),
            edge("qX1", "q", "X", "trace", ["D1"], "dD1", "dD1"),
            edge("qX2", "q", "X", "trace", ["D2"], "dD2", "dD2"),
        ],
        [
            face("F1", "D1", "Y", "X", [["YX"], ["Yq", "qX1"]]),
            face("G1", "D1", "r1", "X", [["r1p", "pX"], ["r1p", "pq", "qX1"]]),
            face("F2", "D2", "Y", "X", [["YX"], ["Yq", "qX2"]]),
            face("G2", "D2", "r2", "X", [["r2p", "pX"], ["r2p", "pq", "qX2"]]),
        ],
    )


def morse_smale_violation() -> dict:
    return document(
        "morse_smale_violation",
        "Hemispheres with two transversal saddles s1, s2 in D1 joined by a trace edge (a saddle connection).",
        ["D1", "D2"],
        [
            _angle("Rq", "D1", "D2", 1, 2, 3, "angle repeller"),
            _angle("Aq", "D1", "D2", -1, -2, -3, "angle attractor"),
            _interior("s1", "D1", -1, 1, 2, "transversal saddle"),
            _interior("s2", "D1", -1, 2, 1, "transversal saddle"),
            _interior("a1", "D1", -1, -2, -1, "attractor"),
            _interior("r2", "D1", 1, 2, 1, "repeller"),
        ],
        [
            edge("east", "Rq", "Aq", "skeleton", ["D1", "D2"], "t", "t"),
            edge("west", "Rq", "Aq", "skeleton", ["D1", "D2"], "t", "t"),
            edge("Rs1p", "Rq", "s1", "trace", ["D1"], "dD1", "u", None, ["+"]),
            edge("Rs1m", "Rq", "s1", "trace", ["D1"], "t", "u", None, ["-"]),
            edge("s1a1", "s1", "a1", "trace", ["D1"], "v", "u"),
            edge("s1s2", "s1", "s2", "trace", ["D1"], "v", "u", None, ["+"]),
            edge("r2s2", "r2", "s2", "trace", ["D1"], "u", "u", None, ["-"]),
            edge("s2Ap", "s2", "Aq", "trace", ["D1"], "v", "dD1"),
            edge("s2Am", "s2", "Aq", "trace", ["D1"], "v", "t"),
        ],
        [
            face("top", "D1", "Rq", "a1", [["Rs1p", "s1a1"], ["Rs1m", "s1a1"]]),
            face("bottom", "D1", "r2", "Aq", [["r2s2", "s2Ap"], ["r2s2", "s2Am"]]),
            face("left", "D1", "Rq", "Aq", [["east"], ["Rs1p", "s1s2", "s2Ap"]]),
            face("right", "D1", "Rq", "Aq", [["west"], ["Rs1m", "s1s2", "s2Am"]]),
            face("south", "D2", "Rq", "Aq", [["east"], ["west"]]),
        ],
    )


def corner_transitions() -> dict:
    """Three lunes whose poles N, S are corner tangential saddles.

    The saturation of the trace mark at N runs N -> S and crosses S by the
    corner transition.  In C the saddle s1 feeds N from the angle repellers
    and s2 drains S into the angle attractors.
    """
    comps = ["A", "B", "C"]

    def corner(pid, ab, bc, ca, lab):
        return point(pid, comps, [d("ab", ab, ["A", "B"]), d("bc", bc, ["B", "C"]), d("ca", ca, ["C", "A"])], lab)

    def on_meridian(pid, c1, c2, s, lab):
        return _angle(pid, c1, c2, s * 1, s * 2, s * 3, lab)

    return document(
        "corner_transitions",
        "Lunes A, B, C with corner tangential saddles N, S and transversal saddles s1, s2 in C.",
        comps,
        [
            corner("N", 1, -1, -2, "corner saddle, W1 along the A/B meridian unstable"),
            corner("S", -1, 3, 2, "corner saddle, W1 along the A/B meridian stable"),
            on_meridian("Y1", "B", "C", 1, "angle repeller"),
            on_meridian("A1", "B", "C", -1, "angle attractor"),
            on_meridian("Y2", "C", "A", 1, "angle repeller"),
            on_meridian("A2", "C", "A", -1, "angle attractor"),
            _interior("s1", "C", -1, 2, 1, "transversal saddle"),
            _interior("s2", "C", -2, 1, -1, "transversal saddle"),
        ],
        [
            edge("NS", "N", "S", "skeleton", ["A", "B"], "ab", "ab"),
            edge("Y1N", "Y1", "N", "skeleton", ["B", "C"], "t", "bc"),
            edge("Y1A1", "Y1", "A1", "skeleton", ["B", "C"], "t", "t"),
            edge("SA1", "S", "A1", "skeleton", ["B", "C"], "bc", "t"),
            edge("Y2N", "Y2", "N", "skeleton", ["C", "A"], "t", "ca"),
            edge("Y2A2", "Y2", "A2", "skeleton", ["C", "A"], "t", "t"),
            edge("SA2", "S", "A2", "skeleton", ["C", "A"], "ca", "t"),
            edge("Y1s1", "Y1", "s1", "trace", ["C"], "dC", "u", None, ["+"]),
            edge("Y2s1", "Y2", "s1", "trace", ["C"], "dC", "u", None, ["-"]),
            edge("s1N", "s1", "N", "trace", ["C"], "v", "bc"),
            edge("s1A1", "s1", "A1", "trace", ["C"], "v", "dC"),
            edge("Ss2", "S", "s2", "trace", ["C"], "ca", "u"),
            edge("Y2s2", "Y2", "s2", "trace", ["C"], "t", "u"),
            edge("s2A2", "s2", "A2", "trace", ["C"], "v", "dC", ["+"]),
            edge("s2A1", "s2", "A1", "trace", ["C"], "v", "t", ["-"]),
        ],
        [
            face("FA", "A", "Y2", "A2", [["Y2N", "NS", "SA2"], ["Y2A2"]]),
            face("FB", "B", "Y1", "A1", [["Y1N", "NS", "SA1"], ["Y1A1"]]),
            face("C1", "C", "Y1", "N", [["Y1N"], ["Y1s1", "s1N"]]),
            face("C2", "C", "Y1", "A1", [["Y1A1"], ["Y1s1", "s1A1"]]),
            face("C3", "C", "Y2", "N", [["Y2N"], ["Y2s1", "s1N"]]),
            face("C4", "C", "Y2", "A1", [["Y2s1", "s1A1"], ["Y2s2", "s2A1"]]),
            face("C5", "C", "Y2", "A2", [["Y2A2"], ["Y2s2", "s2A2"]]),
            face("C6", "C", "S", "A2", [["SA2"], ["Ss2", "s2A2"]]),
            face("C7", "C", "S", "A1", [["SA1"], ["Ss2", "s2A1"]]),
        ],
    )


def three_lunes() -> dict:
    return json.loads((SCENES_DIR / "three_lunes.json").read_text())


def injected_conflict() -> dict:
    doc = three_lunes()
    doc["name"] = "three_lunes_injected_conflict"
    doc["description"] = "The three-lune reference scene with a forced shared jamb slot between two generators."
    doc["injections"] = [{"kind": "shared-jamb", "generators": ["fixed:3:a3", "fixed:4:c4"]}]
    return doc


BUILDERS = {
    "exceptional": exceptional,
    "resonant_chain": resonant_chain,
    "morse_smale_violation": morse_smale_violation,
    "corner_transitions": corner_transitions,
    "three_lunes_injected_conflict": injected_conflict,
}


def write_all(directory: Path = SCENES_DIR) -> list[Path]:
    from .generate import random_scene

    out = []
    docs = {name: build() for name, build in BUILDERS.items()}
    for k, seed in enumerate((6, 7, 9), start=1):
        doc = random_scene(seed)
        doc["name"] = f"random_{k}"
        docs[doc["name"]] = doc
    for name, doc in docs.items():
        path = directory / f"{name}.json"
        path.write_text(json.dumps(doc, indent=1) + "\n")
        out.append(path)
    return out


if __name__ == "__main__":
    for p in write_all(Path(sys.argv[1]) if len(sys.argv) > 1 else SCENES_DIR):
        print(p)
