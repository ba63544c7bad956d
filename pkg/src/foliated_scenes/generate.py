"""Seeded random scenes built by local moves on small base scenes.

Every move preserves the hypotheses checked by the validators:
* ``insert_saddle_pair`` drops a transversal saddle and a repeller into a face
  (one face becomes three);
* ``insert_tangential`` splits a skeleton edge by an angle repeller and an
  angle tangential saddle, adding a transversal saddle on one side (the two
  adjacent faces become two and four).

Eigenvalue magnitudes are redrawn until the scene has no resonant chain.
"""

from __future__ import annotations

import copy
import random
from fractions import Fraction

from . import catalog
from .builder import direction as d
from .builder import edge, ev, face, point
from .core_model import build_scene, reverse_document

MAX_POINTS = 12
BASES = ("hemispheres", "lunes", "corner_transitions", "three_lunes")


def _base(name: str) -> dict:
    return {
        "hemispheres": catalog.hemispheres,
        "lunes": catalog.lunes,
        "corner_transitions": catalog.corner_transitions,
        "three_lunes": catalog.three_lunes,
    }[name]()


class _Ids:
    def __init__(self, doc: dict):
        self.used = {x["id"] for key in ("points", "edges", "faces") for x in doc[key]}

    def fresh(self, stem: str) -> str:
        k = 1
        while f"{stem}{k}" in self.used:
            k += 1
        self.used.add(f"{stem}{k}")
        return f"{stem}{k}"


def _points(doc: dict) -> dict:
    return {p["id"]: p for p in doc["points"]}


def _dir_in(pt: dict, comp: str) -> str:
    """Some direction of ``pt`` tangent to ``comp``; prefers one proper to it."""
    own = [x["id"] for x in pt["directions"] if x["containment"] == [comp]]
    if own:
        return own[0]
    return next(x["id"] for x in pt["directions"] if x["containment"] != "transversal" and comp in x["containment"])


def insert_saddle_pair(doc: dict, rng: random.Random, ids: _Ids) -> bool:
    faces = [f for f in doc["faces"] if f["boundary_paths"] != "exceptional-two-vertex-face"]
    if not faces:
        return False
    f = rng.choice(faces)
    comp, a, w = f["component"], f["alpha_vertex"], f["omega_vertex"]
    pts = _points(doc)
    s, r = ids.fresh("s"), ids.fresh("r")
    w1_stable = rng.random() < 0.5
    doc["points"] += [
        point(s, [comp], [d("u", -1, [comp]), d("v", 1, [comp]), d("n", 1 if w1_stable else -1, "transversal")]),
        point(r, [comp], [d("u", 1, [comp]), d("v", 2, [comp]), d("n", rng.choice([1, -1]), "transversal")]),
    ]
    e_as, e_rs, e_l, e_r = (ids.fresh("e") for _ in range(4))
    stable_sides = (["+"], ["-"]) if w1_stable else (None, None)
    unstable_sides = (["+"], ["-"]) if not w1_stable else (None, None)
    doc["edges"] += [
        edge(e_as, a, s, "trace", [comp], _dir_in(pts[a], comp), "u", None, stable_sides[0]),
        edge(e_rs, r, s, "trace", [comp], "u", "u", None, stable_sides[1]),
        edge(e_l, s, w, "trace", [comp], "v", _dir_in(pts[w], comp), unstable_sides[0]),
        edge(e_r, s, w, "trace", [comp], "v", _dir_in(pts[w], comp), unstable_sides[1]),
    ]
    p1, p2 = f["boundary_paths"]
    doc["faces"].remove(f)
    doc["faces"] += [
        face(ids.fresh("G"), comp, a, w, [p1, [e_as, e_l]]),
        face(ids.fresh("G"), comp, a, w, [p2, [e_as, e_r]]),
        face(ids.fresh("G"), comp, r, w, [[e_rs, e_l], [e_rs, e_r]]),
    ]
    return True


def _face_with(doc: dict, comp: str, eid: str):
    for f in doc["faces"]:
        if f["component"] != comp or isinstance(f["boundary_paths"], str):
            continue
        for k, path in enumerate(f["boundary_paths"]):
            if eid in path:
                return f, k
    return None


def insert_tangential(doc: dict, rng: random.Random, ids: _Ids) -> bool:
    cands = [e for e in doc["edges"] if e["kind"] == "skeleton"]
    rng.shuffle(cands)
    for e in cands:
        ca, cb = e["components"]
        if rng.random() < 0.5:
            ca, cb = cb, ca
        fa, fb = _face_with(doc, ca, e["id"]), _face_with(doc, cb, e["id"])
        if fa and fb:
            break
    else:
        return False
    (ga, ka), (gb, kb) = fa, fb
    x, y = e["alpha"], e["omega"]
    t, r, s = ids.fresh("t"), ids.fresh("r"), ids.fresh("s")
    doc["points"] += [
        point(t, sorted([ca, cb]), [d("t", -1, sorted([ca, cb])), d("a", -2, [ca]), d("b", 1, [cb])]),
        point(r, sorted([ca, cb]), [d("t", 1, sorted([ca, cb])), d("a", 2, [ca]), d("b", 3, [cb])]),
    ]
    w1_stable = rng.random() < 0.5
    doc["points"].append(
        point(s, [ca], [d("u", -1, [ca]), d("v", 1, [ca]), d("n", 1 if w1_stable else -1, "transversal")])
    )
    pts = _points(doc)
    xt, rt, ry = ids.fresh("e"), ids.fresh("e"), ids.fresh("e")
    tb, rs_a, rs_r, st, sa = (ids.fresh("e") for _ in range(5))
    ra, aa = ga["alpha_vertex"], ga["omega_vertex"]
    bw = gb["omega_vertex"]
    sides_in = (["+"], ["-"]) if w1_stable else (None, None)
    sides_out = (["+"], ["-"]) if not w1_stable else (None, None)
    comps = sorted([ca, cb])
    doc["edges"].remove(e)
    doc["edges"] += [
        edge(xt, x, t, "skeleton", comps, e["alpha_direction"], "t", e.get("side_at_alpha")),
        edge(rt, r, t, "skeleton", comps, "t", "t"),
        edge(ry, r, y, "skeleton", comps, "t", e["omega_direction"], None, e.get("side_at_omega")),
        edge(tb, t, bw, "trace", [cb], "b", _dir_in(pts[bw], cb)),
        edge(rs_a, ra, s, "trace", [ca], _dir_in(pts[ra], ca), "u", None, sides_in[0]),
        edge(rs_r, r, s, "trace", [ca], "a", "u", None, sides_in[1]),
        edge(st, s, t, "trace", [ca], "v", "a", sides_out[0]),
        edge(sa, s, aa, "trace", [ca], "v", _dir_in(pts[aa], ca), sides_out[1]),
    ]

    def split(path):
        i = path.index(e["id"])
        return path[:i], path[i + 1 :]

    pb, qb = gb["boundary_paths"][kb], gb["boundary_paths"][1 - kb]
    pre_b, post_b = split(pb)
    doc["faces"].remove(gb)
    doc["faces"] += [
        face(ids.fresh("G"), cb, gb["alpha_vertex"], bw, [pre_b + [xt, tb], qb]),
        face(ids.fresh("G"), cb, r, bw, [[rt, tb], [ry] + post_b]),
    ]
    pa, qa = ga["boundary_paths"][ka], ga["boundary_paths"][1 - ka]
    pre_a, post_a = split(pa)
    doc["faces"].remove(ga)
    doc["faces"] += [
        face(ids.fresh("G"), ca, ra, t, [pre_a + [xt], [rs_a, st]]),
        face(ids.fresh("G"), ca, r, t, [[rt], [rs_r, st]]),
        face(ids.fresh("G"), ca, r, aa, [[ry] + post_a, [rs_r, sa]]),
        face(ids.fresh("G"), ca, ra, aa, [[rs_a, sa], qa]),
    ]
    return True


def _random_magnitude(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 4))


def redraw_eigenvalues(doc: dict, rng: random.Random) -> None:
    for p in doc["points"]:
        for x in p["directions"]:
            e = x["eigenvalue"]
            if "num" in e:
                sign = 1 if Fraction(e["num"], e["den"]) > 0 else -1
                x["eigenvalue"] = ev(sign * _random_magnitude(rng))


def random_scene(seed: int, moves: int | None = None, base: str | None = None) -> dict:
    """A valid, non-resonant scene document drawn from ``seed``."""
    from .mark_calculus import find_resonances

    rng = random.Random(seed)
    doc = copy.deepcopy(_base(base or rng.choice(BASES)))
    doc.pop("injections", None)
    ids = _Ids(doc)
    budget = rng.randint(0, 3) if moves is None else moves
    for _ in range(budget):
        room = MAX_POINTS - len(doc["points"])
        options = [m for m, cost in ((insert_saddle_pair, 2), (insert_tangential, 3)) if cost <= room]
        if not options:
            break
        rng.choice(options)(doc, rng, ids)
    if rng.random() < 0.5:
        doc = reverse_document(doc)
    for _ in range(200):
        redraw_eigenvalues(doc, rng)
        for p in doc["points"]:
            p.pop("class", None)
            p.pop("dim_w", None)
        if not find_resonances(build_scene(doc)):
            break
    else:
        raise RuntimeError(f"seed {seed}: could not draw non-resonant eigenvalues")
    doc["name"] = f"random-{seed}"
    doc["description"] = f"Random scene from seed {seed}."
    return doc
