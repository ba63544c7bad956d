"""Symbolic distinguished fattenings of a scene graph.

A fattening assigns a chimney to every s-component and a flow-box tube to
every edge. Everything here is combinatorial bookkeeping: doors, jambs,
handrails and bases are named records, and the checks verify that the names
fit together the way the geometric objects would.

Naming scheme
    unfree door   ``door:{nu}:{edge}``
    free door     ``free:{nu}:{face}`` or ``free:{nu}:saddle``
    jamb          ``jamb:{nu}:{face}:{k}``, ``jamb:{nu}:saddle:{edge}``, ``fixed-jamb:{nu}:{edge}``
    base          ``base:{point}:{edge}`` (shared by the paired W2 doors of a transversal saddle)
    handrail      ``h:{door}``
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from . import graph_analysis as ga
from . import mark_calculus as mc
from .core_model import FoliatedScene, s_component_id
from .errors import GoodSaturationsRequired, NotDistinguished, SceneError, ValidationFailed
from .validators import ERROR, INFO, ValidationReport, Violation, validate_all

FENCE, LID = "fence", "lid"
IN, OUT = "in", "out"


def swap(t: str) -> str:
    """The type of the same point for the time-reversed field."""
    a, b = t.split("-")
    return f"{b}-{a}"


# ---------------------------------------------------------------- records


@dataclass(frozen=True)
class Jamb:
    id: str
    fixed: bool

    def as_dict(self) -> dict:
        return {"id": self.id, "fixed": self.fixed}


@dataclass(frozen=True)
class Door:
    id: str
    chimney: str
    location: str  # fence | lid
    freedom: str  # free | unfree
    direction: str  # in | out
    association: str  # edge id, face id, or the saddle point id
    jambs: tuple[Jamb, ...] = ()
    base: str | None = None
    center: str | None = None

    @property
    def handrail(self) -> str:
        return f"h:{self.id}"

    @property
    def is_free(self) -> bool:
        return self.freedom == "free"

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "chimney": self.chimney,
            "location": self.location,
            "freedom": self.freedom,
            "direction": self.direction,
            "association": self.association,
            "jambs": [j.as_dict() for j in self.jambs],
            "handrail": self.handrail,
            "base": self.base,
            "center": self.center,
        }


@dataclass(frozen=True)
class Chimney:
    s_component: str
    point: str
    fence_topology: str
    doorjambs: tuple[str, ...]
    lid: bool
    in_part: tuple[str, ...]
    out_part: tuple[str, ...]

    def side_of(self, part: str) -> str:
        return IN if part in self.in_part else OUT

    def as_dict(self) -> dict:
        return {
            "s_component": self.s_component,
            "point": self.point,
            "fence_topology": self.fence_topology,
            "doorjambs": list(self.doorjambs),
            "lid": self.lid,
            "in_part": list(self.in_part),
            "out_part": list(self.out_part),
        }


@dataclass(frozen=True)
class Tube:
    edge: str
    out_doors: tuple[str, ...]
    in_doors: tuple[str, ...]

    @property
    def equal_base(self) -> bool:
        return len(self.out_doors) == 2 or len(self.in_doors) == 2

    def as_dict(self) -> dict:
        return {
            "edge": self.edge,
            "out_door": list(self.out_doors),
            "in_door": list(self.in_doors),
            "equal_base": self.equal_base,
        }


@dataclass
class FatteningModel:
    scene: FoliatedScene
    chimneys: dict[str, Chimney]
    tubes: dict[str, Tube]
    doors: dict[str, Door]
    construction_order: list[dict]
    problems: list[Violation] = field(default_factory=list)

    @property
    def predistinguished(self) -> bool:
        return not any(v.rule_id.startswith(("tube.", "door.")) for v in self.problems)

    @property
    def distinguished(self) -> bool:
        return not self.problems

    def doors_at(self, nu: str) -> list[Door]:
        return [d for d in self.doors.values() if d.chimney == nu]

    def unfree(self, nu: str, edge: str) -> Door:
        return self.doors[f"door:{nu}:{edge}"]

    def free_doors(self) -> list[Door]:
        return sorted((d for d in self.doors.values() if d.is_free), key=lambda d: d.id)

    def as_dict(self) -> dict:
        return {
            "scene": self.scene.name,
            "predistinguished": self.predistinguished,
            "distinguished": self.distinguished,
            "chimneys": {k: c.as_dict() for k, c in sorted(self.chimneys.items())},
            "tubes": {k: t.as_dict() for k, t in sorted(self.tubes.items())},
            "doors": {k: d.as_dict() for k, d in sorted(self.doors.items())},
            "construction_order": self.construction_order,
            "problems": [v.as_dict() for v in self.problems],
        }


# ---------------------------------------------------------------- construction


def _chimney(scene: FoliatedScene, nu_id: str) -> Chimney:
    nu = scene.s_component(nu_id)
    vc = scene.vertex_class(nu.point)
    layout = ga.fence_layout(scene, nu_id)
    if vc.is_node and not vc.is_3d_saddle:
        attractor = bool(vc.w_stable)
        inner, outer = ((FENCE, LID), ()) if attractor else ((), (FENCE, LID))
    else:
        fence_inner = bool(vc.w2_stable)
        inner, outer = ((FENCE,), (LID,)) if fence_inner else ((LID,), (FENCE,))
    jambs = (f"fj:{nu_id}:1", f"fj:{nu_id}:2") if layout.topology == "disc" else ()
    return Chimney(nu_id, nu.point, layout.topology, jambs, True, inner, outer)


def _face_doors(scene: FoliatedScene, problems: list[Violation]) -> dict[str, list[tuple[str, str, str, list]]]:
    """Free doors grouped by s-component: (door id, direction, face, [(jamb id, edge)])."""
    out: dict[str, list] = defaultdict(list)
    for f in scene.faces:
        try:
            a_nu, w_nu = ga.face_limits(scene, f.id)
        except SceneError as exc:
            problems.append(Violation("door.face-limits", (f.id,), exc.message))
            continue
        for nu, direction, end in ((a_nu, OUT, 0), (w_nu, IN, -1)):
            jambs = []
            if not f.exceptional:
                for k, path in enumerate(f.boundary_paths, start=1):
                    if path:
                        jambs.append((f"jamb:{nu}:{f.id}:{k}", path[end]))
            out[nu].append((f"free:{nu}:{f.id}", direction, f.id, jambs))
    return out


def build_distinguished(scene: FoliatedScene) -> FatteningModel:
    """Chimneys, tubes and doors assembled over the length filtration."""
    report = validate_all(scene)
    if not report.passed:
        raise ValidationFailed(
            f"scene {scene.name!r} fails {sorted(report.rules())}", entities=tuple(sorted(report.rules()))
        )
    problems: list[Violation] = []
    chimneys: dict[str, Chimney] = {}
    doors: dict[str, Door] = {}
    tubes: dict[str, Tube] = {}
    order: list[dict] = []

    face_doors = _face_doors(scene, problems)
    layers = ga.filtration(scene)
    placed: set[str] = set()
    for j, layer in enumerate(layers):
        new_nus = [nu.id for nu in scene.s_components if nu.point in layer.vertices and nu.id not in chimneys]
        for nu in new_nus:
            chimneys[nu] = _chimney(scene, nu)
            placed.add(scene.s_component(nu).point)
            for d in _doors_for(scene, chimneys[nu], face_doors.get(nu, []), problems):
                doors[d.id] = d
        new_edges = [
            e.id for e in scene.edges if e.id not in tubes and e.alpha in placed and e.omega in placed
        ]
        for eid in new_edges:
            tubes[eid] = _tube(scene, eid, doors, problems)
        order.append({"layer": j, "s_components": new_nus, "edges": new_edges})

    model = FatteningModel(scene, chimneys, tubes, doors, order, problems)
    problems.extend(_distinguished_problems(model))
    model.problems = sorted(set(problems))
    return model


def _doors_for(scene: FoliatedScene, ch: Chimney, free_specs: list, problems: list[Violation]) -> list[Door]:
    nu, p = ch.s_component, ch.point
    vc = scene.vertex_class(p)
    layout = ga.fence_layout(scene, nu)

    # free doors first: their jambs name the unfixed jambs of the unfree doors
    free_specs = list(free_specs)
    if vc.is_transversal:
        side = OUT if not vc.w2_stable else IN
        ends = layout.end_edges
        free_specs.append((f"free:{nu}:saddle", side, p, [(f"jamb:{nu}:saddle:{e}", e) for e in ends]))
    claims: dict[str, list[str]] = defaultdict(list)
    out: list[Door] = []
    for did, direction, assoc, jambs in free_specs:
        for jid, eid in jambs:
            claims[eid].append(jid)
        out.append(Door(did, nu, FENCE, "free", direction, assoc, tuple(Jamb(j, False) for j in sorted(jid for jid, _ in jambs))))

    if len(out) != layout.expected_gaps:
        problems.append(
            Violation(
                "door.gap-count",
                (nu,),
                f"fence at {nu} leaves {layout.expected_gaps} gaps but {len(out)} free doors are associated to it",
            )
        )

    for eid in sorted(set(scene.edges_meeting(nu))):
        e = scene.edge(eid)
        direction = OUT if e.alpha == p else IN
        on_lid = eid in layout.lid_edges
        if on_lid:
            jambs: tuple[Jamb, ...] = ()
            want = 0
        elif eid in layout.end_edges:
            want = 1
            jambs = (Jamb(f"fixed-jamb:{nu}:{eid}", True),)
        else:
            want = 2
            jambs = ()
        got = sorted(claims.pop(eid, []))
        if len(got) != want:
            problems.append(
                Violation(
                    "door.jamb-slots",
                    (nu, eid),
                    f"door of {eid} at {nu} has {want} unfixed jamb slot(s) but {len(got)} free-door jamb(s) claim it",
                )
            )
        jambs += tuple(Jamb(j, False) for j in got)
        paired = vc.is_transversal and e.direction_at(p) in vc.w2
        base = f"base:{p}:{eid}" if paired else f"base:{nu}:{eid}"
        out.append(
            Door(f"door:{nu}:{eid}", nu, LID if on_lid else FENCE, "unfree", direction, eid, jambs, base, e.other_end(p))
        )
    for eid, jids in claims.items():
        problems.append(Violation("door.jamb-slots", (nu, eid), f"jambs {jids} lean on {eid}, which has no door at {nu}"))
    return out


def _tube(scene: FoliatedScene, eid: str, doors: dict[str, Door], problems: list[Violation]) -> Tube:
    e = scene.edge(eid)
    ends = []
    for end, point, signs in (("out", e.alpha, e.side_at_alpha), ("in", e.omega, e.side_at_omega)):
        ids = tuple(f"door:{s_component_id(point, s)}:{eid}" for s in sorted(signs))
        missing = [d for d in ids if d not in doors]
        if not ids or missing:
            problems.append(Violation("tube.endpoint", (eid, point), f"tube of {eid} has no {end}-door at {point}"))
        ends.append(tuple(d for d in ids if d in doors))
    return Tube(eid, ends[0], ends[1])


def _distinguished_problems(model: FatteningModel) -> list[Violation]:
    scene = model.scene
    out = []
    # (a) tubes are disjoint: no door serves two tubes
    owner: dict[str, str] = {}
    for t in model.tubes.values():
        for d in t.out_doors + t.in_doors:
            if d in owner:
                out.append(Violation("tube.shared-door", (d, owner[d], t.edge), f"door {d} ends two tubes"))
            owner[d] = t.edge
    for d in model.doors.values():
        ch = model.chimneys[d.chimney]
        if d.is_free:
            continue
        if d.id not in owner:
            out.append(Violation("tube.orphan-door", (d.id,), f"unfree door {d.id} ends no tube"))
        # (b) doors sit on the part of the chimney boundary their direction demands
        if ch.side_of(d.location) != d.direction:
            out.append(
                Violation(
                    "door.side",
                    (d.id,),
                    f"{d.direction}-door {d.id} lies on the {d.location}, which is {ch.side_of(d.location)}er",
                )
            )
    for d in model.free_doors():
        ch = model.chimneys[d.chimney]
        if ch.side_of(FENCE) != d.direction:
            out.append(Violation("door.side", (d.id,), f"free {d.direction}-door {d.id} on a {ch.side_of(FENCE)}er fence"))
    # (c) equal bases at transversal saddles
    for p in scene.points:
        vc = scene.vertex_class(p.id)
        if not vc.is_transversal:
            continue
        for eid in scene.edges_at(p.id):
            e = scene.edge(eid)
            if e.direction_at(p.id) not in vc.w2:
                continue
            pair = [model.doors.get(f"door:{s_component_id(p.id, s)}:{eid}") for s in ("+", "-")]
            if None in pair or pair[0].base != pair[1].base:
                out.append(Violation("base.unpaired", (p.id, eid), f"doors of {eid} at {p.id} do not share a base"))
    # (d) fence topology
    for ch in model.chimneys.values():
        want = "cylinder" if scene.vertex_class(ch.point).is_node else "disc"
        if ch.fence_topology != want:
            out.append(Violation("chimney.topology", (ch.s_component,), f"fence at {ch.s_component} should be a {want}"))
    return out


# ---------------------------------------------------------------- free doors


def _require(model: FatteningModel) -> None:
    if not model.distinguished:
        raise NotDistinguished(
            f"fattening of {model.scene.name!r} is not distinguished: {sorted({v.rule_id for v in model.problems})}",
            entities=tuple(sorted({e for v in model.problems for e in v.entities})),
        )


def enumerate_free_doors(model: FatteningModel) -> list[Door]:
    _require(model)
    return model.free_doors()


# ---------------------------------------------------------------- frontier point types


def _door_types_saddle(direction: str) -> dict[str, str]:
    t = {"interior+base": "e-i", "handrail": "e-t", "jambs+base-points": "t-i", "corners": "t-t"}
    return t if direction == IN else {k: swap(v) for k, v in t.items()}


def _door_types_node(direction: str) -> dict[str, str]:
    t = {"door-minus-jambs": "e-i", "jambs": "t-i"}
    return t if direction == IN else {k: swap(v) for k, v in t.items()}


@dataclass(frozen=True)
class Typing:
    target: str  # door or lid id
    chimney: str
    rule: str  # "(i)", "(ii)" or "(iii)"
    types: dict[str, str]

    def as_dict(self) -> dict:
        return {"target": self.target, "chimney": self.chimney, "rule": self.rule, "types": dict(self.types)}


def classify_fattening_frontier(model: FatteningModel) -> list[Typing]:
    """Point types on every free door and every node lid."""
    _require(model)
    out = []
    for d in model.free_doors():
        vc = model.scene.vertex_class(model.chimneys[d.chimney].point)
        if vc.is_saddle:
            out.append(Typing(d.id, d.chimney, "(i)", _door_types_saddle(d.direction)))
        else:
            out.append(Typing(d.id, d.chimney, "(iii)", _door_types_node(d.direction)))
    for nu, ch in sorted(model.chimneys.items()):
        vc = model.scene.vertex_class(ch.point)
        if not vc.is_node:
            continue
        side = ch.side_of(LID)
        if vc.is_3d_saddle:
            t = {"interior": "e-i", "boundary": "e-t"}
            rule = "(ii)"
        else:
            t = {"interior": "e-i"}
            rule = "(iii)"
        if side == OUT:
            t = {k: swap(v) for k, v in t.items()}
        out.append(Typing(f"lid:{nu}", nu, rule, t))
    return out


# ---------------------------------------------------------------- stain itineraries


@dataclass(frozen=True)
class Stop:
    chimney: str
    door: str
    slot: str

    def as_dict(self) -> dict:
        return {"chimney": self.chimney, "door": self.door, "slot": self.slot}


@dataclass(frozen=True)
class StainItinerary:
    generator: str
    kind: str  # fixed-mark | free-door-jamb
    origin: str  # saddle point for fixed marks, s-component for jambs
    stops: tuple[Stop, ...]
    terminal: str
    face: str | None = None
    trichotomy: str | None = None  # outward continuation of a jamb on an outer fence

    def as_dict(self) -> dict:
        return {
            "generator": self.generator,
            "kind": self.kind,
            "origin": self.origin,
            "stops": [s.as_dict() for s in self.stops],
            "terminal": self.terminal,
            "face": self.face,
            "trichotomy": self.trichotomy,
        }


def _arrivals(scene: FoliatedScene, edges, backward: bool) -> list[tuple[str, str]]:
    """(s-component, edge) entered along a path, in the path's orientation."""
    out = []
    for eid in edges:
        e = scene.edge(eid)
        v = e.alpha if backward else e.omega
        for sign in sorted(e.sides_at(v)):
            out.append((s_component_id(v, sign), eid))
    return out


def _continuation_label(model: FatteningModel, d: Door, jamb: Jamb) -> str:
    """Where the outward saturation of a jamb lands in the next chimney."""
    eid = jamb.id.rsplit(":", 1)[-1] if ":saddle:" in jamb.id else None
    if eid is None:
        face = model.scene.face(d.association)
        k = int(jamb.id.rsplit(":", 1)[-1])
        path = face.boundary_paths[k - 1]
        eid = path[0] if d.direction == OUT else path[-1]
    e = model.scene.edge(eid)
    far = e.omega if d.direction == OUT else e.alpha
    signs = e.side_at_omega if d.direction == OUT else e.side_at_alpha
    for sign in signs:
        door = model.doors.get(f"door:{s_component_id(far, sign)}:{eid}")
        if door is None:
            continue
        if jamb.id in {j.id for j in door.jambs} or any(
            not j.fixed and d.association in j.id.split(":") for j in door.jambs
        ):
            return "unfixed-doorjamb"
        if door.location == LID or not door.jambs:
            return "handrail"
    return "well-positioned"


def stain_itineraries(model: FatteningModel) -> list[StainItinerary]:
    scene = model.scene
    slots: dict[str, int] = defaultdict(int)

    def stops_for(generator: str, arrivals) -> tuple[Stop, ...]:
        out = []
        for nu, eid in arrivals:
            did = f"door:{nu}:{eid}"
            slots[did] += 1
            out.append(Stop(nu, did, f"w{slots[did]}"))
        return tuple(out)

    items: list[StainItinerary] = []
    for p in scene.points:
        vc = scene.vertex_class(p.id)
        if not vc.is_transversal:
            continue
        pp = mc.pi_paths(scene, p.id)
        backward = pp.orientation == "backward"
        for path, terminal in zip(pp.paths, pp.terminals):
            gen = f"fixed:{p.id}:{path[0]}"
            items.append(
                StainItinerary(gen, "fixed-mark", p.id, stops_for(gen, _arrivals(scene, path, backward)), terminal)
            )
    for d in model.free_doors():
        ch = model.chimneys[d.chimney]
        vc = scene.vertex_class(ch.point)
        if vc.is_node:
            continue
        tp = mc.theta_path(scene, d.chimney)
        arrivals = _arrivals(scene, tp.edges, tp.orientation == "backward")
        outer = ch.side_of(FENCE) == OUT
        for j in d.jambs:
            items.append(
                StainItinerary(
                    j.id,
                    "free-door-jamb",
                    d.chimney,
                    stops_for(j.id, arrivals),
                    tp.terminal,
                    None if d.association == ch.point else d.association,
                    _continuation_label(model, d, j) if outer else None,
                )
            )
    return _inject(model, items)


def _inject(model: FatteningModel, items: list[StainItinerary]) -> list[StainItinerary]:
    """Apply the scene's test injections (deliberate conflicts)."""
    by_gen = {it.generator: it for it in items}
    for inj in model.scene.injections:
        gens = list(inj.get("generators", ()))
        if any(g not in by_gen for g in gens):
            continue
        if inj.get("kind") == "shared-jamb" and len(gens) == 2:
            a, b = by_gen[gens[0]], by_gen[gens[1]]
            if a.stops and b.stops:
                by_gen[b.generator] = _replace_stops(b, b.stops[:-1] + (a.stops[-1],))
        elif inj.get("kind") == "free-door-visit" and gens:
            a = by_gen[gens[0]]
            foreign = [d for d in model.free_doors() if model.chimneys[d.chimney].point != a.origin]
            if foreign:
                d = foreign[0]
                by_gen[a.generator] = _replace_stops(a, a.stops + (Stop(d.chimney, d.id, "injected"),))
    return [by_gen[it.generator] for it in items]


def _replace_stops(it: StainItinerary, stops) -> StainItinerary:
    return StainItinerary(it.generator, it.kind, it.origin, tuple(stops), it.terminal, it.face, it.trichotomy)


# ---------------------------------------------------------------- good saturations


def sanctioned_pairs(model: FatteningModel) -> list[tuple[str, str]]:
    """Out-door and in-door of the same face: the one interaction that is allowed."""
    out = []
    for f in model.scene.faces:
        doors = [d for d in model.free_doors() if d.association == f.id]
        outs = [d.id for d in doors if d.direction == OUT]
        ins = [d.id for d in doors if d.direction == IN]
        if len(outs) == 1 and len(ins) == 1:
            out.append((outs[0], ins[0]))
    return out


def check_good_saturations(model: FatteningModel, itineraries: list[StainItinerary] | None = None) -> ValidationReport:
    """Slot-level consequences of good saturations."""
    _require(model)
    its = stain_itineraries(model) if itineraries is None else itineraries
    out: list[Violation] = []
    for it in its:
        seen = [s.chimney for s in it.stops]
        if len(seen) != len(set(seen)):
            out.append(Violation("itinerary.revisit", (it.generator,), f"{it.generator} enters a chimney twice"))
        if not model.scene.vertex_class(it.terminal).is_node:
            out.append(Violation("itinerary.terminal", (it.generator,), f"{it.generator} stops at a saddle"))
        for s in it.stops:
            door = model.doors.get(s.door)
            if door is None:
                out.append(Violation("itinerary.door", (it.generator, s.door), f"{it.generator} visits unknown {s.door}"))
            elif door.is_free and it.kind == "fixed-mark" and model.chimneys[door.chimney].point != it.origin:
                out.append(
                    Violation(
                        "gsfmfd",
                        (it.generator, door.id),
                        f"(gsfmfd) fixed stain {it.generator} reaches free door {door.id} of a foreign s-component",
                    )
                )

    occupied: dict[tuple, list[StainItinerary]] = defaultdict(list)
    for it in its:
        for s in it.stops:
            occupied[(s.chimney, s.door, s.slot)].append(it)
    same_face = set(sanctioned_pairs(model))
    for key, users in sorted(occupied.items()):
        gens = sorted({u.generator for u in users})
        if len(gens) < 2:
            continue
        kinds = {u.kind for u in users}
        if kinds == {"fixed-mark"}:
            out.append(
                Violation("gsfm", tuple(gens), f"(gsfm) fixed stains {gens} share slot {key[2]} of {key[1]}")
            )
        elif kinds == {"free-door-jamb"}:
            faces = {u.face for u in users}
            if len(faces) == 1 and None not in faces:
                continue
            out.append(
                Violation("gsfd", tuple(gens), f"(gsfd) free-door stains {gens} share slot {key[2]} of {key[1]}")
            )
        else:
            out.append(
                Violation("gsfmfd", tuple(gens), f"(gsfmfd) fixed and free-door stains {gens} share {key[1]}")
            )
    for a, b in same_face:
        out.append(Violation("gsfd.sanctioned", (a, b), f"{a} and {b} close the same face", INFO))
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------- extended support


@dataclass(frozen=True)
class Segment:
    id: str
    kind: str  # region | arc | point
    type: str
    meets_base: bool = False

    def as_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "type": self.type, "meets_base": self.meets_base}


@dataclass(frozen=True)
class Disc:
    point: str
    kind: str  # lid | free-door-pair
    dim_w: int
    w_stable: bool
    doors: tuple[str, ...]
    segments: tuple[Segment, ...]

    def of_type(self, t: str) -> list[Segment]:
        return [s for s in self.segments if s.type == t]

    @property
    def tt_points(self) -> list[Segment]:
        return [s for s in self.segments if s.kind == "point" and s.type == "t-t"]

    def as_dict(self) -> dict:
        return {
            "point": self.point,
            "kind": self.kind,
            "dim_w": self.dim_w,
            "w_stable": self.w_stable,
            "doors": list(self.doors),
            "segments": [s.as_dict() for s in self.segments],
        }


@dataclass(frozen=True)
class FacePairing:
    face: str
    out_door: str
    in_door: str
    jamb_map: dict[str, str]
    handrail_map: dict[str, str]

    def as_dict(self) -> dict:
        return {
            "face": self.face,
            "out_door": self.out_door,
            "in_door": self.in_door,
            "jamb_map": dict(sorted(self.jamb_map.items())),
            "handrail_map": dict(self.handrail_map),
        }


@dataclass(frozen=True)
class FrontierReport:
    pairings: tuple[FacePairing, ...]
    discs: tuple[Disc, ...]
    summary: dict

    def as_dict(self) -> dict:
        return {
            "pairings": [p.as_dict() for p in self.pairings],
            "discs": [d.as_dict() for d in self.discs],
            "summary": dict(self.summary),
        }


def _pairing(model: FatteningModel, face_id: str) -> FacePairing:
    doors = [d for d in model.free_doors() if d.association == face_id]
    (o,) = [d for d in doors if d.direction == OUT]
    (i,) = [d for d in doors if d.direction == IN]
    jmap = {}
    for j in o.jambs:
        k = j.id.rsplit(":", 1)[-1]
        jmap[j.id] = f"jamb:{i.chimney}:{face_id}:{k}"
    return FacePairing(face_id, o.id, i.id, jmap, {o.handrail: i.handrail})


def _typed(segs: list[Segment], stable: bool) -> tuple[Segment, ...]:
    if stable:
        return tuple(segs)
    return tuple(Segment(s.id, s.kind, swap(s.type), s.meets_base) for s in segs)


def _node_disc(model: FatteningModel, nu: str) -> Disc:
    p = model.chimneys[nu].point
    vc = model.scene.vertex_class(p)
    lid = f"lid:{nu}"
    if vc.dim_w == 1:
        segs = [
            Segment(f"{lid}:interior", "region", "e-i"),
            Segment(f"{lid}:w-point", "point", "e-i"),
            Segment(f"{lid}:boundary", "arc", "e-t"),
        ]
    else:
        segs = [Segment(f"{lid}:interior", "region", "e-i"), Segment(f"{lid}:boundary", "arc", "e-i")]
    return Disc(p, "lid", vc.dim_w, bool(vc.w_stable), (lid,), _typed(segs, bool(vc.w_stable)))


def _saddle_disc(model: FatteningModel, p: str) -> Disc:
    scene = model.scene
    vc = scene.vertex_class(p)
    plus, minus = f"free:{p}/+:saddle", f"free:{p}/-:saddle"
    w2 = sorted(e for e in scene.edges_at(p) if scene.edge(e).direction_at(p) in vc.w2)
    base = f"I:{p}"
    segs = [
        Segment(f"{base}:interior", "region", "e-i"),
        Segment(base, "arc", "e-i", True),
        Segment(f"h:{plus}", "arc", "e-t"),
        Segment(f"h:{minus}", "arc", "e-t"),
    ]
    for i, eid in enumerate(w2, start=1):
        segs.append(Segment(f"L{i}:{p}", "arc", "t-i", True))
        for nu in (f"{p}/+", f"{p}/-"):
            segs.append(Segment(f"hJ:{nu}:{eid}", "point", "t-t"))
    return Disc(p, "free-door-pair", vc.dim_w, bool(vc.w_stable), (plus, minus), _typed(segs, bool(vc.w_stable)))


def extend_support(model: FatteningModel, report: ValidationReport | None = None) -> FrontierReport:
    """Close each face's free doors against each other and type what is left."""
    _require(model)
    report = check_good_saturations(model) if report is None else report
    if not report.passed:
        raise GoodSaturationsRequired(
            f"good saturations fail: {sorted(report.rules())}", entities=tuple(sorted(report.rules()))
        )
    scene = model.scene
    pairings = tuple(_pairing(model, f.id) for f in scene.faces)
    discs = []
    for nu, ch in sorted(model.chimneys.items()):
        if scene.vertex_class(ch.point).is_node:
            discs.append(_node_disc(model, nu))
    for p in sorted(pt.id for pt in scene.points if scene.vertex_class(pt.id).is_transversal):
        discs.append(_saddle_disc(model, p))
    absorbed = {d for pr in pairings for d in (pr.out_door, pr.in_door)}
    remaining = [d.id for d in model.free_doors() if d.id not in absorbed]
    summary = {
        "chimneys": len(model.chimneys),
        "tubes": len(model.tubes),
        "unfree_doors": sum(1 for d in model.doors.values() if not d.is_free),
        "free_doors": len(model.free_doors()),
        "absorbed_free_doors": len(absorbed),
        "remaining_free_doors": remaining,
        "transversal_discs": len(discs),
    }
    return FrontierReport(pairings, tuple(discs), summary)


# ---------------------------------------------------------------- disjoint family


def disjoint_family_report(model: FatteningModel, itineraries: list[StainItinerary] | None = None) -> dict:
    """Pairwise slot-level disjointness of the saturations of W(p) and of the arcs L1, L2."""
    its = stain_itineraries(model) if itineraries is None else itineraries
    by_gen = {it.generator: it for it in its}
    scene = model.scene
    members: dict[str, list[str]] = {}
    for p in sorted(pt.id for pt in scene.points if scene.vertex_class(pt.id).is_transversal):
        members[f"W:{p}"] = sorted(g for g in by_gen if g.startswith(f"fixed:{p}:"))
        vc = scene.vertex_class(p)
        w2 = sorted(e for e in scene.edges_at(p) if scene.edge(e).direction_at(p) in vc.w2)
        for i, eid in enumerate(w2, start=1):
            members[f"L{i}:{p}"] = [
                g for g in (f"jamb:{p}/+:saddle:{eid}", f"jamb:{p}/-:saddle:{eid}") if g in by_gen
            ]
    stops = {m: {s for g in gens for s in by_gen[g].stops} for m, gens in members.items()}
    conflicts, sharing = [], []
    names = sorted(members)
    for a_i, a in enumerate(names):
        for b in names[a_i + 1 :]:
            shared = stops[a] & stops[b]
            if shared:
                conflicts.append({"members": [a, b], "stops": sorted(s.door + "#" + s.slot for s in shared)})
            doors = {(s.chimney, s.door) for s in stops[a]} & {(s.chimney, s.door) for s in stops[b]}
            if doors and not shared:
                sharing.append({"members": [a, b], "doors": sorted(d for _, d in doors)})
    return {
        "passed": not conflicts,
        "members": {m: g for m, g in sorted(members.items())},
        "conflicts": conflicts,
        "closure_sharing": sharing,
    }
