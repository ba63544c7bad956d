"""Scene data model: divisor components, singular points, graph edges, faces.

A scene is parsed from a JSON document (see ``schema/scene.schema.json``),
checked structurally, indexed, and then never mutated.  Vertex classes are
always derived from the eigenvalue signs of the three invariant directions
listed at each point; a class declared in the document is only compared
against the derived one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Any, Iterable, Mapping

import jsonschema

from .errors import (
    DanglingReference,
    DuplicateId,
    InconsistentEigenvalueSigns,
    SceneError,
    SchemaViolation,
)

SCHEMA_VERSION = 1

ATTRACTOR = "D-node-attractor"
REPELLER = "D-node-repeller"
TRANSVERSAL = "transversal-saddle"
TANGENTIAL = "tangential-saddle"
VERTEX_KINDS = (ATTRACTOR, REPELLER, TRANSVERSAL, TANGENTIAL)

SKELETON = "skeleton"
TRACE = "trace"

EXCEPTIONAL_FACE = "exceptional-two-vertex-face"


def load_schema() -> dict:
    text = resources.files(__package__).joinpath("schema/scene.schema.json").read_text()
    return json.loads(text)


_VALIDATOR: jsonschema.Draft202012Validator | None = None


def _schema_validator() -> jsonschema.Draft202012Validator:
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = jsonschema.Draft202012Validator(load_schema())
    return _VALIDATOR


# ---------------------------------------------------------------- entities


@dataclass(frozen=True)
class Eigenvalue:
    """Real part of an eigenvalue: an exact rational, or only its sign."""

    value: Fraction | None = None
    marker: int | None = None

    @property
    def sign(self) -> int:
        if self.value is not None:
            return (self.value > 0) - (self.value < 0)
        return self.marker or 0

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        if self.value is not None:
            return {"num": self.value.numerator, "den": self.value.denominator}
        return {"sign": {1: "+", -1: "-", 0: "0"}[self.sign]}

    @classmethod
    def from_json(cls, raw: Mapping[str, Any]) -> Eigenvalue:
        if "num" in raw:
            return cls(value=Fraction(int(raw["num"]), int(raw["den"])))
        return cls(marker={"+": 1, "-": -1, "0": 0}[raw["sign"]])

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        return {1: "re>0", -1: "re<0", 0: "re=0"}[self.sign]


@dataclass(frozen=True)
class Direction:
    id: str
    eigenvalue: Eigenvalue
    # None marks a direction transversal to the divisor.
    containment: tuple[str, ...] | None

    @property
    def transversal(self) -> bool:
        return self.containment is None

    def lies_in(self, component: str) -> bool:
        return self.containment is not None and component in self.containment


@dataclass(frozen=True)
class DivisorComponent:
    id: str
    label: str = ""


@dataclass(frozen=True)
class SingularPoint:
    id: str
    e: int
    components: tuple[str, ...]
    directions: tuple[Direction, ...]
    dim_w: int | None = None
    declared_class: str | None = None
    label: str = ""

    def direction(self, direction_id: str) -> Direction:
        for d in self.directions:
            if d.id == direction_id:
                return d
        raise DanglingReference(
            f"point {self.id!r} has no direction {direction_id!r}", entities=(self.id, direction_id)
        )

    def spanning(self, component: str) -> tuple[Direction, ...]:
        return tuple(d for d in self.directions if d.lies_in(component))


@dataclass(frozen=True)
class Edge:
    id: str
    alpha: str
    omega: str
    kind: str
    components: tuple[str, ...]
    alpha_direction: str
    omega_direction: str
    side_at_alpha: tuple[str, ...]
    side_at_omega: tuple[str, ...]

    @property
    def is_skeleton(self) -> bool:
        return self.kind == SKELETON

    def endpoint(self, end: str) -> str:
        return self.alpha if end == "alpha" else self.omega

    def direction_at(self, point: str) -> str:
        if point == self.alpha:
            return self.alpha_direction
        if point == self.omega:
            return self.omega_direction
        raise DanglingReference(f"edge {self.id!r} is not adjacent to {point!r}", entities=(self.id, point))

    def sides_at(self, point: str) -> tuple[str, ...]:
        if point == self.alpha:
            return self.side_at_alpha
        if point == self.omega:
            return self.side_at_omega
        raise DanglingReference(f"edge {self.id!r} is not adjacent to {point!r}", entities=(self.id, point))

    def other_end(self, point: str) -> str:
        return self.omega if point == self.alpha else self.alpha


@dataclass(frozen=True)
class Face:
    id: str
    component: str
    alpha_vertex: str
    omega_vertex: str
    boundary_paths: tuple[tuple[str, ...], ...] = ()
    exceptional: bool = False


@dataclass(frozen=True)
class SComponent:
    id: str
    point: str
    sign: str  # "+", "-" or "only"


def s_component_id(point: str, sign: str) -> str:
    return f"{point}/{'o' if sign == 'only' else sign}"


@dataclass(frozen=True)
class VertexClass:
    kind: str
    is_3d_saddle: bool
    # Orientation of W2 for 3D saddles (None for nodes that are not 3D saddles).
    w2_stable: bool | None
    w1: tuple[str, ...]
    w2: tuple[str, ...]
    dim_w: int | None
    # Whether the realization W(p) is the stable manifold; None at tangential saddles.
    w_stable: bool | None
    saddle_components: tuple[str, ...]
    # For tangential saddles, the component equal to W2.
    w2_component: str | None
    s_prime: bool
    # Components containing the W1 direction.
    w1_components: tuple[str, ...]

    @property
    def is_node(self) -> bool:
        return self.kind in (ATTRACTOR, REPELLER)

    @property
    def is_saddle(self) -> bool:
        return not self.is_node

    @property
    def is_transversal(self) -> bool:
        return self.kind == TRANSVERSAL

    @property
    def is_tangential(self) -> bool:
        return self.kind == TANGENTIAL

    @property
    def w1_stable(self) -> bool | None:
        return None if self.w2_stable is None else not self.w2_stable

    def is_saddle_in(self, component: str) -> bool:
        return component in self.saddle_components


def derive_class(point: SingularPoint) -> VertexClass:
    """Classify a point from the signs of its three invariant directions."""
    signs = {d.id: d.eigenvalue.sign for d in point.directions}
    zero = [d for d, s in signs.items() if s == 0]
    if zero:
        raise InconsistentEigenvalueSigns(
            f"point {point.id!r}: direction(s) {', '.join(zero)} have zero real part",
            entities=(point.id, *zero),
        )
    saddles = tuple(
        c for c in point.components if len({signs[d.id] for d in point.spanning(c)}) == 2
    )
    if saddles:
        pos = [d for d in point.directions if signs[d.id] > 0]
        neg = [d for d in point.directions if signs[d.id] < 0]
        w1_dir = (pos if len(pos) == 1 else neg)[0]
        w2_dirs = [d for d in point.directions if d is not w1_dir]
        w2_ids = {d.id for d in w2_dirs}
        w2_stable = signs[w2_dirs[0].id] < 0
        w2_component = next(
            (c for c in point.components if {d.id for d in point.spanning(c)} == w2_ids), None
        )
        w1_components = w1_dir.containment or ()
        if w2_component is not None:
            kind, dim_w, w_stable = TANGENTIAL, None, None
            s_prime = point.e == 3
        else:
            kind, dim_w, w_stable = TRANSVERSAL, 2, w2_stable
            s_prime = point.e == 2
        vc = VertexClass(
            kind=kind,
            is_3d_saddle=True,
            w2_stable=w2_stable,
            w1=(w1_dir.id,),
            w2=tuple(d.id for d in w2_dirs),
            dim_w=dim_w,
            w_stable=w_stable,
            saddle_components=saddles,
            w2_component=w2_component,
            s_prime=s_prime,
            w1_components=tuple(w1_components),
        )
    else:
        in_plane = [d for d in point.directions if not d.transversal]
        attractor = signs[in_plane[0].id] < 0
        normal = [d for d in point.directions if d.transversal]
        is_3d = bool(normal) and (signs[normal[0].id] < 0) != attractor
        if is_3d:
            vc = VertexClass(
                kind=ATTRACTOR if attractor else REPELLER,
                is_3d_saddle=True,
                w2_stable=attractor,
                w1=(normal[0].id,),
                w2=tuple(d.id for d in in_plane),
                dim_w=1,
                w_stable=signs[normal[0].id] < 0,
                saddle_components=(),
                w2_component=point.components[0],
                s_prime=False,
                w1_components=(),
            )
        else:
            vc = VertexClass(
                kind=ATTRACTOR if attractor else REPELLER,
                is_3d_saddle=False,
                w2_stable=None,
                w1=(),
                w2=(),
                dim_w=3,
                w_stable=attractor,
                saddle_components=(),
                w2_component=None,
                s_prime=False,
                w1_components=(),
            )
    if point.declared_class is not None and point.declared_class != vc.kind:
        raise InconsistentEigenvalueSigns(
            f"point {point.id!r} declared {point.declared_class} but eigenvalue signs give {vc.kind}",
            entities=(point.id,),
        )
    if point.dim_w is not None and point.dim_w != vc.dim_w:
        raise InconsistentEigenvalueSigns(
            f"point {point.id!r} declares dim W = {point.dim_w}, eigenvalue signs give {vc.dim_w}",
            entities=(point.id,),
        )
    return vc


# ---------------------------------------------------------------- the scene


@dataclass(frozen=True)
class FoliatedScene:
    components: tuple[DivisorComponent, ...]
    points: tuple[SingularPoint, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]
    name: str = ""
    injections: tuple[Mapping[str, Any], ...] = field(default=(), compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    # -- lookups
    @cached_property
    def point_map(self) -> dict[str, SingularPoint]:
        return {p.id: p for p in self.points}

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face_map(self) -> dict[str, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def component_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def point(self, pid: str) -> SingularPoint:
        try:
            return self.point_map[pid]
        except KeyError:
            raise DanglingReference(f"unknown point {pid!r}", entities=(pid,)) from None

    def edge(self, eid: str) -> Edge:
        try:
            return self.edge_map[eid]
        except KeyError:
            raise DanglingReference(f"unknown edge {eid!r}", entities=(eid,)) from None

    def face(self, fid: str) -> Face:
        try:
            return self.face_map[fid]
        except KeyError:
            raise DanglingReference(f"unknown face {fid!r}", entities=(fid,)) from None

    # -- classification
    @cached_property
    def _classes(self) -> dict[str, VertexClass | SceneError]:
        out: dict[str, VertexClass | SceneError] = {}
        for p in self.points:
            try:
                out[p.id] = derive_class(p)
            except SceneError as exc:
                out[p.id] = exc
        return out

    def vertex_class(self, pid: str) -> VertexClass:
        self.point(pid)
        result = self._classes[pid]
        if isinstance(result, SceneError):
            raise result
        return result

    def try_class(self, pid: str) -> VertexClass | None:
        result = self._classes.get(pid)
        return result if isinstance(result, VertexClass) else None

    @property
    def fully_classified(self) -> bool:
        return all(isinstance(v, VertexClass) for v in self._classes.values())

    # -- s-components
    @cached_property
    def s_components(self) -> tuple[SComponent, ...]:
        out = []
        for p in self.points:
            out.extend(_s_components(p.id, self.try_class(p.id)))
        return tuple(out)

    @cached_property
    def s_component_map(self) -> dict[str, SComponent]:
        return {nu.id: nu for nu in self.s_components}

    def s_component(self, nid: str) -> SComponent:
        try:
            return self.s_component_map[nid]
        except KeyError:
            raise DanglingReference(f"unknown s-component {nid!r}", entities=(nid,)) from None

    # -- adjacency
    @cached_property
    def out_edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {p.id: [] for p in self.points}
        for e in self.edges:
            out[e.alpha].append(e.id)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {p.id: [] for p in self.points}
        for e in self.edges:
            out[e.omega].append(e.id)
        return {k: tuple(v) for k, v in out.items()}

    def edges_at(self, pid: str) -> tuple[str, ...]:
        return self.out_edges[pid] + self.in_edges[pid]

    @cached_property
    def alpha_tilde_inv(self) -> dict[str, tuple[str, ...]]:
        """Edges whose germ at their start lies in the closure of each s-component."""
        out: dict[str, list[str]] = {nu.id: [] for nu in self.s_components}
        for e in self.edges:
            for sign in e.side_at_alpha:
                out.setdefault(s_component_id(e.alpha, sign), []).append(e.id)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def omega_tilde_inv(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {nu.id: [] for nu in self.s_components}
        for e in self.edges:
            for sign in e.side_at_omega:
                out.setdefault(s_component_id(e.omega, sign), []).append(e.id)
        return {k: tuple(v) for k, v in out.items()}

    def edges_meeting(self, nid: str) -> tuple[str, ...]:
        """Edges whose germ at the point of ``nid`` touches its closure."""
        return self.alpha_tilde_inv.get(nid, ()) + self.omega_tilde_inv.get(nid, ())

    # -- derived helpers
    def is_exceptional(self) -> bool:
        return any(f.exceptional for f in self.faces)

    def reversed(self) -> FoliatedScene:
        """The scene of the time-reversed vector field (cached)."""
        if "reversed" not in self._cache:
            self._cache["reversed"] = _reverse(self)
        return self._cache["reversed"]

    def edge_follows(self, eid: str, pid: str, direction_ids: Iterable[str]) -> bool:
        return self.edge(eid).direction_at(pid) in set(direction_ids)


def _s_components(pid: str, vc: VertexClass | None) -> list[SComponent]:
    if vc is not None and vc.is_transversal:
        return [SComponent(s_component_id(pid, "+"), pid, "+"), SComponent(s_component_id(pid, "-"), pid, "-")]
    return [SComponent(s_component_id(pid, "only"), pid, "only")]


def classify_vertex(scene: FoliatedScene, p: str) -> VertexClass:
    return scene.vertex_class(p)


def s_components_at(scene: FoliatedScene, p: str) -> list[SComponent]:
    scene.point(p)
    return [nu for nu in scene.s_components if nu.point == p]


# ---------------------------------------------------------------- building


def build_scene(raw: Mapping[str, Any]) -> FoliatedScene:
    """Parse, check and index a scene document."""
    errors = sorted(_schema_validator().iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(x) for x in first.absolute_path) or "<root>"
        raise SchemaViolation(f"schema violation at {where}: {first.message}")

    components = tuple(DivisorComponent(c["id"], c.get("label", "")) for c in raw["components"])
    _unique("component", [c.id for c in components])
    comp_ids = {c.id for c in components}

    points = tuple(_parse_point(p, comp_ids) for p in raw["points"])
    _unique("point", [p.id for p in points])
    point_map = {p.id: p for p in points}

    classes = {}
    for p in points:
        try:
            classes[p.id] = derive_class(p)
        except InconsistentEigenvalueSigns:
            classes[p.id] = None

    edges = tuple(_parse_edge(e, point_map, classes) for e in raw["edges"])
    _unique("edge", [e.id for e in edges])
    edge_ids = {e.id for e in edges}
    _check_w1_sides(edges, points, classes)

    faces = tuple(_parse_face(f, comp_ids, point_map, edge_ids) for f in raw["faces"])
    _unique("face", [f.id for f in faces])

    return FoliatedScene(
        components=components,
        points=points,
        edges=edges,
        faces=faces,
        name=raw.get("name", ""),
        injections=tuple(raw.get("injections", ())),
    )


def load_scene(path) -> FoliatedScene:
    with open(path, encoding="utf-8") as fh:
        return build_scene(json.load(fh))


def _unique(kind: str, ids: list[str]) -> None:
    seen = set()
    for i in ids:
        if i in seen:
            raise DuplicateId(f"duplicate {kind} id {i!r}", entities=(i,))
        seen.add(i)


def _parse_point(raw: Mapping[str, Any], comp_ids: set[str]) -> SingularPoint:
    pid = raw["id"]
    comps = tuple(raw["components"])
    for c in comps:
        if c not in comp_ids:
            raise DanglingReference(f"point {pid!r} references unknown component {c!r}", entities=(pid, c))
    if len(set(comps)) != len(comps) or len(comps) != raw["e"]:
        raise SchemaViolation(f"point {pid!r}: e={raw['e']} but components are {list(comps)}", entities=(pid,))
    directions = []
    for d in raw["directions"]:
        cont = d["containment"]
        if cont == "transversal":
            containment = None
        else:
            containment = tuple(sorted(cont))
            for c in containment:
                if c not in comps:
                    if c not in comp_ids:
                        raise DanglingReference(
                            f"point {pid!r} direction {d['id']!r} references unknown component {c!r}",
                            entities=(pid, c),
                        )
                    raise SchemaViolation(
                        f"point {pid!r} direction {d['id']!r} lies in {c!r}, which does not pass through the point",
                        entities=(pid, d["id"]),
                    )
            if len(set(containment)) != len(containment):
                raise SchemaViolation(f"point {pid!r}: repeated component in direction {d['id']!r}", entities=(pid,))
        directions.append(Direction(d["id"], Eigenvalue.from_json(d["eigenvalue"]), containment))
    _unique(f"direction at {pid}", [d.id for d in directions])
    point = SingularPoint(
        id=pid,
        e=raw["e"],
        components=comps,
        directions=tuple(directions),
        dim_w=raw.get("dim_w"),
        declared_class=raw.get("class"),
        label=raw.get("label", ""),
    )
    _check_direction_frame(point)
    return point


def _check_direction_frame(point: SingularPoint) -> None:
    """Each component through the point is spanned by exactly two directions."""
    pid = point.id
    n_normal = sum(d.transversal for d in point.directions)
    if n_normal != (1 if point.e == 1 else 0):
        raise SchemaViolation(
            f"point {pid!r}: a point on {point.e} component(s) needs {1 if point.e == 1 else 0} transversal direction(s)",
            entities=(pid,),
        )
    for c in point.components:
        if len(point.spanning(c)) != 2:
            raise SchemaViolation(
                f"point {pid!r}: component {c!r} must be spanned by exactly two listed directions",
                entities=(pid, c),
            )
    pairs = [d.containment for d in point.directions if d.containment and len(d.containment) == 2]
    if len(set(pairs)) != len(pairs):
        raise SchemaViolation(f"point {pid!r}: two directions along the same skeleton curve", entities=(pid,))


def _parse_edge(raw: Mapping[str, Any], point_map: dict[str, SingularPoint], classes) -> Edge:
    eid = raw["id"]
    for end in ("alpha", "omega"):
        if raw[end] not in point_map:
            raise DanglingReference(f"edge {eid!r} references unknown point {raw[end]!r}", entities=(eid, raw[end]))
    if raw["alpha"] == raw["omega"]:
        raise SchemaViolation(f"edge {eid!r} is a loop at {raw['alpha']!r}", entities=(eid,))
    comps = tuple(sorted(raw["components"]))
    if len(set(comps)) != len(comps):
        raise SchemaViolation(f"edge {eid!r} lists a component twice", entities=(eid,))
    expected = 2 if raw["kind"] == SKELETON else 1
    if len(comps) != expected:
        raise SchemaViolation(f"{raw['kind']} edge {eid!r} needs {expected} component(s)", entities=(eid,))
    sides = {}
    for end in ("alpha", "omega"):
        point = point_map[raw[end]]
        for c in comps:
            if c not in point.components:
                raise SchemaViolation(
                    f"edge {eid!r} lies in {c!r}, which does not pass through {point.id!r}",
                    entities=(eid, point.id, c),
                )
        direction = point.direction(raw[f"{end}_direction"])
        if direction.containment is None or not set(comps) <= set(direction.containment):
            raise SchemaViolation(
                f"edge {eid!r} follows direction {direction.id!r} at {point.id!r}, which is not inside {list(comps)}",
                entities=(eid, point.id),
            )
        sides[end] = _resolve_sides(eid, point, direction.id, raw.get(f"side_at_{end}"), classes[point.id])
    return Edge(
        id=eid,
        alpha=raw["alpha"],
        omega=raw["omega"],
        kind=raw["kind"],
        components=comps,
        alpha_direction=raw["alpha_direction"],
        omega_direction=raw["omega_direction"],
        side_at_alpha=sides["alpha"],
        side_at_omega=sides["omega"],
    )


def _resolve_sides(eid: str, point: SingularPoint, direction: str, declared, vc: VertexClass | None):
    if vc is None:
        return tuple(sorted(declared)) if declared else ("only",)
    if not vc.is_transversal:
        if declared and list(declared) != ["only"]:
            raise SchemaViolation(
                f"edge {eid!r}: {point.id!r} has a single s-component, side must be 'only'",
                entities=(eid, point.id),
            )
        return ("only",)
    if declared and "only" in declared:
        raise SchemaViolation(
            f"edge {eid!r}: {point.id!r} is a transversal saddle, sides are '+' or '-'", entities=(eid, point.id)
        )
    if direction in vc.w2:
        if declared and sorted(declared) != ["+", "-"]:
            raise SchemaViolation(
                f"edge {eid!r} runs along W2 at {point.id!r} and touches both s-components",
                entities=(eid, point.id),
            )
        return ("+", "-")
    if not declared or len(declared) != 1:
        raise SchemaViolation(
            f"edge {eid!r} runs along W1 at transversal saddle {point.id!r}: declare exactly one side",
            entities=(eid, point.id),
        )
    return tuple(declared)


def _check_w1_sides(edges: tuple[Edge, ...], points: tuple[SingularPoint, ...], classes) -> None:
    for p in points:
        vc = classes[p.id]
        if vc is None or not vc.is_transversal:
            continue
        seen: dict[str, str] = {}
        for e in edges:
            for end in ("alpha", "omega"):
                if e.endpoint(end) != p.id or getattr(e, f"{end}_direction") not in vc.w1:
                    continue
                (sign,) = getattr(e, f"side_at_{end}")
                if sign in seen:
                    raise SchemaViolation(
                        f"edges {seen[sign]!r} and {e.id!r} both claim side {sign} of W1 at {p.id!r}",
                        entities=(p.id, seen[sign], e.id),
                    )
                seen[sign] = e.id


def _parse_face(raw: Mapping[str, Any], comp_ids, point_map, edge_ids) -> Face:
    fid = raw["id"]
    if raw["component"] not in comp_ids:
        raise DanglingReference(f"face {fid!r} references unknown component {raw['component']!r}", entities=(fid,))
    for key in ("alpha_vertex", "omega_vertex"):
        if raw[key] not in point_map:
            raise DanglingReference(f"face {fid!r} references unknown point {raw[key]!r}", entities=(fid, raw[key]))
    bp = raw["boundary_paths"]
    if bp == EXCEPTIONAL_FACE:
        return Face(fid, raw["component"], raw["alpha_vertex"], raw["omega_vertex"], (), True)
    for path in bp:
        for eid in path:
            if eid not in edge_ids:
                raise DanglingReference(f"face {fid!r} references unknown edge {eid!r}", entities=(fid, eid))
    return Face(fid, raw["component"], raw["alpha_vertex"], raw["omega_vertex"], tuple(tuple(p) for p in bp), False)


# ---------------------------------------------------------------- serialization


def serialize(scene: FoliatedScene) -> dict:
    doc: dict[str, Any] = {"schema": SCHEMA_VERSION}
    if scene.name:
        doc["name"] = scene.name
    doc["components"] = [
        {"id": c.id, **({"label": c.label} if c.label else {})} for c in scene.components
    ]
    points = []
    for p in scene.points:
        entry: dict[str, Any] = {
            "id": p.id,
            "e": p.e,
            "components": list(p.components),
            "directions": [
                {
                    "id": d.id,
                    "eigenvalue": d.eigenvalue.to_json(),
                    "containment": "transversal" if d.containment is None else list(d.containment),
                }
                for d in p.directions
            ],
        }
        if p.dim_w is not None:
            entry["dim_w"] = p.dim_w
        if p.declared_class is not None:
            entry["class"] = p.declared_class
        if p.label:
            entry["label"] = p.label
        points.append(entry)
    doc["points"] = points
    doc["edges"] = [
        {
            "id": e.id,
            "alpha": e.alpha,
            "omega": e.omega,
            "kind": e.kind,
            "components": list(e.components),
            "alpha_direction": e.alpha_direction,
            "omega_direction": e.omega_direction,
            "side_at_alpha": list(e.side_at_alpha),
            "side_at_omega": list(e.side_at_omega),
        }
        for e in scene.edges
    ]
    doc["faces"] = [
        {
            "id": f.id,
            "component": f.component,
            "alpha_vertex": f.alpha_vertex,
            "omega_vertex": f.omega_vertex,
            "boundary_paths": EXCEPTIONAL_FACE if f.exceptional else [list(p) for p in f.boundary_paths],
        }
        for f in scene.faces
    ]
    if scene.injections:
        doc["injections"] = [dict(i) for i in scene.injections]
    return doc


def _reverse(scene: FoliatedScene) -> FoliatedScene:
    def flip(ev: Eigenvalue) -> Eigenvalue:
        if ev.value is not None:
            return Eigenvalue(value=-ev.value)
        return Eigenvalue(marker=-(ev.marker or 0))

    points = tuple(
        SingularPoint(
            id=p.id,
            e=p.e,
            components=p.components,
            directions=tuple(Direction(d.id, flip(d.eigenvalue), d.containment) for d in p.directions),
            dim_w=p.dim_w,
            declared_class=None,
            label=p.label,
        )
        for p in scene.points
    )
    edges = tuple(
        Edge(
            id=e.id,
            alpha=e.omega,
            omega=e.alpha,
            kind=e.kind,
            components=e.components,
            alpha_direction=e.omega_direction,
            omega_direction=e.alpha_direction,
            side_at_alpha=e.side_at_omega,
            side_at_omega=e.side_at_alpha,
        )
        for e in scene.edges
    )
    faces = tuple(
        Face(
            id=f.id,
            component=f.component,
            alpha_vertex=f.omega_vertex,
            omega_vertex=f.alpha_vertex,
            boundary_paths=tuple(tuple(reversed(path)) for path in f.boundary_paths),
            exceptional=f.exceptional,
        )
        for f in scene.faces
    )
    rev = FoliatedScene(scene.components, points, edges, faces, name=scene.name, injections=scene.injections)
    rev._cache["reversed"] = scene
    return rev


def reverse_document(doc: Mapping[str, Any]) -> dict:
    """Time-reverse a scene document (used by the random scene generator)."""
    return serialize(build_scene(doc).reversed())
