"""Hypothesis checks on a scene.

Every check accumulates violations instead of raising, so one run reports
all problems.  Rule ids are prefixed with the hypothesis group they belong
to; ``hypothesis_summary`` folds a report into the five groups.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from . import graph_analysis as ga
from .core_model import ATTRACTOR, REPELLER, FoliatedScene, derive_class
from .errors import SceneError

ERROR = "error"
WARNING = "warning"
INFO = "info"

HYPOTHESES: tuple[tuple[str, str], ...] = (
    ("hyperbolicity", "every singular point is hyperbolic"),
    ("acyclicity", "the oriented graph has no directed cycle"),
    ("spherical-divisor", "graph, index count and faces are those of a sphere"),
    ("morse-smale", "saddle connections only along the skeleton"),
    ("non-resonance", "no resonant chain of saddle connections"),
)


@dataclass(frozen=True, order=True)
class Violation:
    rule_id: str
    entities: tuple[str, ...]
    message: str
    severity: str = ERROR

    @property
    def group(self) -> str:
        return self.rule_id.split(".", 1)[0]

    def as_dict(self) -> dict:
        return {
            "rule": self.rule_id,
            "severity": self.severity,
            "entities": list(self.entities),
            "message": self.message,
        }


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "violations", tuple(sorted(set(self.violations))))

    @property
    def passed(self) -> bool:
        return not any(v.severity == ERROR for v in self.violations)

    @property
    def errors(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity == ERROR)

    def rules(self) -> set[str]:
        return {v.rule_id for v in self.violations if v.severity == ERROR}

    def merge(self, *others: ValidationReport) -> ValidationReport:
        out = list(self.violations)
        for o in others:
            out.extend(o.violations)
        return ValidationReport(tuple(out))

    def as_dict(self) -> dict:
        return {"passed": self.passed, "violations": [v.as_dict() for v in self.violations]}


def _report(items: Iterable[Violation]) -> ValidationReport:
    return ValidationReport(tuple(items))


def _classified(scene: FoliatedScene):
    for p in scene.points:
        vc = scene.try_class(p.id)
        if vc is not None:
            yield p, vc


# ---------------------------------------------------------------- hyperbolicity


def check_hyperbolicity(scene: FoliatedScene) -> ValidationReport:
    out = []
    for p in scene.points:
        zero = [d.id for d in p.directions if d.eigenvalue.sign == 0]
        for did in zero:
            out.append(
                Violation("hyperbolicity.zero-real-part", (p.id, did), f"point {p.id}: direction {did} has zero real part")
            )
        if zero:
            continue
        try:
            vc = derive_class(p)
        except SceneError as exc:
            out.append(Violation("hyperbolicity.declared-class", (p.id,), exc.message))
            continue
        if vc.s_prime:
            loose = [d.id for d in p.directions if not d.eigenvalue.exact]
            for did in loose:
                out.append(
                    Violation(
                        "hyperbolicity.exact-eigenvalues",
                        (p.id, did),
                        f"point {p.id} carries weights, so direction {did} needs an exact rational eigenvalue",
                    )
                )
    return _report(out)


# ---------------------------------------------------------------- acyclicity


def check_acyclicity(scene: FoliatedScene) -> ValidationReport:
    out = []
    for cycle in ga.find_cycles(scene):
        out.append(Violation("acyclicity.cycle", tuple(cycle), f"directed cycle through edges {', '.join(cycle)}"))
    return _report(out)


# ---------------------------------------------------------------- index count


def check_index_formula(scene: FoliatedScene) -> ValidationReport:
    out = []
    classes = dict((p.id, vc) for p, vc in _classified(scene))
    nodes = [p for p, vc in classes.items() if vc.is_node]
    transversal = [p for p, vc in classes.items() if vc.is_transversal]
    if len(classes) < len(scene.points):
        out.append(
            Violation(
                "spherical-divisor.index-formula",
                tuple(sorted(set(p.id for p in scene.points) - set(classes))),
                "index count not evaluated: some points cannot be classified",
            )
        )
        return _report(out)
    diff = len(nodes) - len(transversal)
    if diff != 2:
        out.append(
            Violation(
                "spherical-divisor.index-formula",
                (),
                f"#nodes - #transversal saddles = {len(nodes)} - {len(transversal)} = {diff}, expected 2",
            )
        )
    if not any(classes[p].kind == ATTRACTOR for p in nodes):
        out.append(Violation("spherical-divisor.no-attractor", (), "no attractor node"))
    if not any(classes[p].kind == REPELLER for p in nodes):
        out.append(Violation("spherical-divisor.no-repeller", (), "no repeller node"))
    return _report(out)


def index_counts(scene: FoliatedScene) -> dict[str, int]:
    counts = Counter(vc.kind for _, vc in _classified(scene))
    return {
        "nodes": counts[ATTRACTOR] + counts[REPELLER],
        "attractors": counts[ATTRACTOR],
        "repellers": counts[REPELLER],
        "transversal_saddles": counts["transversal-saddle"],
        "tangential_saddles": counts["tangential-saddle"],
    }


# ---------------------------------------------------------------- degrees


def check_transversal_degree(scene: FoliatedScene) -> ValidationReport:
    out = []
    for e in scene.edges:
        a = scene.point(e.alpha).direction(e.alpha_direction).eigenvalue.sign
        w = scene.point(e.omega).direction(e.omega_direction).eigenvalue.sign
        if a < 0:
            out.append(
                Violation(
                    "spherical-divisor.edge-orientation",
                    (e.id, e.alpha),
                    f"edge {e.id} leaves {e.alpha} along a stable direction {e.alpha_direction}",
                )
            )
        if w > 0:
            out.append(
                Violation(
                    "spherical-divisor.edge-orientation",
                    (e.id, e.omega),
                    f"edge {e.id} reaches {e.omega} along an unstable direction {e.omega_direction}",
                )
            )
    for p, vc in _classified(scene):
        ins, outs = scene.in_edges[p.id], scene.out_edges[p.id]
        if vc.kind == ATTRACTOR and outs:
            out.append(
                Violation("spherical-divisor.node-degree", (p.id, *outs), f"attractor {p.id} has outgoing edges")
            )
        if vc.kind == REPELLER and ins:
            out.append(Violation("spherical-divisor.node-degree", (p.id, *ins), f"repeller {p.id} has incoming edges"))
        if vc.is_transversal:
            if len(ins) != 2 or len(outs) != 2:
                out.append(
                    Violation(
                        "spherical-divisor.transversal-degree",
                        (p.id,),
                        f"transversal saddle {p.id} has in-degree {len(ins)} and out-degree {len(outs)}, expected 2 and 2",
                    )
                )
            w2_edges = [eid for eid in scene.edges_at(p.id) if scene.edge(eid).direction_at(p.id) in vc.w2]
            w2_out = [eid for eid in w2_edges if scene.edge(eid).alpha == p.id]
            expected_out = 0 if vc.w2_stable else len(w2_edges)
            if len(w2_edges) != 2 or len(w2_out) != expected_out:
                out.append(
                    Violation(
                        "spherical-divisor.transversal-degree",
                        (p.id, *sorted(w2_edges)),
                        f"transversal saddle {p.id}: expected two W2 edges, all {'incoming' if vc.w2_stable else 'outgoing'}",
                    )
                )
        if vc.is_tangential:
            w1_edges = [eid for eid in scene.edges_at(p.id) if scene.edge(eid).direction_at(p.id) in vc.w1]
            if len(w1_edges) != 1:
                out.append(
                    Violation(
                        "spherical-divisor.tangential-w1-edge",
                        (p.id, *sorted(w1_edges)),
                        f"tangential saddle {p.id} has {len(w1_edges)} edges along W1, expected exactly one",
                    )
                )
    return _report(out)


# ---------------------------------------------------------------- Morse-Smale


def check_morse_smale(scene: FoliatedScene) -> ValidationReport:
    out = []
    for e in scene.edges:
        if e.is_skeleton:
            continue
        (comp,) = e.components
        ca, cw = scene.try_class(e.alpha), scene.try_class(e.omega)
        if ca is None or cw is None:
            continue
        sa, sw = ca.is_saddle_in(comp), cw.is_saddle_in(comp)
        if sa and sw:
            out.append(
                Violation(
                    "morse-smale.saddle-connection",
                    (e.id, e.alpha, e.omega),
                    f"trace edge {e.id} joins two saddles {e.alpha} and {e.omega} of the foliation on {comp}",
                )
            )
        elif not sa and not sw:
            out.append(
                Violation(
                    "morse-smale.trace-endpoints",
                    (e.id, e.alpha, e.omega),
                    f"trace edge {e.id} joins two nodes of the foliation on {comp}; one end must be a saddle",
                )
            )
        for pid, sad in ((e.alpha, sa), (e.omega, sw)):
            if sad:
                d = scene.point(pid).direction(e.direction_at(pid))
                if d.containment != (comp,):
                    out.append(
                        Violation(
                            "morse-smale.trace-direction",
                            (e.id, pid),
                            f"trace edge {e.id} leaves saddle {pid} along {d.id}, which is not a separatrix inside {comp} only",
                        )
                    )
    return _report(out)


# ---------------------------------------------------------------- faces


def check_faces(scene: FoliatedScene) -> ValidationReport:
    out: list[Violation] = []
    n_v, n_e = len(scene.points), len(scene.edges)
    per_component: dict[tuple[str, str], set[str]] = defaultdict(set)
    exceptional = [f for f in scene.faces if f.exceptional]

    for f in scene.faces:
        if f.alpha_vertex == f.omega_vertex:
            out.append(Violation("spherical-divisor.face-path", (f.id,), f"face {f.id} starts and ends at the same vertex"))
        for v in (f.alpha_vertex, f.omega_vertex):
            if f.component not in scene.point(v).components:
                out.append(
                    Violation("spherical-divisor.face-path", (f.id, v), f"face {f.id}: {v} is not on component {f.component}")
                )
        if f.exceptional:
            if n_v != 2 or n_e != 0:
                out.append(
                    Violation(
                        "spherical-divisor.exceptional-face",
                        (f.id,),
                        f"exceptional face {f.id} in a scene with {n_v} vertices and {n_e} edges",
                    )
                )
            continue
        paths = f.boundary_paths
        for k, path in enumerate(paths, start=1):
            out.extend(_path_problems(scene, f, k, path))
            for eid in set(path):
                per_component[(eid, f.component)].add(f.id)
        if len(paths) == 2 and paths[0] == paths[1]:
            out.append(Violation("spherical-divisor.face-path", (f.id,), f"face {f.id} has two identical boundary paths"))
        elif len(paths) == 2:
            out.extend(_shared_segment_problems(scene, f))
        for v in (f.alpha_vertex, f.omega_vertex):
            vc = scene.try_class(v)
            if vc is not None and vc.is_saddle_in(f.component):
                out.append(
                    Violation(
                        "spherical-divisor.face-limits",
                        (f.id, v),
                        f"face {f.id} ends at {v}, a saddle of the foliation on {f.component}",
                    )
                )
    if exceptional and len(scene.faces) != 1:
        out.append(
            Violation(
                "spherical-divisor.exceptional-face",
                tuple(f.id for f in exceptional),
                "an exceptional face must be the only face of its scene",
            )
        )

    for e in scene.edges:
        for comp in e.components:
            faces = per_component.get((e.id, comp), set())
            cap = 1 if e.is_skeleton else 2
            if len(faces) > cap:
                out.append(
                    Violation(
                        "spherical-divisor.face-count",
                        (e.id, *sorted(faces)),
                        f"edge {e.id} bounds {len(faces)} faces of {comp}, at most {cap} allowed",
                    )
                )
            if not faces:
                out.append(
                    Violation("spherical-divisor.face-coverage", (e.id, comp), f"edge {e.id} bounds no face of {comp}")
                )

    if not exceptional and scene.faces:
        chi = n_v - n_e + len(scene.faces)
        if chi != 2:
            out.append(
                Violation(
                    "spherical-divisor.euler-characteristic",
                    (),
                    f"V - E + F = {n_v} - {n_e} + {len(scene.faces)} = {chi}, a sphere needs 2",
                )
            )
    if not scene.faces:
        out.append(Violation("spherical-divisor.face-coverage", (), "scene declares no faces"))

    if scene.fully_classified and not any(v.rule_id == "spherical-divisor.face-path" for v in out):
        out.extend(_sector_problems(scene))
    return _report(out)


def _path_problems(scene: FoliatedScene, f, k: int, path) -> list[Violation]:
    out = []
    tag = f"face {f.id} path {k}"
    if not path:
        return [Violation("spherical-divisor.face-path", (f.id,), f"{tag} is empty")]
    edges = [scene.edge(eid) for eid in path]
    if edges[0].alpha != f.alpha_vertex:
        out.append(
            Violation("spherical-divisor.face-path", (f.id, edges[0].id), f"{tag} starts at {edges[0].alpha}, not {f.alpha_vertex}")
        )
    if edges[-1].omega != f.omega_vertex:
        out.append(
            Violation("spherical-divisor.face-path", (f.id, edges[-1].id), f"{tag} ends at {edges[-1].omega}, not {f.omega_vertex}")
        )
    for a, b in zip(edges, edges[1:]):
        if a.omega != b.alpha:
            out.append(Violation("spherical-divisor.face-path", (f.id, a.id, b.id), f"{tag}: {a.id} and {b.id} do not connect"))
    for e in edges:
        if f.component not in e.components:
            out.append(
                Violation("spherical-divisor.face-path", (f.id, e.id), f"{tag}: edge {e.id} is not in component {f.component}")
            )
    if len(set(path)) != len(path):
        out.append(Violation("spherical-divisor.face-path", (f.id,), f"{tag} repeats an edge"))
    return out


def _shared_segment_problems(scene: FoliatedScene, f) -> list[Violation]:
    p, q = f.boundary_paths
    i = 0
    while i < min(len(p), len(q)) and p[i] == q[i]:
        i += 1
    j = 0
    while j < min(len(p), len(q)) - i and p[-1 - j] == q[-1 - j]:
        j += 1
    mid_p, mid_q = p[i : len(p) - j], q[i : len(q) - j]
    out = []
    if not mid_p and not mid_q:
        return [Violation("spherical-divisor.face-path", (f.id,), f"face {f.id}: the two boundary paths coincide")]
    if set(mid_p) & set(mid_q):
        out.append(
            Violation(
                "spherical-divisor.face-path",
                (f.id, *sorted(set(mid_p) & set(mid_q))),
                f"face {f.id}: boundary paths share edges away from their initial and final segments",
            )
        )
    inner_p = set(ga.path_vertices(scene, mid_p)[1:-1]) if mid_p else set()
    inner_q = set(ga.path_vertices(scene, mid_q)[1:-1]) if mid_q else set()
    if inner_p & inner_q:
        out.append(
            Violation(
                "spherical-divisor.face-path",
                (f.id, *sorted(inner_p & inner_q)),
                f"face {f.id}: boundary paths meet at an interior vertex",
            )
        )
    return out


def _sector_problems(scene: FoliatedScene) -> list[Violation]:
    """Compare the faces ending at each s-component with the local edge layout.

    Around an s-component, the fence minus the edge attachments splits into
    as many pieces as there are faces (plus one for a transversal saddle);
    every edge attachment is flanked by one piece on each side, except the
    two ends of a disc fence.
    """
    out = []
    jambs = ga.face_jambs(scene)
    by_nu: dict[str, list[ga.FaceJamb]] = defaultdict(list)
    for jb in jambs:
        by_nu[jb.s_component].append(jb)
    for nu in scene.s_components:
        vc = scene.vertex_class(nu.point)
        layout = ga.fence_layout(scene, nu.id)
        faces_here = {(jb.face, jb.end) for jb in by_nu[nu.id]}
        for f in scene.faces:
            if f.exceptional and nu.point in (f.alpha_vertex, f.omega_vertex):
                faces_here.add((f.id, "alpha" if nu.point == f.alpha_vertex else "omega"))
        gaps = len(faces_here) + (1 if vc.is_transversal else 0)
        if gaps != layout.expected_gaps:
            out.append(
                Violation(
                    "spherical-divisor.face-sectors",
                    (nu.id,),
                    f"s-component {nu.id}: {len(faces_here)} face(s) end here but the edge layout leaves "
                    f"{layout.expected_gaps} fence piece(s)",
                )
            )
            continue
        flank = Counter(jb.edge for jb in by_nu[nu.id])
        if vc.is_transversal:
            for eid in layout.end_edges:
                flank[eid] += 1
        for eid in layout.fence_edges:
            want = 1 if eid in layout.end_edges else 2
            if flank[eid] != want:
                out.append(
                    Violation(
                        "spherical-divisor.face-sectors",
                        (nu.id, eid),
                        f"s-component {nu.id}: edge {eid} is flanked by {flank[eid]} face side(s), expected {want}",
                    )
                )
        strays = sorted(set(flank) - set(layout.fence_edges))
        for eid in strays:
            out.append(
                Violation(
                    "spherical-divisor.face-sectors",
                    (nu.id, eid),
                    f"s-component {nu.id}: a face ends along {eid}, which does not meet the fence",
                )
            )
    return out


# ---------------------------------------------------------------- everything


def check_resonance(scene: FoliatedScene) -> ValidationReport:
    from .mark_calculus import find_resonances

    if not scene.fully_classified or ga.find_cycles(scene):
        return _report(
            [Violation("non-resonance.not-evaluated", (), "resonance not evaluated on an unclassified or cyclic scene")]
        )
    try:
        chains = find_resonances(scene)
    except SceneError as exc:
        return _report([Violation("non-resonance.not-evaluated", exc.entities, exc.message)])
    return _report(
        Violation("non-resonance.resonant-chain", tuple(chain), f"resonant chain of saddle connections {' -> '.join(chain)}")
        for chain in chains
    )


def validate_all(scene: FoliatedScene) -> ValidationReport:
    return check_hyperbolicity(scene).merge(
        check_acyclicity(scene),
        check_index_formula(scene),
        check_transversal_degree(scene),
        check_morse_smale(scene),
        check_faces(scene),
        check_resonance(scene),
    )


def hypothesis_summary(report: ValidationReport) -> list[tuple[str, bool]]:
    failing = {v.group for v in report.errors}
    return [(name, name not in failing) for name, _ in HYPOTHESES]
