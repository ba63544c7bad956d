"""Graph-level analysis of a scene: cycles, lengths, the length filtration,
the flow order on s-components and the s-components bounding each face.

Also hosts the local layout of edges around an s-component (which edges hit
the fence, which hit the lid), since both the face validator and the
fattening need the same bookkeeping.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core_model import FoliatedScene, Face, s_component_id
from .errors import AmbiguousSide, CyclicGraph, DanglingReference, NotSkeletonPath, SceneError

EdgePath = tuple[str, ...]


@dataclass(frozen=True)
class Subgraph:
    vertices: frozenset[str]
    edges: frozenset[str]

    def __le__(self, other: Subgraph) -> bool:
        return self.vertices <= other.vertices and self.edges <= other.edges

    def as_dict(self) -> dict:
        return {"vertices": sorted(self.vertices), "edges": sorted(self.edges)}


def whole_graph(scene: FoliatedScene) -> Subgraph:
    return Subgraph(frozenset(p.id for p in scene.points), frozenset(e.id for e in scene.edges))


def check_path(scene: FoliatedScene, path: Sequence[str]) -> EdgePath:
    """Return ``path`` as a tuple after checking head-to-tail consistency."""
    edges = [scene.edge(eid) for eid in path]
    for a, b in zip(edges, edges[1:]):
        if a.omega != b.alpha:
            raise SceneError(f"edges {a.id!r} and {b.id!r} are not consecutive", entities=(a.id, b.id))
    return tuple(path)


def path_vertices(scene: FoliatedScene, path: Sequence[str]) -> list[str]:
    if not path:
        return []
    first = scene.edge(path[0])
    return [first.alpha] + [scene.edge(eid).omega for eid in path]


# ---------------------------------------------------------------- cycles


def strongly_connected_components(scene: FoliatedScene) -> list[list[str]]:
    """Iterative Tarjan over the point graph; components listed sorted."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    result: list[list[str]] = []
    counter = 0
    succ = {p.id: sorted({scene.edge(e).omega for e in scene.out_edges[p.id]}) for p in scene.points}

    for root in sorted(succ):
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(sorted(comp))
    return sorted(result)


def find_cycles(scene: FoliatedScene) -> list[EdgePath]:
    """One directed cycle (as an edge list) per non-trivial strongly connected component.

    The cycle is found by a DFS from the smallest vertex id taking edges in
    id order, so the answer does not depend on declaration order.
    """
    cycles = []
    for comp in strongly_connected_components(scene):
        members = set(comp)
        if len(comp) == 1:
            continue
        start = comp[0]
        out = {
            v: sorted(e for e in scene.out_edges[v] if scene.edge(e).omega in members) for v in comp
        }
        # DFS until we return to start
        trail: list[str] = []
        visited = {start}
        found = _cycle_dfs(scene, start, start, out, visited, trail)
        if found:
            cycles.append(tuple(trail))
    return cycles


def _cycle_dfs(scene, start, v, out, visited, trail) -> bool:
    for eid in out[v]:
        w = scene.edge(eid).omega
        trail.append(eid)
        if w == start:
            return True
        if w not in visited:
            visited.add(w)
            if _cycle_dfs(scene, start, w, out, visited, trail):
                return True
        trail.pop()
    return False


def topological_order(scene: FoliatedScene) -> list[str]:
    """Kahn's algorithm with id-ordered tie breaking; raises CyclicGraph."""
    indeg = {p.id: len(scene.in_edges[p.id]) for p in scene.points}
    ready = sorted(v for v, d in indeg.items() if d == 0)
    order = []
    heapq.heapify(ready)
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for eid in scene.out_edges[v]:
            w = scene.edge(eid).omega
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != len(indeg):
        cycles = find_cycles(scene)
        raise CyclicGraph(
            f"graph has a directed cycle through edges {', '.join(cycles[0]) if cycles else '?'}",
            entities=cycles[0] if cycles else (),
        )
    return order


# ---------------------------------------------------------------- lengths and filtration


def lengths(scene: FoliatedScene) -> dict[str, int]:
    """Longest number of edges in a path starting at each vertex."""
    if "lengths" not in scene._cache:
        order = topological_order(scene)
        value: dict[str, int] = {}
        for v in reversed(order):
            value[v] = max((value[scene.edge(e).omega] + 1 for e in scene.out_edges[v]), default=0)
        scene._cache["lengths"] = value
    return dict(scene._cache["lengths"])


def length(scene: FoliatedScene, p: str) -> int:
    scene.point(p)
    return lengths(scene)[p]


def filtration(scene: FoliatedScene) -> list[Subgraph]:
    """Layers whose vertices have length at most j, with the edges starting there."""
    ell = lengths(scene)
    top = max(ell.values(), default=0)
    layers = []
    for j in range(top + 1):
        vs = frozenset(v for v, l in ell.items() if l <= j)
        es = frozenset(e.id for e in scene.edges if e.alpha in vs)
        layers.append(Subgraph(vs, es))
    return layers


def generated_by_edges(scene: FoliatedScene, edges: Iterable[str]) -> Subgraph:
    es = frozenset(edges)
    vs = set()
    for eid in es:
        e = scene.edge(eid)
        vs.update((e.alpha, e.omega))
    return Subgraph(frozenset(vs), es)


def generated_by_vertices(scene: FoliatedScene, vertices: Iterable[str]) -> Subgraph:
    vs = frozenset(vertices)
    es = frozenset(e.id for e in scene.edges if e.alpha in vs and e.omega in vs)
    return Subgraph(vs, es)


def edge_complement(scene: FoliatedScene, sub: Subgraph) -> Subgraph:
    everything = whole_graph(scene)
    if not sub <= everything:
        raise DanglingReference("subgraph is not contained in the scene graph")
    return generated_by_edges(scene, everything.edges - sub.edges)


# ---------------------------------------------------------------- order on s-components


def _reach_closure(scene: FoliatedScene) -> dict[str, frozenset[str]]:
    if "reach" in scene._cache:
        return scene._cache["reach"]
    ends_in: dict[str, list[str]] = defaultdict(list)
    for nu, eids in scene.omega_tilde_inv.items():
        for eid in eids:
            ends_in[eid].append(nu)
    closure: dict[str, frozenset[str]] = {}
    for nu in scene.s_components:
        seen_edges: set[str] = set()
        frontier = list(scene.alpha_tilde_inv.get(nu.id, ()))
        reached = {nu.id}
        while frontier:
            eid = frontier.pop()
            if eid in seen_edges:
                continue
            seen_edges.add(eid)
            reached.update(ends_in[eid])
            frontier.extend(scene.out_edges[scene.edge(eid).omega])
        closure[nu.id] = frozenset(reached)
    scene._cache["reach"] = closure
    return closure


def s_leq(scene: FoliatedScene, nu: str, mu: str) -> bool:
    """True when ``nu == mu`` or some edge path leaves the closure of ``nu``
    and arrives in the closure of ``mu``."""
    scene.s_component(nu)
    scene.s_component(mu)
    return mu in _reach_closure(scene)[nu]


# ---------------------------------------------------------------- faces


def face_limits(scene: FoliatedScene, face_id: str) -> tuple[str, str]:
    """The s-components at the two ends of a face, on the face's side."""
    face = scene.face(face_id)
    return (_limit(scene, face, "alpha"), _limit(scene, face, "omega"))


def _limit(scene: FoliatedScene, face: Face, end: str) -> str:
    vertex = face.alpha_vertex if end == "alpha" else face.omega_vertex
    candidates = [nu.id for nu in scene.s_components if nu.point == vertex]
    if len(candidates) == 1 or face.exceptional:
        if len(candidates) != 1:
            raise AmbiguousSide(f"face {face.id!r}: {vertex!r} has several s-components", entities=(face.id, vertex))
        return candidates[0]
    allowed = set(candidates)
    for path in face.boundary_paths:
        if not path:
            continue
        edge = scene.edge(path[0] if end == "alpha" else path[-1])
        if vertex not in (edge.alpha, edge.omega):
            raise AmbiguousSide(
                f"face {face.id!r}: boundary edge {edge.id!r} does not touch {vertex!r}", entities=(face.id, edge.id)
            )
        allowed &= {s_component_id(vertex, s) for s in edge.sides_at(vertex)}
    if len(allowed) != 1:
        raise AmbiguousSide(
            f"face {face.id!r}: side data leaves {sorted(allowed)} as candidate s-components at {vertex!r}",
            entities=(face.id, vertex),
        )
    return allowed.pop()


# ---------------------------------------------------------------- local layout around an s-component


@dataclass(frozen=True)
class FenceLayout:
    s_component: str
    topology: str  # "cylinder" or "disc"
    fence_edges: tuple[str, ...]
    end_edges: tuple[str, ...]  # fence doors sitting at the two ends of a disc fence
    lid_edges: tuple[str, ...]

    @property
    def middle_edges(self) -> tuple[str, ...]:
        return tuple(e for e in self.fence_edges if e not in self.end_edges)

    @property
    def expected_gaps(self) -> int:
        """Components of the fence left over once every fence door is cut out."""
        if self.topology == "cylinder":
            return max(len(self.fence_edges), 1)
        return len(self.fence_edges) - 1


def fence_layout(scene: FoliatedScene, nu_id: str) -> FenceLayout:
    nu = scene.s_component(nu_id)
    vc = scene.vertex_class(nu.point)
    meeting = sorted(set(scene.edges_meeting(nu_id)))
    if vc.is_node:
        return FenceLayout(nu_id, "cylinder", tuple(meeting), (), ())
    lid = tuple(e for e in meeting if scene.edge(e).direction_at(nu.point) in vc.w1)
    fence = tuple(e for e in meeting if e not in lid)
    if vc.is_transversal:
        ends = fence
    else:
        ends = tuple(e for e in fence if scene.edge(e).is_skeleton)
    return FenceLayout(nu_id, "disc", fence, ends, lid)


@dataclass(frozen=True)
class FaceJamb:
    """A free-door jamb: the side of face ``face`` along path ``k`` at one end."""

    face: str
    k: int
    end: str  # "alpha" or "omega"
    s_component: str
    edge: str


def face_jambs(scene: FoliatedScene) -> list[FaceJamb]:
    out = []
    for face in scene.faces:
        if face.exceptional:
            continue
        try:
            limits = face_limits(scene, face.id)
        except SceneError:
            continue
        for k, path in enumerate(face.boundary_paths, start=1):
            if not path:
                continue
            out.append(FaceJamb(face.id, k, "alpha", limits[0], path[0]))
            out.append(FaceJamb(face.id, k, "omega", limits[1], path[-1]))
    return out


def repeller_attractor_path(scene: FoliatedScene, p: str) -> EdgePath:
    """A path of edges through ``p`` running from a repeller to an attractor."""
    scene.point(p)
    back: list[str] = []
    v = p
    while scene.in_edges[v]:
        eid = sorted(scene.in_edges[v])[0]
        back.append(eid)
        v = scene.edge(eid).alpha
    fwd: list[str] = []
    v = p
    while scene.out_edges[v]:
        eid = sorted(scene.out_edges[v])[0]
        fwd.append(eid)
        v = scene.edge(eid).omega
    return tuple(reversed(back)) + tuple(fwd)


def skeleton_path(scene: FoliatedScene, path: Sequence[str]) -> EdgePath:
    path = check_path(scene, path)
    for eid in path:
        if not scene.edge(eid).is_skeleton:
            raise NotSkeletonPath(f"edge {eid!r} is not a skeleton edge", entities=(eid,))
    return path
