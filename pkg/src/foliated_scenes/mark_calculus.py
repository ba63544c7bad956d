"""Exact quasi-order calculus along the skeleton.

A quasi-order is a positive rational attached to a skeleton edge and measured
against one of the two divisor components containing it; against the other
component the value is the reciprocal.  Weights, transitions through corner
saddles, resonance detection and the saturation paths of trace marks all
live here and use ``fractions.Fraction`` throughout.

Saturation paths are computed with the flow pointing away from the saddle
along its one-dimensional manifold.  When that manifold is stable the
computation runs on the time-reversed scene and the result is tagged
``backward``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import graph_analysis as ga
from .core_model import FoliatedScene, SComponent, VertexClass
from .errors import (
    DomainError,
    IrrationalEigenvalue,
    NotASaddle,
    NotInSPrime,
    NotSaddleConnectionChain,
    NotTransversalSaddle,
    ResonantStep,
    SceneError,
)
from .validators import ERROR, INFO, ValidationReport, Violation


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Weight:
    value: Fraction
    point: str
    component: str


@dataclass(frozen=True)
class QuasiOrder:
    value: Fraction
    component: str
    edge: str

    def __post_init__(self):
        if self.value <= 0:
            raise DomainError(f"quasi-orders are positive, got {self.value}", entities=(self.edge,))

    def against(self, scene: FoliatedScene, component: str) -> QuasiOrder:
        """The same angle mark measured against ``component``."""
        comps = scene.edge(self.edge).components
        if component not in comps:
            raise DomainError(f"edge {self.edge!r} does not lie in {component!r}", entities=(self.edge, component))
        if component == self.component:
            return self
        return QuasiOrder(1 / self.value, component, self.edge)

    def as_dict(self) -> dict:
        return {"value": fmt(self.value), "component": self.component, "edge": self.edge}


@dataclass(frozen=True)
class TransitionMap:
    """rho_out = a * rho_in + b on (lower, +inf), quasi-orders against ``component``."""

    from_edge: str
    to_edge: str
    point: str
    component: str
    a: Fraction
    b: Fraction
    lower: Fraction

    def apply(self, rho: Fraction) -> Fraction:
        if rho == self.lower:
            raise ResonantStep(
                f"quasi-order {rho} equals the weight at {self.point}", entities=(self.point, self.from_edge)
            )
        if rho < self.lower:
            raise DomainError(
                f"quasi-order {rho} is below the weight {self.lower} at {self.point}",
                entities=(self.point, self.from_edge),
            )
        return self.a * rho + self.b

    def invert(self, rho_out: Fraction) -> Fraction:
        if rho_out <= 0:
            raise DomainError(f"outgoing quasi-order must be positive, got {rho_out}", entities=(self.point,))
        return (rho_out - self.b) / self.a


@dataclass(frozen=True)
class MarkDescriptor:
    kind: str  # "trace-mark", "angle-mark" or "fixed-mark"
    anchor: str  # s-component id, edge id or transversal saddle id
    attachment: str  # edge the mark's saturation first follows


@dataclass(frozen=True)
class ResonantAt:
    step: int
    point: str
    values: tuple[QuasiOrder, ...]


@dataclass(frozen=True)
class Escaped:
    """The tracked quasi-order fell outside a transition domain; the
    saturation accumulates on ``edge`` instead of the next edge of the chain."""

    step: int
    point: str
    edge: str
    values: tuple[QuasiOrder, ...]


# ---------------------------------------------------------------- local data at points of S'


def _exact(scene: FoliatedScene, pid: str, did: str) -> Fraction:
    ev = scene.point(pid).direction(did).eigenvalue
    if ev.value is None:
        raise IrrationalEigenvalue(
            f"direction {did!r} at {pid!r} carries only a sign, the calculus needs an exact rational",
            entities=(pid, did),
        )
    return ev.value


def _s_prime(scene: FoliatedScene, pid: str) -> VertexClass:
    vc = scene.vertex_class(pid)
    if not vc.s_prime:
        raise NotInSPrime(
            f"{pid!r} is not a corner tangential saddle nor an angle transversal saddle", entities=(pid,)
        )
    return vc


def _w2_direction(scene: FoliatedScene, pid: str, component: str) -> str:
    vc = scene.vertex_class(pid)
    point = scene.point(pid)
    for did in vc.w2:
        if point.direction(did).lies_in(component):
            return did
    raise DomainError(f"no W2 direction of {pid!r} lies in {component!r}", entities=(pid, component))


def local_eigenvalues(scene: FoliatedScene, pid: str) -> tuple[Fraction, dict[str, Fraction]]:
    """(alpha, {component: lambda}) at a point of S'.  ``lambda`` for a component
    containing W1 is the eigenvalue of the W2 direction inside that component."""
    vc = _s_prime(scene, pid)
    alpha = _exact(scene, pid, vc.w1[0])
    lam = {c: _exact(scene, pid, _w2_direction(scene, pid, c)) for c in vc.w1_components}
    return alpha, lam


def weight(scene: FoliatedScene, p: str, component: str) -> Weight:
    vc = _s_prime(scene, p)
    if component not in vc.w1_components:
        raise DomainError(f"W1 of {p!r} does not lie in {component!r}", entities=(p, component))
    _, lam = local_eigenvalues(scene, p)
    (other,) = [c for c in vc.w1_components if c != component]
    return Weight(lam[other] / lam[component], p, component)


def w1_edge(scene: FoliatedScene, nu_id: str) -> str:
    """The edge containing the one-dimensional manifold of the saddle on the side of ``nu``."""
    nu = scene.s_component(nu_id)
    vc = scene.vertex_class(nu.point)
    if vc.is_node:
        raise NotASaddle(f"{nu.point!r} is a node", entities=(nu.point,))
    cands = sorted(e for e in set(scene.edges_meeting(nu_id)) if scene.edge(e).direction_at(nu.point) in vc.w1)
    if len(cands) != 1:
        raise SceneError(
            f"s-component {nu_id!r} should meet exactly one edge along W1, found {cands}", entities=(nu_id, *cands)
        )
    return cands[0]


def exit_edge(scene: FoliatedScene, p: str, component: str) -> str:
    """The edge leaving the saddle ``p`` along W2 inside ``component``."""
    did = _w2_direction(scene, p, component)
    want = scene.point(p).direction(did).containment
    cands = sorted(
        eid for eid in scene.edges_at(p) if scene.edge(eid).direction_at(p) == did and scene.edge(eid).components == want
    )
    if len(cands) != 1:
        raise SceneError(f"expected one edge at {p!r} along {did!r} inside {list(want)}, found {cands}", entities=(p,))
    return cands[0]


def trace_to_angle(scene: FoliatedScene, p: str, nu: str) -> tuple[QuasiOrder, QuasiOrder]:
    """Quasi-orders of the saturated trace mark on the W1 edge, against each component."""
    vc = _s_prime(scene, p)
    if scene.s_component(nu).point != p:
        raise DomainError(f"s-component {nu!r} is not at {p!r}", entities=(p, nu))
    sigma = w1_edge(scene, nu)
    i, j = vc.w1_components
    return (
        QuasiOrder(weight(scene, p, i).value, i, sigma),
        QuasiOrder(weight(scene, p, j).value, j, sigma),
    )


# ---------------------------------------------------------------- transitions


def _corner_w1_edge(scene: FoliatedScene, p: str) -> tuple[VertexClass, str]:
    vc = _s_prime(scene, p)
    if scene.point(p).e != 3:
        raise DomainError(f"the explicit transition formula needs a corner saddle, {p!r} is not one", entities=(p,))
    (nu,) = [n.id for n in scene.s_components if n.point == p]
    return vc, w1_edge(scene, nu)


def transition_map(scene: FoliatedScene, p: str, component: str) -> TransitionMap:
    vc, sigma = _corner_w1_edge(scene, p)
    alpha, lam = local_eigenvalues(scene, p)
    if component not in lam:
        raise DomainError(f"W1 of {p!r} does not lie in {component!r}", entities=(p, component))
    (other,) = [c for c in lam if c != component]
    return TransitionMap(
        from_edge=sigma,
        to_edge=exit_edge(scene, p, component),
        point=p,
        component=component,
        a=-lam[component] / alpha,
        b=lam[other] / alpha,
        lower=lam[other] / lam[component],
    )


def select_exit(scene: FoliatedScene, p: str, rho: QuasiOrder) -> tuple[str, str]:
    """The component eps with rho_eps above the weight, and the W2 edge inside it."""
    vc = _s_prime(scene, p)
    for comp in sorted(vc.w1_components):
        r = rho.against(scene, comp).value
        w = weight(scene, p, comp).value
        if r == w:
            raise ResonantStep(
                f"quasi-order {fmt(r)} against {comp} equals the weight at {p}", entities=(p, rho.edge)
            )
        if r > w:
            return comp, exit_edge(scene, p, comp)
    raise AssertionError("reciprocal pair cannot both sit below the weights")


def transition(scene: FoliatedScene, sigma: str, p: str, rho: QuasiOrder) -> tuple[str, QuasiOrder]:
    vc, w1 = _corner_w1_edge(scene, p)
    if sigma != w1 or rho.edge != sigma:
        raise DomainError(
            f"transition at {p!r} starts from its W1 edge {w1!r} with a quasi-order attached to it",
            entities=(p, sigma, rho.edge),
        )
    eps, tau = select_exit(scene, p, rho)
    tm = transition_map(scene, p, eps)
    return tau, QuasiOrder(tm.apply(rho.against(scene, eps).value), eps, tau)


def inverse_transition(scene: FoliatedScene, tau: str, p: str, rho_out: QuasiOrder) -> QuasiOrder:
    vc, sigma = _corner_w1_edge(scene, p)
    if rho_out.edge != tau:
        raise DomainError(f"quasi-order is attached to {rho_out.edge!r}, not {tau!r}", entities=(tau,))
    shared = [c for c in scene.edge(tau).components if c in vc.w1_components]
    if len(shared) != 1 or tau != exit_edge(scene, p, shared[0]):
        raise DomainError(f"{tau!r} is not a W2 skeleton edge at {p!r}", entities=(tau, p))
    eps = shared[0]
    tm = transition_map(scene, p, eps)
    return QuasiOrder(tm.invert(rho_out.against(scene, eps).value), eps, sigma)


# ---------------------------------------------------------------- chains


def _shared(scene: FoliatedScene, e1: str, e2: str) -> str:
    common = set(scene.edge(e1).components) & set(scene.edge(e2).components)
    if len(common) != 1:
        raise NotSaddleConnectionChain(f"edges {e1!r} and {e2!r} do not share exactly one component", entities=(e1, e2))
    return common.pop()


def propagate_quasi_order(
    scene: FoliatedScene, gamma: Sequence[str], rho0: QuasiOrder
) -> list[QuasiOrder] | ResonantAt | Escaped:
    """Carry a quasi-order along a skeleton chain through corner saddles.

    The i-th entry (i < n) is measured against the component shared by
    edges i and i+1; the last entry is the output of the final transition,
    measured against the component shared by the last two edges.
    """
    gamma = ga.skeleton_path(scene, gamma)
    if not gamma:
        raise NotSaddleConnectionChain("empty chain")
    if rho0.edge != gamma[0]:
        raise DomainError(f"initial quasi-order is attached to {rho0.edge!r}, not {gamma[0]!r}", entities=(rho0.edge,))
    n = len(gamma) - 1
    if n == 0:
        return [rho0]
    values = [rho0.against(scene, _shared(scene, gamma[0], gamma[1]))]
    for i in range(1, n + 1):
        prev, nxt = gamma[i - 1], gamma[i]
        p = scene.edge(prev).omega
        vc = scene.vertex_class(p)
        if not (vc.s_prime and scene.point(p).e == 3):
            raise NotSaddleConnectionChain(f"chain passes through {p!r}, which is not a corner saddle", entities=(p,))
        comp = _shared(scene, prev, nxt)
        rho = values[-1]
        arriving_w1 = scene.edge(prev).omega_direction in vc.w1
        leaving_w1 = scene.edge(nxt).alpha_direction in vc.w1
        if arriving_w1 and not leaving_w1:
            tm = transition_map(scene, p, comp)
            r = rho.against(scene, comp).value
            if r == tm.lower:
                return ResonantAt(i, p, tuple(values))
            if r < tm.lower:
                (other,) = [c for c in vc.w1_components if c != comp]
                return Escaped(i, p, exit_edge(scene, p, other), tuple(values))
            out = QuasiOrder(tm.apply(r), comp, nxt)
        elif leaving_w1 and not arriving_w1:
            out = inverse_transition(scene, prev, p, rho)
            out = QuasiOrder(out.against(scene, comp).value, comp, nxt)
        else:
            raise NotSaddleConnectionChain(
                f"at {p!r} the chain must switch between W1 and W2, edges {prev!r} -> {nxt!r} do not", entities=(p,)
            )
        if i < n:
            out = out.against(scene, _shared(scene, nxt, gamma[i + 1]))
        values.append(out)
    return values


def _is_saddle_connection(scene: FoliatedScene, eid: str) -> bool:
    e = scene.edge(eid)
    ca, cw = scene.try_class(e.alpha), scene.try_class(e.omega)
    if ca is None or cw is None:
        return False
    return any(ca.is_saddle_in(c) and cw.is_saddle_in(c) for c in e.components)


def _check_chain(scene: FoliatedScene, gamma: Sequence[str]) -> tuple[str, ...]:
    try:
        gamma = ga.skeleton_path(scene, gamma)
    except SceneError as exc:
        raise NotSaddleConnectionChain(exc.message, entities=exc.entities) from None
    if not gamma:
        raise NotSaddleConnectionChain("empty chain")
    for eid in gamma:
        if not _is_saddle_connection(scene, eid):
            raise NotSaddleConnectionChain(f"edge {eid!r} is not a saddle connection", entities=(eid,))
    first, last = scene.edge(gamma[0]), scene.edge(gamma[-1])
    for pid, did in ((first.alpha, first.alpha_direction), (last.omega, last.omega_direction)):
        vc = scene.vertex_class(pid)
        if not vc.s_prime or did not in vc.w1:
            raise NotSaddleConnectionChain(
                f"chain must start and end along W1 of points of S'; {pid!r} does not qualify", entities=(pid,)
            )
    return gamma


def is_s_resonant(scene: FoliatedScene, gamma: Sequence[str]) -> bool:
    gamma = _check_chain(scene, gamma)
    first, last = scene.edge(gamma[0]), scene.edge(gamma[-1])
    p, q = first.alpha, last.omega
    if len(gamma) == 1:
        comp = first.components[0]
        return weight(scene, p, comp).value == weight(scene, q, comp).value
    d0 = _shared(scene, gamma[0], gamma[1])
    rho0 = QuasiOrder(weight(scene, p, d0).value, d0, gamma[0])
    result = propagate_quasi_order(scene, gamma, rho0)
    if not isinstance(result, list):
        return False
    final = result[-1]
    return final.value == weight(scene, q, final.component).value


def chain_trace(scene: FoliatedScene, gamma: Sequence[str]) -> dict:
    """Quasi-order trace of a chain, for reports."""
    gamma = _check_chain(scene, gamma)
    first, last = scene.edge(gamma[0]), scene.edge(gamma[-1])
    p, q = first.alpha, last.omega
    if len(gamma) == 1:
        comp = first.components[0]
        wp, wq = weight(scene, p, comp).value, weight(scene, q, comp).value
        return {
            "chain": list(gamma),
            "start": p,
            "end": q,
            "trace": [QuasiOrder(wp, comp, gamma[0]).as_dict()],
            "target": {"value": fmt(wq), "component": comp},
            "resonant": wp == wq,
        }
    d0 = _shared(scene, gamma[0], gamma[1])
    rho0 = QuasiOrder(weight(scene, p, d0).value, d0, gamma[0])
    result = propagate_quasi_order(scene, gamma, rho0)
    out = {"chain": list(gamma), "start": p, "end": q}
    if isinstance(result, list):
        target = weight(scene, q, result[-1].component).value
        out.update(
            trace=[r.as_dict() for r in result],
            target={"value": fmt(target), "component": result[-1].component},
            resonant=result[-1].value == target,
        )
    elif isinstance(result, ResonantAt):
        out.update(trace=[r.as_dict() for r in result.values], resonant=False, stopped={"resonant_at": result.point})
    else:
        out.update(
            trace=[r.as_dict() for r in result.values],
            resonant=False,
            stopped={"escaped_at": result.point, "escape_edge": result.edge},
        )
    return out


def candidate_chains(scene: FoliatedScene) -> list[tuple[str, ...]]:
    """Every skeleton chain of saddle connections from W1 of a point of S' to W1 of another."""
    chains: list[tuple[str, ...]] = []

    def extend(path: list[str]) -> None:
        e = scene.edge(path[-1])
        v = e.omega
        vc = scene.try_class(v)
        if vc is None:
            return
        arriving_w1 = e.omega_direction in vc.w1
        if vc.s_prime and arriving_w1:
            chains.append(tuple(path))
        if not (vc.s_prime and scene.point(v).e == 3):
            return
        for nxt in sorted(scene.out_edges[v]):
            ne = scene.edge(nxt)
            if not ne.is_skeleton or not _is_saddle_connection(scene, nxt):
                continue
            leaving_w1 = ne.alpha_direction in vc.w1
            if arriving_w1 != leaving_w1:
                extend(path + [nxt])

    for point in sorted(scene.points, key=lambda q: q.id):
        vc = scene.try_class(point.id)
        if vc is None or not vc.s_prime:
            continue
        for eid in sorted(scene.out_edges[point.id]):
            e = scene.edge(eid)
            if e.is_skeleton and e.alpha_direction in vc.w1 and _is_saddle_connection(scene, eid):
                extend([eid])
    return chains


def find_resonances(scene: FoliatedScene) -> list[tuple[str, ...]]:
    ga.topological_order(scene)
    return [c for c in candidate_chains(scene) if is_s_resonant(scene, c)]


# ---------------------------------------------------------------- saturation paths


@dataclass(frozen=True)
class ThetaPath:
    s_component: str
    edges: tuple[str, ...]
    terminal: str
    orientation: str  # "forward" when W1 is unstable, else "backward"
    quasi_orders: tuple[QuasiOrder | None, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "s_component": self.s_component,
            "edges": list(self.edges),
            "terminal": self.terminal,
            "orientation": self.orientation,
            "quasi_orders": [None if q is None else q.as_dict() for q in self.quasi_orders],
        }


def _oriented(scene: FoliatedScene, backward: bool) -> FoliatedScene:
    return scene.reversed() if backward else scene


def theta_path(scene: FoliatedScene, nu: str) -> ThetaPath:
    s = scene.s_component(nu)
    vc = scene.vertex_class(s.point)
    if vc.is_node:
        raise NotASaddle(f"{s.point!r} is a node; trace marks live at saddles", entities=(s.point,))
    backward = bool(vc.w1_stable)
    edges, terminal, trace = _theta_forward(_oriented(scene, backward), s)
    return ThetaPath(nu, tuple(edges), terminal, "backward" if backward else "forward", tuple(trace))


def _theta_forward(sc: FoliatedScene, nu: SComponent):
    p = nu.point
    sigma = w1_edge(sc, nu.id)
    if sc.edge(sigma).alpha != p:
        raise SceneError(f"W1 edge {sigma!r} does not leave {p!r}", entities=(sigma, p))
    rho = _start_rho(sc, p, nu.id, sigma)
    path, trace, seen = [sigma], [rho], {p}
    while True:
        e = sc.edge(sigma)
        v = e.omega
        if v in seen:
            raise SceneError(f"saturation path revisits {v!r}", entities=(v,))
        seen.add(v)
        cv = sc.vertex_class(v)
        if cv.is_node:
            return path, v, trace
        if not e.is_skeleton:
            if not cv.is_tangential:
                raise SceneError(
                    f"trace edge {e.id!r} reaches transversal saddle {v!r}; scene is not Morse-Smale",
                    entities=(e.id, v),
                )
            (nu1,) = [n.id for n in sc.s_components if n.point == v]
            sigma = w1_edge(sc, nu1)
            rho = _start_rho(sc, v, nu1, sigma)
        elif e.omega_direction in cv.w2:
            (nu1,) = [n.id for n in sc.s_components if n.point == v]
            nxt = w1_edge(sc, nu1)
            rho = inverse_transition(sc, sigma, v, rho) if sc.edge(nxt).is_skeleton else None
            sigma = nxt
        elif e.omega_direction in cv.w1:
            if rho is None:
                raise SceneError(f"no quasi-order tracked on skeleton edge {e.id!r}", entities=(e.id,))
            if sc.point(v).e == 3:
                sigma, rho = transition(sc, sigma, v, rho)
            else:
                _, sigma = select_exit(sc, v, rho)
                rho = None
        else:
            raise SceneError(f"edge {e.id!r} reaches {v!r} off its invariant manifolds", entities=(e.id, v))
        if sc.edge(sigma).alpha != v:
            raise SceneError(f"continuation edge {sigma!r} does not leave {v!r}", entities=(sigma, v))
        path.append(sigma)
        trace.append(rho)


def _start_rho(sc: FoliatedScene, p: str, nu: str, sigma: str) -> QuasiOrder | None:
    if not sc.edge(sigma).is_skeleton:
        return None
    rho_i, _ = trace_to_angle(sc, p, nu)
    return rho_i


@dataclass(frozen=True)
class PiPaths:
    point: str
    paths: tuple[tuple[str, ...], tuple[str, ...]]
    terminals: tuple[str, str]
    orientation: str

    def as_dict(self) -> dict:
        return {
            "point": self.point,
            "paths": [list(p) for p in self.paths],
            "terminals": list(self.terminals),
            "orientation": self.orientation,
        }


def pi_paths(scene: FoliatedScene, p: str) -> PiPaths:
    vc = scene.vertex_class(p)
    if not vc.is_transversal:
        raise NotTransversalSaddle(f"{p!r} is not a transversal saddle", entities=(p,))
    backward = bool(vc.w2_stable)
    sc = _oriented(scene, backward)
    w2_edges = sorted(eid for eid in sc.out_edges[p] if sc.edge(eid).alpha_direction in vc.w2)
    if len(w2_edges) != 2:
        raise SceneError(f"transversal saddle {p!r} needs two W2 edges, found {w2_edges}", entities=(p,))
    paths, terminals = [], []
    for sigma in w2_edges:
        v = sc.edge(sigma).omega
        cv = sc.vertex_class(v)
        if cv.is_node:
            paths.append((sigma,))
            terminals.append(v)
        elif cv.is_tangential:
            (nu1,) = [n.id for n in sc.s_components if n.point == v]
            edges, terminal, _ = _theta_forward(sc, sc.s_component(nu1))
            paths.append((sigma, *edges))
            terminals.append(terminal)
        else:
            raise SceneError(f"W2 edge {sigma!r} of {p!r} ends at another transversal saddle", entities=(sigma, p))
    return PiPaths(p, (paths[0], paths[1]), (terminals[0], terminals[1]), "backward" if backward else "forward")


def theta_violations(scene: FoliatedScene, tp: ThetaPath) -> list[Violation]:
    """Structural checks on one saturation path."""
    out = []
    sc = _oriented(scene, tp.orientation == "backward")
    nu = scene.s_component(tp.s_component)
    tag = f"saturation path of {tp.s_component}"
    if not tp.edges:
        return [Violation("theta.empty", (tp.s_component,), f"{tag} is empty")]
    try:
        ga.check_path(sc, tp.edges)
    except SceneError as exc:
        out.append(Violation("theta.not-a-path", (tp.s_component, *exc.entities), f"{tag}: {exc.message}"))
        return out
    try:
        expected_first = w1_edge(sc, tp.s_component)
    except SceneError as exc:
        expected_first = None
        out.append(Violation("theta.start", (tp.s_component,), f"{tag}: {exc.message}"))
    if expected_first is not None and tp.edges[0] != expected_first:
        out.append(
            Violation("theta.start", (tp.s_component, tp.edges[0]), f"{tag} must start with the W1 edge {expected_first}")
        )
    verts = ga.path_vertices(sc, tp.edges)
    if verts[0] != nu.point:
        out.append(Violation("theta.start", (tp.s_component,), f"{tag} does not start at {nu.point}"))
    if len(set(verts)) != len(verts):
        out.append(Violation("theta.not-simple", (tp.s_component,), f"{tag} revisits a vertex"))
    end_class = sc.try_class(verts[-1])
    if verts[-1] != tp.terminal or end_class is None or not end_class.is_node:
        out.append(
            Violation("theta.terminal", (tp.s_component, verts[-1]), f"{tag} does not terminate at a node")
        )
    for eid in tp.edges:
        e = sc.edge(eid)
        cw = sc.try_class(e.omega)
        if not e.is_skeleton and cw is not None and cw.is_transversal:
            verb = "starts" if tp.orientation == "backward" else "ends"
            out.append(
                Violation(
                    "theta.trace-at-transversal",
                    (tp.s_component, eid, e.omega),
                    f"{tag}: trace edge {eid} {verb} at transversal saddle {e.omega}",
                )
            )
    return out


def all_theta_paths(scene: FoliatedScene) -> dict[str, ThetaPath]:
    out = {}
    for nu in scene.s_components:
        vc = scene.try_class(nu.point)
        if vc is not None and vc.is_saddle:
            out[nu.id] = theta_path(scene, nu.id)
    return out


def check_theta_wellformed(
    scene: FoliatedScene, overrides: Mapping[str, ThetaPath] | None = None
) -> ValidationReport:
    out: list[Violation] = []
    paths: dict[str, ThetaPath] = {}
    for nu in scene.s_components:
        vc = scene.try_class(nu.point)
        if vc is None or vc.is_node:
            continue
        if overrides and nu.id in overrides:
            paths[nu.id] = overrides[nu.id]
            continue
        try:
            paths[nu.id] = theta_path(scene, nu.id)
        except SceneError as exc:
            out.append(Violation("theta.computation", (nu.id, *exc.entities), exc.message, ERROR))
    for tp in paths.values():
        out.extend(theta_violations(scene, tp))
    supports = {}
    for p in scene.points:
        vc = scene.try_class(p.id)
        if vc is not None and vc.is_transversal:
            try:
                pp = pi_paths(scene, p.id)
            except SceneError as exc:
                out.append(Violation("theta.computation", (p.id, *exc.entities), exc.message, ERROR))
                continue
            supports[p.id] = set(pp.paths[0]) | set(pp.paths[1])
    ids = sorted(supports)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            common = supports[a] & supports[b]
            if common:
                out.append(
                    Violation(
                        "theta.shared-support",
                        (a, b, *sorted(common)),
                        f"saturations of W2 at {a} and {b} accumulate on common edges (closures only)",
                        INFO,
                    )
                )
    return ValidationReport(tuple(out))
