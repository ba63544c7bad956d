"""Terse constructors for scene documents (plain dicts in the JSON layout)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Number = int | Fraction | str


def ev(x: Number) -> dict:
    if isinstance(x, str) and x in "+-0":
        return {"sign": x}
    q = Fraction(x)
    return {"num": q.numerator, "den": q.denominator}


def direction(did: str, value: Number, containment: Sequence[str] | str) -> dict:
    cont = containment if containment == "transversal" else list(containment)
    return {"id": did, "eigenvalue": ev(value), "containment": cont}


def point(pid: str, components: Sequence[str], dirs: Iterable[dict], label: str | None = None, **extra) -> dict:
    doc = {"id": pid, "e": len(components), "components": list(components), "directions": list(dirs)}
    if label:
        doc["label"] = label
    doc.update(extra)
    return doc


def edge(
    eid: str,
    alpha: str,
    omega: str,
    kind: str,
    components: Sequence[str],
    alpha_direction: str,
    omega_direction: str,
    side_at_alpha: Sequence[str] | None = None,
    side_at_omega: Sequence[str] | None = None,
) -> dict:
    doc = {
        "id": eid,
        "alpha": alpha,
        "omega": omega,
        "kind": kind,
        "components": list(components),
        "alpha_direction": alpha_direction,
        "omega_direction": omega_direction,
    }
    if side_at_alpha is not None:
        doc["side_at_alpha"] = list(side_at_alpha)
    if side_at_omega is not None:
        doc["side_at_omega"] = list(side_at_omega)
    return doc


def face(fid: str, component: str, alpha: str, omega: str, paths) -> dict:
    bp = paths if isinstance(paths, str) else [list(p) for p in paths]
    return {"id": fid, "component": component, "alpha_vertex": alpha, "omega_vertex": omega, "boundary_paths": bp}


def document(name: str, description: str, components, points, edges, faces, **extra) -> dict:
    doc = {
        "schema": 1,
        "name": name,
        "description": description,
        "components": [c if isinstance(c, dict) else {"id": c} for c in components],
        "points": list(points),
        "edges": list(edges),
        "faces": list(faces),
    }
    doc.update(extra)
    return doc
