"""Small hand-made scenes used across test modules."""

from foliated_scenes.builder import direction as d
from foliated_scenes.builder import document, edge, point
from foliated_scenes.core_model import build_scene

COMPS = ["D1", "D2", "D3"]


def corner(pid, t12, t13, t23):
    return point(pid, COMPS, [d("t12", t12, ["D1", "D2"]), d("t13", t13, ["D1", "D3"]), d("t23", t23, ["D2", "D3"])])


def single_corner(alpha, lambda_i, lambda_j):
    """Corner c whose W1 runs along D1 n D2 with eigenvalue alpha.

    lambda_i belongs to the W2 direction inside D1 and lambda_j to the one
    inside D2, so the weight against D1 is lambda_j / lambda_i.
    """
    s = 1 if alpha < 0 else -1
    pts = [
        corner("c", alpha, lambda_i, lambda_j),
        corner("r", s, s, s),
        corner("x", -s, -s, -s),
        corner("y", -s, -s, -s),
    ]
    into = ("r", "c") if alpha < 0 else ("c", "r")
    out1 = ("c", "x") if alpha < 0 else ("x", "c")
    out2 = ("c", "y") if alpha < 0 else ("y", "c")
    edges = [
        edge("w1", *into, "skeleton", ["D1", "D2"], "t12", "t12"),
        edge("o1", *out1, "skeleton", ["D1", "D3"], "t13", "t13"),
        edge("o2", *out2, "skeleton", ["D2", "D3"], "t23", "t23"),
    ]
    return build_scene(document("corner", "", COMPS, pts, edges, []))
