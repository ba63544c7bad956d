"""Command line front end.

Exit codes: 0 when the check passes, 1 when it fails (or a module error is
raised), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import fattening as fat
from . import graph_analysis as ga
from . import mark_calculus as mc
from . import numeric_oracle as no
from .core_model import FoliatedScene, load_scene
from .errors import SceneError, SchemaViolation
from .validators import HYPOTHESES, hypothesis_summary, index_counts, validate_all

JSON_SCHEMA = 1


class UsageError(Exception):
    pass


def bundled_scenes() -> Path:
    return Path(str(resources.files("foliated_scenes") / "scenes"))


def resolve_scene(name: str) -> Path:
    """The given path, or a bundled scene with the same base name."""
    p = Path(name)
    if p.exists():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    cand = bundled_scenes() / f"{stem}.json"
    if cand.exists():
        return cand
    raise UsageError(f"no such scene file: {name}")


def _load(name: str) -> FoliatedScene:
    path = resolve_scene(name)
    try:
        return load_scene(path)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from None
    except SchemaViolation as exc:
        raise UsageError(f"{path}: {exc.message}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        payload = {"schema": JSON_SCHEMA, "command": args.command, **payload}
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


# ---------------------------------------------------------------- subcommands


def cmd_validate(args) -> int:
    scene = _load(args.scene)
    report = validate_all(scene)
    summary = hypothesis_summary(report)
    held = sum(ok for _, ok in summary)
    lines = [f"{scene.name}: {held}/{len(HYPOTHESES)} hypotheses hold"]
    for name, ok in summary:
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    for v in report.violations:
        lines.append(f"  {v.severity}: {v.rule_id} {list(v.entities)}: {v.message}")
    payload = {
        "scene": scene.name,
        "hypotheses": {name: ok for name, ok in summary},
        **report.as_dict(),
    }
    _emit(args, payload, "\n".join(lines))
    return 0 if report.passed else 1


def cmd_analyze(args) -> int:
    scene = _load(args.scene)
    classes = {}
    for p in scene.points:
        vc = scene.try_class(p.id)
        classes[p.id] = None if vc is None else {"kind": vc.kind, "dim_w": vc.dim_w, "e": p.e}
    ell = ga.lengths(scene)
    layers = [{"vertices": sorted(l.vertices), "edges": sorted(l.edges)} for l in ga.filtration(scene)]
    payload = {
        "scene": scene.name,
        "classes": classes,
        "counts": index_counts(scene),
        "lengths": ell,
        "topological_order": ga.topological_order(scene),
        "filtration": layers,
        "s_components": [nu.id for nu in scene.s_components],
    }
    lines = [f"{scene.name}: {len(scene.points)} points, {len(scene.edges)} edges, {len(scene.faces)} faces"]
    for pid, c in classes.items():
        desc = "unclassified" if c is None else f"{c['kind']} (e={c['e']}, dim W={c['dim_w']})"
        lines.append(f"  {pid:>6}  length {ell[pid]}  {desc}")
    lines.append("  counts: " + ", ".join(f"{k}={v}" for k, v in payload["counts"].items()))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_resonance(args) -> int:
    scene = _load(args.scene)
    chains = mc.find_resonances(scene)
    traces = [mc.chain_trace(scene, c) for c in chains]
    lines = [f"{scene.name}: {len(chains)} resonant chain(s)"]
    for t in traces:
        rho = " -> ".join(f"{q['value']}[{q['component']}]" for q in t["trace"])
        lines.append(f"  {' '.join(t['chain'])}: {t['start']} -> {t['end']}  rho {rho}, target {t['target']['value']}")
    _emit(args, {"scene": scene.name, "resonant_chains": traces}, "\n".join(lines))
    return 1 if chains else 0


def cmd_theta(args) -> int:
    scene = _load(args.scene)
    paths = mc.all_theta_paths(scene)
    pis = {}
    for p in scene.points:
        vc = scene.try_class(p.id)
        if vc is not None and vc.is_transversal:
            pis[p.id] = mc.pi_paths(scene, p.id)
    report = mc.check_theta_wellformed(scene)
    lines = [f"{scene.name}: {len(paths)} saturation path(s)"]
    for nu, tp in sorted(paths.items()):
        lines.append(f"  theta({nu}) = {' '.join(tp.edges)} -> {tp.terminal} ({tp.orientation})")
    for p, pp in sorted(pis.items()):
        for path, term in zip(pp.paths, pp.terminals):
            lines.append(f"  pi({p}) = {' '.join(path)} -> {term} ({pp.orientation})")
    for v in report.errors:
        lines.append(f"  error: {v.rule_id} {list(v.entities)}: {v.message}")
    payload = {
        "scene": scene.name,
        "theta": {nu: tp.as_dict() for nu, tp in sorted(paths.items())},
        "pi": {p: pp.as_dict() for p, pp in sorted(pis.items())},
        "report": report.as_dict(),
    }
    _emit(args, payload, "\n".join(lines))
    return 0 if report.passed else 1


def cmd_fatten(args) -> int:
    scene = _load(args.scene)
    model = fat.build_distinguished(scene)
    payload: dict = {"scene": scene.name, "model": model.as_dict()}
    lines = [
        f"{scene.name}: {len(model.chimneys)} chimneys, {len(model.tubes)} tubes, "
        f"distinguished={'yes' if model.distinguished else 'no'}"
    ]
    if not model.distinguished:
        lines += [f"  error: {v.rule_id} {list(v.entities)}: {v.message}" for v in model.problems]
        _emit(args, payload, "\n".join(lines))
        return 1
    its = fat.stain_itineraries(model)
    report = fat.check_good_saturations(model, its)
    lines.append(f"  free doors: {len(model.free_doors())}")
    if args.check_ds:
        payload["good_saturations"] = report.as_dict()
        payload["itineraries"] = [it.as_dict() for it in its]
        lines.append(f"  good saturations: {'pass' if report.passed else 'FAIL'}")
        lines += [f"    {v.rule_id} {list(v.entities)}: {v.message}" for v in report.errors]
    if not report.passed:
        _emit(args, payload, "\n".join(lines))
        return 1
    frontier = fat.extend_support(model, report)
    payload["frontier"] = frontier.as_dict()
    payload["frontier_types"] = [t.as_dict() for t in fat.classify_fattening_frontier(model)]
    payload["disjoint_family"] = fat.disjoint_family_report(model, its)
    lines.append(f"  transversal discs: {len(frontier.discs)}")
    for d in frontier.discs:
        kinds = sorted({f"{s.type}" for s in d.segments})
        lines.append(f"    T_{d.point}: {d.kind}, dim W={d.dim_w}, types {', '.join(kinds)}")
    ok = payload["disjoint_family"]["passed"]
    lines.append(f"  disjoint family: {'pass' if ok else 'FAIL'}")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def _triple(s: str) -> tuple[Fraction, Fraction, Fraction]:
    try:
        parts = [Fraction(x) for x in s.split(",")]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected three rationals a,li,lj, got {s!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three rationals a,li,lj, got {s!r}")
    return parts[0], parts[1], parts[2]


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def cmd_oracle(args) -> int:
    a, li, lj = args.model
    model = no.LinearSaddleModel(a, li, lj, eps=args.perturb)
    if args.kind == "blowup":
        if args.rho is None:
            raise UsageError("--rho is required for --kind blowup")
        eig = no.blowup_pullback_eigenvalues(model, args.rho)
        payload = {"kind": "blowup", "rho": mc.fmt(args.rho), "eigenvalues": [mc.fmt(x) for x in eig]}
        _emit(args, payload, f"blow-up with weight {mc.fmt(args.rho)}: eigenvalues {', '.join(mc.fmt(x) for x in eig)}")
        return 0
    if args.kind == "trace":
        rep = no.verify_trace_to_angle(model, method=args.method)
    else:
        if args.rho is None:
            raise UsageError("--rho is required for --kind transition")
        rep = no.verify_transition(model, args.rho, method=args.method)
    ok = rep.error <= args.tol
    d = rep.as_dict()
    text = (
        f"{rep.kind} ({rep.method}): formula {d['formula']} = {d['formula_float']:.6g}, "
        f"measured {d['measured']:.9g}, error {d['error']:.2e} [{'ok' if ok else 'FAIL'}]"
    )
    _emit(args, {"report": d, "tolerance": args.tol, "passed": ok}, text)
    return 0 if ok else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foliated-scenes",
        description="Analyze combinatorial scenes of three-dimensional vector-field singularities.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def scene_cmd(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("scene", help="scene file, or the name of a bundled scene")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    scene_cmd("validate", "Check the five structural hypotheses.").set_defaults(func=cmd_validate)
    scene_cmd("analyze", "Classify points and print lengths and the filtration.").set_defaults(func=cmd_analyze)
    scene_cmd("resonance", "List resonant chains with their quasi-order traces.").set_defaults(func=cmd_resonance)
    scene_cmd("theta", "Compute the saturation paths of every saddle.").set_defaults(func=cmd_theta)
    p = scene_cmd("fatten", "Build a distinguished fattening and its frontier report.")
    p.add_argument("--check-ds", action="store_true", help="include the good-saturation checks and itineraries")
    p.set_defaults(func=cmd_fatten)

    p = sub.add_parser(
        "oracle",
        help="Numerically check transition formulas on a linear saddle.",
        description="Numerically check transition formulas on a linear saddle.",
    )
    p.add_argument("--model", type=_triple, required=True, metavar="A,LI,LJ", help="eigenvalues alpha,lambda_i,lambda_j")
    p.add_argument("--rho", type=_rational, help="incoming quasi-order, e.g. 7/2")
    p.add_argument("--kind", choices=("transition", "trace", "blowup"), default="transition")
    p.add_argument("--perturb", type=float, default=0.0, metavar="EPS", help="nonlinear term of size EPS")
    p.add_argument("--method", choices=("exact", "rk4"), default="exact")
    p.add_argument("--tol", type=float, default=1e-6, help="accepted error (default 1e-6)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_oracle)
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Let ``--model -1,1,2`` through: argparse would read the value as an option."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--model", "--rho", "--perturb") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SceneError as exc:
        if getattr(args, "format", "text") == "json":
            _emit(args, {"diagnostic": exc.as_dict()}, "")
        print(f"error: [{exc.code}] {exc.message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
