"""Command line front end.

Exit codes: 0 all verifications pass, 1 a verification failed (report carries
witnesses), 2 input or usage error, 3 an Undecided local-divisibility question.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import PolySyntaxError, parse_poly, render, sort_vars
from .twocomplex import UNDECIDED, TwoTermComplex, determinantal_ideals, is_locally_diagonalizable, render_matrix
from .blowup import Chart, DiagonalizationFailed, NonMonomialLadder, derived_resolution
from .modgraph import (
    GenusNotOne, GraphError, StructuralMatrix, Undecided, build_structural_matrix,
    classify_singularity, leaf_report, validate_graph, vz_pipeline,
)
from .suite import SuiteConfig, enumerate_suite, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    mode: str
    input: str = None
    pipeline: str = "vz"
    seed: int = 0
    output: str = None
    format: str = "json"


# ---------------------------------------------------------------------------
# input


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror))
    except json.JSONDecodeError as exc:
        raise InputError("malformed JSON in %s: %s" % (path, exc))


def parse_point(raw):
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise InputError("point must be an object of variable -> rational")
    try:
        return {str(k): Fraction(str(v)) for k, v in raw.items()}
    except (ValueError, ZeroDivisionError):
        raise InputError("bad rational in point %r" % raw)


def parse_matrix(raw):
    rows = raw.get("matrix")
    if not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows):
        raise InputError("'matrix' must be a non-empty list of rows")
    if len({len(r) for r in rows}) != 1:
        raise InputError("ragged matrix")
    try:
        ent = [[parse_poly(str(x)) for x in r] for r in rows]
    except PolySyntaxError as exc:
        raise InputError(str(exc))
    names = set()
    for r in ent:
        for x in r:
            names.update(x.variables)
    extra = [str(v) for v in raw.get("vars", [])]
    chart = Chart.root(sort_vars(names | set(extra)))
    return TwoTermComplex(tuple(tuple(r) for r in ent), chart)


def load_input(path):
    raw = load_json(path)
    if not isinstance(raw, dict):
        raise InputError("input must be a JSON object")
    if "vertices" in raw:
        return "graph", raw, validate_graph(raw)
    if "matrix" in raw:
        return "matrix", raw, parse_matrix(raw)
    raise InputError("input has neither 'vertices' (graph) nor 'matrix'")


def _structural(kind, raw, obj):
    if kind == "graph":
        return build_structural_matrix(obj)
    zeta = raw.get("zeta")
    if zeta is None:
        zeta = list(obj.chart.vars)
    return StructuralMatrix.from_entries(obj.entries, [str(z) for z in zeta])


def _phi(kind, obj):
    return build_structural_matrix(obj).phi if kind == "graph" else obj


def _show(pt):
    return {k: str(v) for k, v in sorted(pt.items())}


def _form_json(form):
    return {
        "entries": [render(e) for e in form.entries],
        "left": render_matrix(form.left),
        "right": render_matrix(form.right),
        "blocks": [{"entry": render(e), "size": n} for e, n in form.blocks],
    }


# ---------------------------------------------------------------------------
# commands


def cmd_resolve(cfg):
    kind, raw, obj = load_input(cfg.input)
    if cfg.pipeline == "vz":
        if kind != "graph":
            raise InputError("the vz pipeline needs a dual graph input")
        rep = vz_pipeline(obj, seed=cfg.seed)
        out = {"command": "resolve", "pipeline": "vz", **rep.to_json()}
        return out, (EXIT_OK if rep.passed else EXIT_FAIL)
    phi = _phi(kind, obj)
    out = {"command": "resolve", "pipeline": "principalize", "seed": cfg.seed}
    try:
        tree = derived_resolution(phi, seed=cfg.seed)
    except DiagonalizationFailed as exc:
        out.update({"verdict": "fail", "chart": exc.path or "/", "point": _show(exc.point),
                    "reason": exc.result.reason})
        return out, (EXIT_UNDECIDED if exc.result.verdict == UNDECIDED else EXIT_FAIL)
    leaves = []
    ok = True
    for leaf in tree.leaves:
        form = tree.forms.get(leaf.path)
        good = form is not None and form.verify(tree.complexes[leaf.path])
        ok = ok and good
        leaves.append({
            "chart": leaf.path or "/",
            "vars": list(leaf.vars),
            "exceptional": ["%s:%s" % e for e in leaf.exceptional],
            "matrix": tree.complexes[leaf.path].render(),
            "diagonal": [render(e) for e in form.entries] if form else None,
            "round_trip": good,
        })
    out.update({
        "ladder": [str(m) for m in tree.ladder.monomial],
        "blowups": [{"center": list(c), "chart": p or "/"} for c, p, _ in tree.steps],
        "leaf_count": len(leaves),
        "leaves": leaves,
        "verdict": "pass" if ok else "fail",
    })
    return out, (EXIT_OK if ok else EXIT_FAIL)


def cmd_diagonalize(cfg):
    kind, raw, obj = load_input(cfg.input)
    phi = _phi(kind, obj)
    point = parse_point(raw.get("point"))
    res = is_locally_diagonalizable(phi, point)
    out = {
        "command": "diagonalize",
        "seed": cfg.seed,
        "matrix": phi.render(),
        "point": _show(point or {}),
        "verdict": res.verdict,
        "certificate": res.certificate,
    }
    code = EXIT_OK
    if res.form is not None:
        out["form"] = _form_json(res.form)
        out["verified"] = res.form.verify(phi)
        if not out["verified"]:
            code = EXIT_FAIL
    if res.obstruction is not None:
        out["obstruction"] = {"k": res.obstruction, "minor_size": res.obstruction + 1,
                              "generators": [render(w) for w in res.witness]}
    if res.reason:
        out["reason"] = res.reason
    if res.verdict == UNDECIDED:
        code = EXIT_UNDECIDED
    return out, code


def cmd_classify(cfg):
    kind, raw, obj = load_input(cfg.input)
    sm = _structural(kind, raw, obj)
    point = parse_point(raw.get("point"))
    c = classify_singularity(sm, point, seed=cfg.seed)
    out = {"command": "classify", "seed": cfg.seed, "matrix": sm.phi.render(),
           "point": _show(point or {}), "verdict": c.kind, "witness": c.witness}
    return out, EXIT_OK


def cmd_check_nc(cfg):
    kind, raw, obj = load_input(cfg.input)
    n = int(raw.get("n", obj.config.n if kind == "graph" else 1))
    if kind == "graph" and cfg.pipeline == "vz":
        rep = vz_pipeline(obj, n=n, seed=cfg.seed, classify_root=False)
        leaves = rep.leaves
    else:
        phi = _phi(kind, obj)
        tree = derived_resolution(phi, seed=cfg.seed, check=False)
        leaves = [leaf_report(tree.complexes[l.path], l, n, cfg.seed) for l in tree.leaves]
    ok = bool(leaves) and all(l.verdict == "pass" for l in leaves)
    out = {"command": "check-nc", "seed": cfg.seed, "n": n,
           "leaf_count": len(leaves), "leaves": [l.to_json() for l in leaves],
           "verdict": "pass" if ok else "fail"}
    return out, (EXIT_OK if ok else EXIT_FAIL)


def cmd_suite(cfg, args):
    scfg = SuiteConfig(max_tails=args.max_tails, max_chain=args.max_chain,
                       max_degree=args.max_degree, ns=tuple(args.n), seed=cfg.seed)
    raws = enumerate_suite(scfg)
    if args.extra:
        extra = load_json(args.extra)
        raws = raws + (extra if isinstance(extra, list) else [extra])
    summary, elapsed = run_suite(raws, seed=cfg.seed, name_filter=args.filter)
    c = summary["counts"]
    print("%d graphs, %d pass, %d fail, %d input errors, %d undecided (%.2fs)"
          % (c["graphs"], c["pass"], c["fail"], c["input_error"], c["undecided"], elapsed),
          file=sys.stderr)
    out = {"command": "suite", **summary}
    if not args.full:
        for r in out["results"]:
            rep = r.pop("report", None)
            if rep is not None:
                r["leaves"] = rep["leaf_count"]
                r["root_failures"] = len(rep["root_failures"])
    if c["undecided"]:
        return out, EXIT_UNDECIDED
    if c["fail"]:
        return out, EXIT_FAIL
    if c["input_error"]:
        return out, EXIT_INPUT
    return out, EXIT_OK


# ---------------------------------------------------------------------------
# output


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append("%s%s:" % (pad, k))
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, _scalar(v)))
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append("%s-" % pad)
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append("%s- %s" % (pad, _scalar(v)))
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat(v):
    if isinstance(v, dict):
        return not v
    return all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if isinstance(v, bool):
        return "true" if v else "false"
    return "null" if v is None else str(v)


def dump(report, fmt):
    if fmt == "text":
        return "\n".join(render_text(report)) + "\n"
    return json.dumps(report, indent=2) + "\n"


def emit(report, cfg):
    text = dump(report, cfg.format)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pipeline", choices=["vz", "principalize"], default="vz")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "text"], default="json")

    p = argparse.ArgumentParser(prog="locres", description="Local resolution checks for two-term complexes and dual graphs.")
    sub = p.add_subparsers(dest="mode", required=True)
    for name, help_ in [("resolve", "resolve a graph (vz) or matrix (principalize)"),
                        ("diagonalize", "local diagonalizability at a point"),
                        ("classify", "Regular / Topological / Geometric"),
                        ("check-nc", "components, smoothness and normal crossings per leaf")]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input")
    sp = sub.add_parser("suite", parents=[common], help="run the built-in genus-1 family")
    sp.add_argument("--filter", default=None, help="substring of graph names to keep")
    sp.add_argument("--extra", default=None, help="JSON file with extra raw graphs")
    sp.add_argument("--max-tails", type=int, default=3)
    sp.add_argument("--max-chain", type=int, default=2)
    sp.add_argument("--max-degree", type=int, default=4)
    sp.add_argument("--n", type=int, nargs="+", default=[1, 2])
    sp.add_argument("--full", action="store_true", help="include every per-leaf report")
    return p


COMMANDS = {
    "resolve": cmd_resolve,
    "diagonalize": cmd_diagonalize,
    "classify": cmd_classify,
    "check-nc": cmd_check_nc,
}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    cfg = RunConfig(args.mode, getattr(args, "input", None), args.pipeline, args.seed, args.out, args.format)
    t0 = time.perf_counter()
    try:
        if cfg.mode == "suite":
            report, code = cmd_suite(cfg, args)
        else:
            report, code = COMMANDS[cfg.mode](cfg)
    except Undecided as exc:
        report, code = _error(cfg, exc, "undecided"), EXIT_UNDECIDED
    except (InputError, GraphError, GenusNotOne, NonMonomialLadder) as exc:
        report, code = _error(cfg, exc, "input_error"), EXIT_INPUT
        print("error: %s" % exc, file=sys.stderr)
    emit(report, cfg)
    print("%s finished in %.3fs (exit %d)" % (cfg.mode, time.perf_counter() - t0, code), file=sys.stderr)
    return code


def _error(cfg, exc, verdict):
    return {"command": cfg.mode, "seed": cfg.seed, "verdict": verdict,
            "error": type(exc).__name__, "operation": cfg.mode,
            "chart": getattr(exc, "path", "/") or "/", "message": str(exc)}


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
