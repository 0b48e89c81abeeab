"""The built-in family of genus-1 compact-type graphs and a batch runner."""

import time
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .modgraph import Undecided, validate_graph, vz_pipeline


@dataclass(frozen=True)
class SuiteConfig:
    max_tails: int = 3
    max_chain: int = 2
    max_degree: int = 4
    ns: tuple = (1, 2)
    k: int = 1
    seed: int = 0


def tail_types(max_chain, max_degree):
    """Chains of rational vertices, each of positive degree, listed core-outwards."""
    out = []

    def grow(prefix, left):
        if prefix:
            out.append(tuple(prefix))
        if len(prefix) == max_chain:
            return
        for a in range(1, left + 1):
            grow(prefix + [a], left - a)

    grow([], max_degree)
    return sorted(out, key=lambda t: (sum(t), len(t), t))


def graph_from_tails(tails, n=1, k=1, seed=0):
    """Raw JSON graph: genus-1 contracted core with the given chains attached."""
    vertices = [{"id": "core", "genus": 1, "degree": 0}]
    edges, divisors = [], []
    for a, chain in enumerate(tails, start=1):
        prev = "core"
        for b, deg in enumerate(chain, start=1):
            vid = "t%d_%d" % (a, b)
            vertices.append({"id": vid, "genus": 0, "degree": deg})
            edges.append({"id": "q%d" % (len(edges) + 1), "ends": [prev, vid]})
            prev = vid
    for v in vertices:
        for _ in range(v["degree"] * k):
            divisors.append({"id": len(divisors) + 1, "at": v["id"]})
    d = sum(v["degree"] for v in vertices)
    name = "tails=" + "+".join("[" + ",".join(str(x) for x in c) + "]" for c in tails) + "/n%d" % n
    return {
        "name": name,
        "config": {"g": 1, "d": d, "k": k, "n": n},
        "vertices": vertices,
        "edges": edges,
        "markers": [{"id": 1, "at": "core"}],
        "divisors": divisors,
        "coeffs": "generic:%d" % seed,
    }


def enumerate_suite(cfg=SuiteConfig()):
    """Raw graphs of the family, tails taken as unordered multisets."""
    types = tail_types(cfg.max_chain, cfg.max_degree)
    graphs = []
    for t in range(1, cfg.max_tails + 1):
        for combo in combinations_with_replacement(types, t):
            if sum(sum(c) for c in combo) > cfg.max_degree:
                continue
            for n in cfg.ns:
                graphs.append(graph_from_tails(combo, n=n, k=cfg.k, seed=cfg.seed))
    return graphs


def run_suite(raws, seed=0, name_filter=None):
    """Run the pipeline on each raw graph; collect per-graph results and counts."""
    rows = []
    counts = {"graphs": 0, "pass": 0, "fail": 0, "input_error": 0, "undecided": 0}
    t0 = time.perf_counter()
    for raw in raws:
        name = str(raw.get("name", "")) if isinstance(raw, dict) else ""
        if name_filter is not None and name_filter not in name:
            continue
        counts["graphs"] += 1
        try:
            G = validate_graph(raw)
            rep = vz_pipeline(G, seed=seed)
        except Undecided as exc:
            counts["undecided"] += 1
            rows.append({"graph": name, "status": "undecided", "reason": str(exc)})
            continue
        except (ValueError, KeyError, TypeError) as exc:
            counts["input_error"] += 1
            rows.append({"graph": name, "status": "input_error",
                         "reason": "%s: %s" % (type(exc).__name__, exc)})
            continue
        status = "pass" if rep.passed else "fail"
        counts[status] += 1
        rows.append({"graph": name, "status": status, "report": rep.to_json()})
    elapsed = time.perf_counter() - t0
    return {"seed": seed, "counts": counts, "results": rows}, elapsed
