"""Acceptance run: one pass/fail line per criterion, printed to the terminal."""

import json
import os
import random
import time
from fractions import Fraction
from itertools import permutations, product

import pytest

from locres import cli, sampling
from locres.exactpoly import YES, local_associates_at, monideal_local_principal, parse_poly as P, Poly
from locres.twocomplex import TwoTermComplex, all_minors, is_locally_diagonalizable, pullback
from locres.blowup import Chart, blow_up_coordinate_center, derived_resolution
from locres.generators import random_diagonalizable_matrix, random_matrices
from locres.modgraph import (
    build_structural_matrix, classify_singularity, local_equations, validate_graph, vz_pipeline,
)
from locres.suite import SuiteConfig, enumerate_suite
from oracles import ladder_principal

SEED = 0
SUITE_BUDGET = 60.0


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print("\ncriterion %d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))


def check_yes(phi, pt, stats):
    """Diagonalize at pt; every Yes must round-trip exactly with unit transforms."""
    res = is_locally_diagonalizable(phi, pt)
    if res.verdict == YES and res.form is not None:
        stats["yes"] += 1
        if not (res.form.round_trip(phi) and res.form.transforms_are_units()):
            stats["bad"] += 1
    return res


@pytest.fixture(scope="module")
def suite_run():
    graphs = [validate_graph(r) for r in enumerate_suite(SuiteConfig(seed=SEED))]
    t0 = time.perf_counter()
    reports = [(G, vz_pipeline(G, seed=SEED)) for G in graphs]
    return reports, time.perf_counter() - t0


@pytest.fixture(scope="module")
def random_run():
    mats = random_matrices(SEED, 50, max_rows=3, max_cols=4, names=("x1", "x2", "x3", "x4"), max_exp=2)
    return [(phi, derived_resolution(phi, seed=SEED)) for phi in mats]


def on_tree(G, rep):
    """The structural matrix over the root chart of the report's blowup tree."""
    return TwoTermComplex(build_structural_matrix(G).phi.entries, rep.tree.root)


def test_criterion_1_suite(capsys, suite_run):
    reports, elapsed = suite_run
    want = ("diagonalizable", "main_exists", "main_smooth", "normal_crossing", "kernel_constant")
    bad = []
    for G, rep in reports:
        if not rep.leaves:
            bad.append(G.name)
        for leaf in rep.leaves:
            if leaf.verdict != "pass" or not all(leaf.checks.get(k) for k in want):
                bad.append("%s %s" % (G.name, leaf.path))
    ok = not bad and elapsed < SUITE_BUDGET
    report(capsys, 1, ok, "%d graphs, %d failing leaves, %.1fs (budget %.0fs)"
           % (len(reports), len(bad), elapsed, SUITE_BUDGET))
    assert not bad
    assert elapsed < SUITE_BUDGET


def test_criterion_2_derived_resolution(capsys, random_run):
    failures = 0
    stats = {"yes": 0, "bad": 0}
    for phi, tree in random_run:
        root = phi.chart
        for leaf in tree.leaves:
            phi_leaf = tree.complexes[leaf.path]
            for pt in sampling.strata_points(leaf.vars, seed=SEED):
                if check_yes(phi_leaf, pt, stats).verdict != YES:
                    failures += 1
                keep = [v for v in leaf.vars if pt[v] == 0]
                for I in tree.ladder.monomial:
                    if I.is_zero():
                        continue
                    pulled = I.subs(leaf.relative_subst(root)) if leaf is not root else I
                    if monideal_local_principal(pulled.localize(keep)) is None:
                        failures += 1
    r = sampling.rng(SEED + 1)
    trivial = sum(derived_resolution(random_diagonalizable_matrix(r, names=("x1", "x2", "x3", "x4")),
                                     seed=SEED).is_trivial() for _ in range(50))
    failures += stats["bad"]
    ok = failures == 0 and trivial == 50
    report(capsys, 2, ok, "50 random matrices, %d leaf failures; minimality %d/50 root-only"
           % (failures, trivial))
    assert failures == 0
    assert trivial == 50


def test_criterion_3_round_trip(capsys, suite_run, random_run):
    stats = {"yes": 0, "bad": 0}
    reports, _ = suite_run
    for G, rep in reports:
        phi = on_tree(G, rep)
        for leaf in rep.tree.leaves:
            phi_leaf = pullback(phi, leaf)
            for pt in sampling.strata_points(leaf.vars, seed=SEED):
                check_yes(phi_leaf, pt, stats)
    for phi, tree in random_run:
        for leaf in tree.leaves:
            for pt in sampling.strata_points(leaf.vars, seed=SEED):
                check_yes(tree.complexes[leaf.path], pt, stats)
    ok = stats["yes"] > 0 and stats["bad"] == 0
    report(capsys, 3, ok, "%d Yes forms checked, %d inexact" % (stats["yes"], stats["bad"]))
    assert stats["yes"] > 0 and stats["bad"] == 0


def test_criterion_4_base_change(capsys, suite_run):
    reports, _ = suite_run
    r = random.Random(SEED)
    mismatches = lost = pairs = 0
    candidates = [(G, rep) for G, rep in reports]
    while pairs < 20:
        G, rep = r.choice(candidates)
        leaf = r.choice(rep.tree.leaves)
        if len(leaf.vars) < 2:
            continue
        center = r.sample(list(leaf.vars), r.randint(2, len(leaf.vars)))
        n = r.choice([1, 2])
        pairs += 1
        phi = on_tree(G, rep)
        phi_leaf = pullback(phi, leaf)
        eqs = local_equations(phi_leaf, n).equations
        for kid in blow_up_coordinate_center(leaf, center, tag="X"):
            sub = kid.relative_subst(leaf)
            phi_kid = pullback(phi, kid)
            direct = local_equations(phi_kid, n).equations
            if direct != tuple(e.subs(sub) for e in eqs):
                mismatches += 1
            for pt in sampling.strata_points(leaf.vars, seed=SEED):
                s = kid.pivot
                if pt[s] == 0:
                    continue
                lifted = {v: (pt[v] / pt[s] if v in center and v != s else pt[v]) for v in pt}
                if is_locally_diagonalizable(phi_kid, lifted).verdict != YES:
                    lost += 1
            for pt in sampling.strata_points(kid.vars, seed=SEED):
                if is_locally_diagonalizable(phi_kid, pt).verdict != YES:
                    lost += 1
    ok = mismatches == 0 and lost == 0
    report(capsys, 4, ok, "%d pairs, %d equation mismatches, %d lifted points not diagonalizable"
           % (pairs, mismatches, lost))
    assert mismatches == 0 and lost == 0


ENTRIES = ["0", "1", "x", "y", "x^2", "x*y", "y^2"]
SWAP = {0: 0, 1: 1, 2: 3, 3: 2, 4: 6, 5: 5, 6: 4}


def _canonical(rows):
    # verdicts are invariant under row/column permutations and x <-> y
    best = None
    q, p = len(rows), len(rows[0])
    for swap in (False, True):
        r0 = [[SWAP[x] if swap else x for x in row] for row in rows]
        for rp in permutations(range(q)):
            for cp in permutations(range(p)):
                t = tuple(tuple(r0[i][j] for j in cp) for i in rp)
                if best is None or t < best:
                    best = t
    return best


def test_criterion_5_criterion_consistency(capsys):
    reps = set()
    for q in (1, 2):
        for p in (1, 2, 3):
            for cells in product(range(len(ENTRIES)), repeat=q * p):
                reps.add(_canonical([cells[i * p:(i + 1) * p] for i in range(q)]))
    chart = Chart.root(("x", "y"))
    origin = {"x": Fraction(0), "y": Fraction(0)}
    disagree = uncertified = yes = 0
    for rep in sorted(reps):
        ent = tuple(tuple(P(ENTRIES[x]) for x in row) for row in rep)
        phi = TwoTermComplex(ent, chart)
        res = is_locally_diagonalizable(phi)
        if (res.verdict == YES) != ladder_principal(ent, ("x", "y")):
            disagree += 1
        if res.verdict != YES:
            continue
        yes += 1
        # certificate: a verified form whose partial products generate each I_k
        good = res.certificate is not None and res.form is not None and res.form.verify(phi)
        prod = Poly.const(1)
        for k, d in enumerate(res.form.entries if res.form else ()):
            prod = prod * d
            minors = [m for m in all_minors(ent, k + 1).values() if m]
            good = good and any(local_associates_at(m, prod, origin) == YES for m in minors)
        uncertified += not good
    ok = disagree == 0 and uncertified == 0
    report(capsys, 5, ok, "%d canonical matrices, %d disagreements, %d/%d Yes uncertified"
           % (len(reps), disagree, uncertified, yes))
    assert disagree == 0 and uncertified == 0


def test_criterion_6_classification(capsys, suite_run):
    reports, _ = suite_run
    geometric = 0
    root_fail = root_topo = 0
    for G, rep in reports:
        sm = build_structural_matrix(G)
        for pt in sampling.strata_points(sm.phi.chart.vars, seed=SEED):
            geometric += classify_singularity(sm, pt, seed=SEED).kind == "Geometric"
        for f in rep.root_failures:
            root_fail += 1
            root_topo += f["class"] == "Topological"
    raw = json.load(open(cli_input("geometric_g2.json")))
    c = classify_singularity(build_structural_matrix(validate_graph(raw)), {"t": 0})
    witness_ok = c.kind == "Geometric" and c.witness.get("minor") == "t*z1*z2" and c.witness.get("c_minor") == "t"
    ok = geometric == 0 and witness_ok and root_fail == root_topo and root_fail > 0
    report(capsys, 6, ok, "suite Geometric %d; (1+t) example %s; root failures %d/%d Topological"
           % (geometric, c.kind, root_topo, root_fail))
    assert geometric == 0
    assert witness_ok
    assert root_fail > 0 and root_fail == root_topo


def cli_input(name):
    return os.path.join(os.path.dirname(__file__), "..", "scripts", "inputs", name)


def test_criterion_7_determinism(capsys):
    outs = []
    for _ in range(2):
        code = cli.run(["suite", "--full"])
        outs.append((code, capsys.readouterr().out))
    same = outs[0] == outs[1]
    report(capsys, 7, same and outs[0][0] == 0, "two full suite runs byte-identical: %s (%d bytes)"
           % (same, len(outs[0][1])))
    assert same and outs[0][0] == 0
