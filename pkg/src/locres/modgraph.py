"""Dual graphs of nodal curves, the structural matrix Phi and the genus-1 pipeline."""

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from sympy import primerange

from .exactpoly import (
    ONE, ONE_MONOMIAL, Monomial, MonIdeal, Poly, PolySyntaxError, coordinate_ideal,
    monideal_local_principal, parse_poly, render, sort_vars,
)
from .twocomplex import (
    UNDECIDED, TwoTermComplex, all_minors, is_locally_diagonalizable, pullback,
    RankDisagreement,
)
from .blowup import BlowupTree, Chart, principalize
from . import ncverify, sampling


class GraphError(ValueError):
    """Base class for invalid dual graph input."""


class SchemaError(GraphError):
    pass


class DuplicateId(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class NotConnected(GraphError):
    pass


class NotATree(GraphError):
    pass


class GenusMismatch(GraphError):
    pass


class DegreeMismatch(GraphError):
    pass


class DivisorCountMismatch(GraphError):
    pass


class MarkerCountMismatch(GraphError):
    pass


class DivisorOnContracted(GraphError):
    pass


class NonUnitCoefficient(GraphError):
    pass


class GenusNotOne(ValueError):
    pass


class Undecided(RuntimeError):
    pass


ASSUMPTION = ("Theta centers are realized chart-locally as reduced intersections of "
              "coordinate ideals; agreement with the stack blowup on overlaps is assumed")


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class Config:
    g: int
    d: int
    k: int = 1
    n: int = 1

    @property
    def m(self):
        return self.d * self.k


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int
    degree: int


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple
    var: str


@dataclass(frozen=True)
class DualGraph:
    config: Config
    vertices: tuple
    edges: tuple
    markers: tuple      # (i, host) with i = 1..g
    divisors: tuple     # (j, host) with j = 1..m
    coeffs: object = "generic:0"
    name: str = ""

    def vertex(self, vid):
        for v in self.vertices:
            if v.id == vid:
                return v
        raise UnknownVertex(vid)

    @property
    def zeta_vars(self):
        return tuple(e.var for e in self.edges)

    def adjacency(self):
        adj = {v.id: [] for v in self.vertices}
        for e in self.edges:
            a, b = e.ends
            adj[a].append((b, e))
            adj[b].append((a, e))
        return adj

    def path_edges(self, a, b):
        """Edges on the unique path between vertices ``a`` and ``b``."""
        if a == b:
            return ()
        adj = self.adjacency()
        prev = {a: None}
        todo = deque([a])
        while todo:
            x = todo.popleft()
            for y, e in adj[x]:
                if y not in prev:
                    prev[y] = (x, e)
                    todo.append(y)
        out = []
        x = b
        while prev[x] is not None:
            x, e = prev[x]
            out.append(e.id)
        return tuple(reversed(out))

    def core(self):
        cores = [v for v in self.vertices if v.genus == 1]
        return cores[0] if len(cores) == 1 else None

    def to_json(self):
        coeffs = self.coeffs
        if not isinstance(coeffs, str):
            coeffs = [[render(c) for c in row] for row in coeffs]
        out = {
            "config": {"g": self.config.g, "d": self.config.d, "k": self.config.k, "n": self.config.n},
            "vertices": [{"id": v.id, "genus": v.genus, "degree": v.degree} for v in self.vertices],
            "edges": [{"id": e.id, "ends": list(e.ends), "var": e.var} for e in self.edges],
            "markers": [{"id": i, "at": h} for i, h in self.markers],
            "divisors": [{"id": j, "at": h} for j, h in self.divisors],
            "coeffs": coeffs,
        }
        if self.name:
            out = {"name": self.name, **out}
        return out


def _need(raw, key, kind):
    if not isinstance(raw, dict) or key not in raw:
        raise SchemaError("missing key %r" % key)
    val = raw[key]
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int) or val < 0:
            raise SchemaError("%r must be a non-negative integer" % key)
    elif not isinstance(val, kind):
        names = kind if isinstance(kind, tuple) else (kind,)
        raise SchemaError("%r must be of type %s" % (key, "/".join(k.__name__ for k in names)))
    return val


def _check_ids(items, what):
    seen = set()
    for x in items:
        if x in seen:
            raise DuplicateId("duplicate %s id %r" % (what, x))
        seen.add(x)


def _parse_coeffs(raw, g, m):
    if raw is None:
        return "generic:0"
    if isinstance(raw, str):
        if not raw.startswith("generic:"):
            raise SchemaError("coeffs must be 'generic:<seed>' or a matrix")
        try:
            int(raw.split(":", 1)[1])
        except ValueError:
            raise SchemaError("bad generic seed in %r" % raw)
        return raw
    if not isinstance(raw, list) or len(raw) != g or any(not isinstance(r, list) or len(r) != m for r in raw):
        raise SchemaError("explicit coeffs must be a %d x %d matrix" % (g, m))
    rows = []
    for i, r in enumerate(raw):
        row = []
        for j, x in enumerate(r):
            try:
                p = parse_poly(str(x))
            except PolySyntaxError as exc:
                raise SchemaError("coefficient (%d,%d): %s" % (i + 1, j + 1, exc))
            if not p.is_local_unit():
                raise NonUnitCoefficient("coefficient c_%d%d = %s has zero constant term" % (i + 1, j + 1, render(p)))
            row.append(p)
        rows.append(tuple(row))
    return tuple(rows)


def validate_graph(raw, config=None):
    """Check every DualGraph invariant on a JSON-like dict and normalize ids."""
    if not isinstance(raw, dict):
        raise SchemaError("graph must be a JSON object")
    if config is None:
        craw = _need(raw, "config", dict)
        config = Config(_need(craw, "g", int), _need(craw, "d", int),
                        craw.get("k", 1), craw.get("n", 1))
        for key in ("k", "n"):
            val = getattr(config, key)
            if isinstance(val, bool) or not isinstance(val, int) or val < 1:
                raise SchemaError("%r must be a positive integer" % key)
    verts = []
    for v in _need(raw, "vertices", list):
        verts.append(Vertex(str(_need(v, "id", (str, int))), _need(v, "genus", int), _need(v, "degree", int)))
    if not verts:
        raise SchemaError("graph has no vertices")
    _check_ids([v.id for v in verts], "vertex")
    vids = {v.id for v in verts}

    edges = []
    for idx, e in enumerate(_need(raw, "edges", list)):
        ends = _need(e, "ends", list)
        if len(ends) != 2:
            raise SchemaError("edge ends must list two vertices")
        ends = tuple(str(x) for x in ends)
        for x in ends:
            if x not in vids:
                raise UnknownVertex("edge endpoint %r" % x)
        eid = str(e.get("id", "q%d" % (idx + 1)))
        var = str(e.get("var", "z%d" % (idx + 1)))
        edges.append(Edge(eid, ends, var))
    _check_ids([e.id for e in edges], "edge")
    _check_ids([e.var for e in edges], "edge variable")

    def hosts(key):
        out = []
        for item in _need(raw, key, list):
            h = str(_need(item, "at", (str, int)))
            if h not in vids:
                raise UnknownVertex("%s host %r" % (key[:-1], h))
            out.append((_need(item, "id", int), h))
        _check_ids([i for i, _ in out], key[:-1])
        return sorted(out)

    markers = hosts("markers")
    divisors = hosts("divisors")

    # connectivity and tree shape
    adj = {v: set() for v in vids}
    for e in edges:
        a, b = e.ends
        adj[a].add(b)
        adj[b].add(a)
    seen = {verts[0].id}
    todo = [verts[0].id]
    while todo:
        x = todo.pop()
        for y in adj[x] - seen:
            seen.add(y)
            todo.append(y)
    if seen != vids:
        raise NotConnected("vertices %s are not reachable" % sorted(vids - seen))
    if len(edges) != len(verts) - 1 or any(a == b for a, b in (e.ends for e in edges)):
        raise NotATree("first Betti number is %d; only compact type is supported" % (len(edges) - len(verts) + 1))
    if sum(v.genus for v in verts) != config.g:
        raise GenusMismatch("vertex genera sum to %d, config g = %d" % (sum(v.genus for v in verts), config.g))
    if sum(v.degree for v in verts) != config.d:
        raise DegreeMismatch("vertex degrees sum to %d, config d = %d" % (sum(v.degree for v in verts), config.d))

    m = config.m
    if len(divisors) != m or [j for j, _ in divisors] != list(range(1, m + 1)):
        raise DivisorCountMismatch("expected divisor ids 1..%d" % m)
    if len(markers) != config.g or [i for i, _ in markers] != list(range(1, config.g + 1)):
        raise MarkerCountMismatch("expected marker ids 1..%d" % config.g)
    hosted = {v.id: sum(1 for _, h in divisors if h == v.id) for v in verts}
    for v in verts:
        if hosted[v.id] and v.degree == 0:
            raise DivisorOnContracted("vertex %r has degree 0 but hosts %d divisor points" % (v.id, hosted[v.id]))
    for v in verts:
        nd = hosted[v.id]
        if nd != v.degree * config.k:
            raise DivisorCountMismatch("vertex %r hosts %d divisor points, expected %d" % (v.id, nd, v.degree * config.k))
        nm = sum(1 for _, h in markers if h == v.id)
        if nm != v.genus:
            raise MarkerCountMismatch("vertex %r hosts %d markers, expected %d" % (v.id, nm, v.genus))

    coeffs = _parse_coeffs(raw.get("coeffs"), config.g, m)
    return DualGraph(config, tuple(verts), tuple(edges), tuple(markers), tuple(divisors),
                     coeffs, str(raw.get("name", "")))


def separable_nodes(G, i, j):
    """Edge ids on the path between the host of marker i and the host of divisor j."""
    a = dict(G.markers)[i]
    b = dict(G.divisors)[j]
    return frozenset(G.path_edges(a, b))


# ---------------------------------------------------------------------------
# structural matrix


@dataclass(frozen=True)
class StructuralMatrix:
    phi: TwoTermComplex
    coeffs: tuple           # g x m local units
    monomials: tuple        # g x m Monomials in the zeta variables
    zeta_vars: tuple
    extra_vars: tuple = ()
    rank_E: int = 0
    rank_F: int = 0
    kernel_offset: int = 1

    @property
    def shape(self):
        return self.phi.shape

    @classmethod
    def from_entries(cls, rows, zeta_vars, extra_vars=()):
        """Split each entry into c * monomial in ``zeta_vars`` (c a local unit)."""
        zeta = tuple(zeta_vars)
        rows = [[parse_poly(x) if isinstance(x, str) else Poly.coerce(x) for x in r] for r in rows]
        found = set(extra_vars)
        for r in rows:
            for x in r:
                found.update(v for v in x.variables if v not in zeta)
        extra = tuple(sort_vars(found))
        coeffs, monos = [], []
        for r in rows:
            crow, mrow = [], []
            for x in r:
                if x.is_zero():
                    crow.append(Poly())
                    mrow.append(None)
                    continue
                cont = x.monomial_content()
                mono = Monomial({v: e for v, e in cont.items if v in zeta})
                c = x.div_monomial(mono)
                if not c.is_local_unit():
                    raise NonUnitCoefficient("entry %s is not a unit times a node monomial" % render(x))
                crow.append(c)
                mrow.append(mono)
            coeffs.append(tuple(crow))
            monos.append(tuple(mrow))
        chart = Chart.root(zeta + extra)
        phi = TwoTermComplex(tuple(tuple(r) for r in rows), chart)
        q, p = phi.shape
        return cls(phi, tuple(coeffs), tuple(monos), zeta, extra, rank_E=p + 1, rank_F=q)


def generic_coefficients(seed, count):
    """``count`` distinct primes drawn reproducibly from ``seed``."""
    hi = 1000
    while True:
        pool = list(primerange(2, hi))
        if len(pool) >= count:
            break
        hi *= 2
    return random.Random(seed).sample(pool, count)


def build_structural_matrix(G, coeffs=None):
    """Phi_ij = c_ij * prod of the zeta's separating marker i from divisor j."""
    given = G.coeffs if coeffs is None else coeffs
    g, m = G.config.g, G.config.m
    if isinstance(given, str):
        primes = generic_coefficients(int(given.split(":", 1)[1]), g * m)
        cmat = tuple(tuple(Poly.const(primes[i * m + j]) for j in range(m)) for i in range(g))
    elif isinstance(given, int):
        primes = generic_coefficients(given, g * m)
        cmat = tuple(tuple(Poly.const(primes[i * m + j]) for j in range(m)) for i in range(g))
    else:
        cmat = tuple(tuple(Poly.coerce(x) for x in row) for row in given)
        for i, row in enumerate(cmat):
            for j, c in enumerate(row):
                if not c.is_local_unit():
                    raise NonUnitCoefficient("c_%d%d = %s" % (i + 1, j + 1, render(c)))
    var_of = {e.id: e.var for e in G.edges}
    zeta = G.zeta_vars
    extra = set()
    for row in cmat:
        for c in row:
            extra.update(v for v in c.variables if v not in zeta)
    extra = tuple(sort_vars(extra))
    monos, rows = [], []
    for i in range(g):
        mrow, prow = [], []
        for j in range(m):
            mono = Monomial({var_of[q]: 1 for q in separable_nodes(G, i + 1, j + 1)})
            mrow.append(mono)
            prow.append(cmat[i][j].mul_monomial(mono))
        monos.append(tuple(mrow))
        rows.append(tuple(prow))
    chart = Chart.root(zeta + extra)
    phi = TwoTermComplex(tuple(rows), chart)
    return StructuralMatrix(phi, cmat, tuple(monos), zeta, extra,
                            rank_E=m + 1, rank_F=g, kernel_offset=1)


# ---------------------------------------------------------------------------
# local equations


@dataclass(frozen=True)
class LocalEquationSystem:
    chart_vars: tuple
    w_vars: tuple
    equations: tuple
    phi: TwoTermComplex
    n: int

    @property
    def ambient_vars(self):
        return self.chart_vars + self.w_vars

    @property
    def ambient_dim(self):
        return len(self.ambient_vars)


def w_var(i, j):
    return "w%d_%d" % (i, j)


def local_equations(phi, n):
    """Rows of Phi * w^i = 0 for i = 1..n, identically zero rows dropped."""
    if isinstance(phi, StructuralMatrix):
        phi = phi.phi
    q, m = phi.shape
    eqs = []
    for i in range(1, n + 1):
        for r in range(q):
            acc = Poly()
            for j in range(m):
                if phi.entries[r][j]:
                    acc = acc + phi.entries[r][j] * Poly.var(w_var(i, j + 1))
            if acc:
                eqs.append(acc)
    wv = tuple(w_var(i, j) for i in range(1, n + 1) for j in range(1, m + 1))
    return LocalEquationSystem(tuple(phi.variables), wv, tuple(eqs), phi, n)


# ---------------------------------------------------------------------------
# Theta centers


def attachment_edges(G):
    core = G.core()
    return tuple(e for e in G.edges if core is not None and core.id in e.ends)


def theta_center_ideal(G, i):
    """Ideal of the locus where at least ``i`` core attachment nodes persist."""
    if G.config.g != 1:
        raise GenusNotOne("Theta centers are defined for genus 1 only (g = %d)" % G.config.g)
    core = G.core()
    unit = MonIdeal([ONE_MONOMIAL])
    if core is None or core.degree != 0:
        return unit
    att = [e.var for e in attachment_edges(G)]
    if len(att) < i:
        return unit
    ideal = None
    for S in combinations(att, i):
        c = coordinate_ideal(S)
        ideal = c if ideal is None else ideal.intersect(c)
    return ideal


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class LeafReport:
    path: str
    vars: tuple
    entries: tuple = ()
    components: list = field(default_factory=list)
    main: str = ""
    crossings: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    verdict: str = "fail"

    def to_json(self):
        return {
            "chart": self.path or "/",
            "vars": list(self.vars),
            "diagonal": [render(e) for e in self.entries],
            "components": self.components,
            "main": self.main,
            "crossings": self.crossings,
            "checks": self.checks,
            "witnesses": self.witnesses,
            "verdict": self.verdict,
        }


@dataclass
class ResolutionReport:
    graph: str
    config: dict
    seed: int
    centers: list
    leaves: list
    root_failures: list = field(default_factory=list)
    assumptions: tuple = (ASSUMPTION,)
    undecided: bool = False

    @property
    def passed(self):
        return bool(self.leaves) and all(l.verdict == "pass" for l in self.leaves)

    @property
    def verdict(self):
        if self.undecided:
            return "undecided"
        return "pass" if self.passed else "fail"

    def to_json(self):
        return {
            "graph": self.graph,
            "config": self.config,
            "seed": self.seed,
            "assumptions": list(self.assumptions),
            "centers": self.centers,
            "root_failures": self.root_failures,
            "leaf_count": len(self.leaves),
            "leaves": [l.to_json() for l in self.leaves],
            "verdict": self.verdict,
        }


def theta_blowups(G, sm):
    """Blow up the strict transforms of Theta_2, Theta_3, ... in order."""
    root = sm.phi.chart
    tree = BlowupTree(root)
    centers = []
    t = len(attachment_edges(G))
    for i in range(2, t + 1):
        J = theta_center_ideal(G, i)
        if J.is_unit():
            continue
        centers.append({"i": i, "ideal": str(J)})
        for leaf in list(tree.leaves):
            pulled = J.subs(leaf.relative_subst(root)) if leaf is not root else J
            strict = pulled.divide_by(pulled.gcd())
            if strict.is_unit() or monideal_local_principal(strict) is not None:
                continue
            principalize(leaf, strict, tree=tree)
    return tree, centers


def leaf_report(phi, leaf, n, seed=0, kernel_offset=1):
    """Diagonalize a pulled-back matrix at every stratum origin of ``leaf`` and
    check components, smoothness, crossings and kernel ranks."""
    phi_leaf = pullback(phi, leaf) if phi.chart is not leaf else phi
    rep = LeafReport(leaf.path, tuple(leaf.vars))
    origin_form = None
    ok = True
    for pt in sampling.strata_points(leaf.vars, seed=seed):
        res = is_locally_diagonalizable(phi_leaf, pt)
        if res.verdict == UNDECIDED:
            raise Undecided("chart %s: is_locally_diagonalizable undecided at %s"
                            % (leaf.path or "/", _show(pt)))
        if not res.is_yes or res.form is None or not res.form.verify(phi_leaf):
            ok = False
            rep.witnesses.append({"check": "diagonalizable", "point": _show(pt),
                                  "reason": res.reason or "no verified form"})
            continue
        if all(v == 0 for v in pt.values()):
            origin_form = res.form
    rep.checks["diagonalizable"] = ok
    if origin_form is None:
        return rep
    rep.entries = origin_form.entries
    system = local_equations(phi_leaf, n)
    rep.checks["rewrite_exact"] = ncverify.rewrite_identity(system, origin_form)
    decomp = ncverify.decompose(system, origin_form)
    try:
        main = ncverify.main_component(decomp)
        rep.main = main.name
        rep.checks["main_exists"] = True
    except ncverify.NoMainComponent:
        main = None
        rep.checks["main_exists"] = False
    try:
        ranks = ncverify.kernel_free_on_components(phi_leaf, decomp, seed=seed, offset=kernel_offset)
        rep.checks["kernel_constant"] = True
    except RankDisagreement as exc:
        ranks = []
        rep.checks["kernel_constant"] = False
        rep.witnesses.append({"check": "kernel_constant", "reason": str(exc)})
    rank_of = {r["component"]: r["kernel_rank"] for r in ranks}
    all_smooth = True
    for c in decomp.components:
        smooth, wit = ncverify.check_smooth(c, decomp, seed=seed)
        all_smooth = all_smooth and smooth
        if wit:
            rep.witnesses.append({"check": "smooth", "component": c.name, **wit})
        rep.components.append({
            "name": c.name,
            "equations": [render(e) for e in c.equations],
            "smooth": smooth,
            "rank": rank_of.get(c.name),
        })
    rep.checks["main_smooth"] = bool(main) and next(x["smooth"] for x in rep.components if x["name"] == main.name)
    rep.checks["all_smooth"] = all_smooth
    nc, wit = ncverify.check_normal_crossing(decomp, seed=seed)
    rep.checks["normal_crossing"] = nc
    rep.checks["self_crossing"] = decomp.self_crossing
    if wit:
        rep.witnesses.append({"check": "normal_crossing", **wit})
    rep.crossings = decomp.crossings
    if main is not None and main.name in rank_of:
        rep.checks["rank_additivity"] = rank_of[main.name] == phi.cols - len(origin_form.entries)
    failed = [k for k, v in rep.checks.items() if k != "self_crossing" and v is False]
    rep.verdict = "fail" if failed else "pass"
    return rep


def vz_pipeline(G, n=None, seed=0, classify_root=True):
    """Theta blowups, then per-leaf diagonalization and component checks."""
    if G.config.g != 1:
        raise GenusNotOne("the genus-1 pipeline needs g = 1 (got %d)" % G.config.g)
    n = G.config.n if n is None else n
    sm = build_structural_matrix(G)
    tree, centers = theta_blowups(G, sm)
    report = ResolutionReport(
        graph=G.name,
        config={"g": G.config.g, "d": G.config.d, "k": G.config.k, "n": n},
        seed=seed,
        centers=centers,
        leaves=[],
    )
    if classify_root:
        for pt in sampling.strata_points(sm.phi.chart.vars, seed=seed):
            res = is_locally_diagonalizable(sm.phi, pt)
            if res.is_yes:
                continue
            kind = classify_singularity(sm, pt, seed=seed)
            report.root_failures.append({"point": _show(pt), "class": kind.kind})
    for leaf in tree.leaves:
        try:
            report.leaves.append(leaf_report(sm.phi, leaf, n, seed, sm.kernel_offset))
        except Undecided:
            report.undecided = True
            raise
        except (ncverify.NotDiagonalized, RuntimeError) as exc:
            rep = LeafReport(leaf.path, tuple(leaf.vars))
            rep.witnesses.append({"check": "pipeline", "reason": "%s: %s" % (type(exc).__name__, exc)})
            report.leaves.append(rep)
    report.tree = tree
    return report


# ---------------------------------------------------------------------------
# singularity classification


REGULAR = "Regular"
TOPOLOGICAL = "Topological"
GEOMETRIC = "Geometric"


@dataclass(frozen=True)
class Classification:
    kind: str
    witness: dict = field(default_factory=dict)

    def to_json(self):
        return {"class": self.kind, "witness": self.witness}


def _sign(perm):
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def _topological_terms(monos, rows, cols):
    """(perm, support monomial) for every permutation with no vanishing entry."""
    out = []
    for perm in permutations(range(len(cols))):
        m = ONE_MONOMIAL
        for a, b in zip(rows, perm):
            e = monos[a][cols[b]]
            if e is None:
                break
            m = m * e
        else:
            out.append((perm, m))
    return out


def classify_singularity(sm, point=None, seed=0):
    """Regular, Topological (caused by node parameters only) or Geometric."""
    phi = sm.phi
    chart = phi.chart
    point = {v: Fraction(point.get(v, 0)) if point else Fraction(0) for v in chart.vars}
    res = is_locally_diagonalizable(phi, point)
    if res.verdict == UNDECIDED:
        raise Undecided("classify: undecided at %s" % _show(point))
    if res.is_yes:
        return Classification(REGULAR, {})

    # nonvanishing node parameters are units near the point
    vanish = tuple(v for v in sm.zeta_vars if point[v] == 0)
    keep = set(vanish)
    q, p = phi.shape
    monos = tuple(tuple(None if (mo is None or not sm.coeffs[i][j]) else
                        Monomial({v: e for v, e in mo.items if v in keep})
                        for j, mo in enumerate(row)) for i, row in enumerate(sm.monomials))
    cfold = tuple(tuple(sm.coeffs[i][j].mul_monomial(
        Monomial({v: e for v, e in (sm.monomials[i][j] or ONE_MONOMIAL).items if v not in keep}))
        for j in range(p)) for i in range(q))

    # topological ladder: supports of every permutation term of every minor
    ladder = []
    for k in range(min(q, p)):
        terms = {}
        for rows in combinations(range(q), k + 1):
            for cols in combinations(range(p), k + 1):
                tt = _topological_terms(monos, rows, cols)
                if tt:
                    terms[(rows, cols)] = tt
        gens = [m for tt in terms.values() for _, m in tt]
        ladder.append((MonIdeal(gens), terms))

    root = Chart.root(chart.vars)
    tree = BlowupTree(root)
    for ideal, _ in ladder:
        if ideal.is_zero():
            continue
        for leaf in list(tree.leaves):
            pulled = ideal.subs(leaf.relative_subst(root)) if leaf is not root else ideal
            principalize(leaf, pulled, tree=tree)

    fixed = {v: point[v] for v in chart.vars if v not in keep}
    for leaf in tree.leaves:
        sub = leaf.relative_subst(root) if leaf is not root else {v: Poly.var(v) for v in root.vars}
        phi_leaf = pullback(TwoTermComplex(phi.entries, root), leaf) if leaf is not root else phi
        minors_cache = {}
        for spt in sampling.strata_points(vanish, seed=seed):
            Q = dict(fixed)
            Q.update(spt)
            if any(sub[v].eval(Q) != 0 for v in vanish):
                continue
            for k, (ideal, terms) in enumerate(ladder):
                if ideal.is_zero():
                    continue
                gk = monideal_local_principal(ideal.subs(sub))
                if k not in minors_cache:
                    minors_cache[k] = all_minors(phi_leaf.entries, k + 1)
                good = False
                for key in terms:
                    M = minors_cache[k][key]
                    if M and M.div_monomial(gk).eval(Q) != 0:
                        good = True
                        break
                if good:
                    continue
                return Classification(GEOMETRIC, _geometric_witness(
                    sm, terms, sub, gk, cfold, k, leaf, Q))
    return Classification(TOPOLOGICAL, {"leaves": len(tree.leaves), "blowups": len(tree.steps)})


def _geometric_witness(sm, terms, sub, gk, cfold, k, leaf, Q):
    root_minors = all_minors(sm.phi.entries, k + 1)
    for (rows, cols), tt in terms.items():
        cm = Poly()
        hit = False
        for perm, m in tt:
            pm = Poly.monomial(m).subs(sub)
            (lead,) = pm.terms
            if lead != gk:
                continue
            hit = True
            prod = Poly.const(_sign(perm))
            for a, b in zip(rows, perm):
                prod = prod * cfold[a][cols[b]]
            cm = cm + prod
        if hit:
            return {
                "order": k + 1,
                "rows": [r + 1 for r in rows],
                "cols": [c + 1 for c in cols],
                "minor": render(root_minors[(rows, cols)]),
                "c_minor": render(cm),
                "chart": leaf.path or "/",
                "point": _show(Q),
            }
    return {"order": k + 1, "chart": leaf.path or "/", "point": _show(Q)}


def _show(pt):
    return {k: str(v) for k, v in sorted(pt.items(), key=lambda kv: kv[0])}
