"""Component decomposition and smoothness / normal-crossing checks for
diagonalized local equations ``z_j * W^i_j = 0``."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .exactpoly import ONE, ZERO, Poly, sort_vars
from .twocomplex import adjugate, determinant, kernel_rank, matmul
from . import sampling


class NotDiagonalized(ValueError):
    pass


class NoMainComponent(LookupError):
    pass


RANDOM_POINTS = 20


@dataclass(frozen=True)
class Component:
    name: str
    forms: tuple          # ("var", name) or ("sec", j)
    equations: tuple      # Polys
    zero_vars: tuple      # chart coordinates vanishing on the component
    sections: tuple       # indices j with W^i_j = 0 for all i

    @property
    def is_main_candidate(self):
        return not self.zero_vars


@dataclass
class ComponentDecomposition:
    components: list
    main: int
    chart_vars: tuple
    w_vars: tuple
    n: int
    z: tuple
    W: tuple              # W[i][j] = j-th section form of block i
    adj: tuple            # adj(R) rows used for W
    smooth: list = field(default_factory=list)
    crossings: list = field(default_factory=list)
    self_crossing: bool = False

    @property
    def ambient_vars(self):
        return tuple(self.chart_vars) + tuple(self.w_vars)

    def component(self, name):
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)


def _w_name(i, j):
    return "w%d_%d" % (i + 1, j + 1)


def section_forms(adj_rows, n, m, l):
    """W[i][j] = sum_k adj[j][k] * w^i_k for j < l."""
    W = []
    for i in range(n):
        row = []
        for j in range(l):
            acc = ZERO
            for k in range(m):
                if adj_rows[j][k]:
                    acc = acc + adj_rows[j][k] * Poly.var(_w_name(i, k))
            row.append(acc)
        W.append(tuple(row))
    return tuple(W)


def _prime_factors(z):
    split = z.monomial_unit_split()
    if split is None:
        raise NotDiagonalized("diagonal entry %s is not monomial x unit at the origin" % z)
    return split[0].variables


def _name(forms):
    parts = []
    for kind, x in forms:
        parts.append("%s=0" % x if kind == "var" else "W%d=0" % (x + 1))
    return "{" + ", ".join(parts) + "}" if parts else "{ambient}"


def decompose_diagonal(z, W, chart_vars, w_vars, n, adj=()):
    """Enumerate minimal primes of {z_j * W^i_j = 0} combinatorially."""
    choices = []
    for j, zj in enumerate(z):
        if zj.is_zero():
            choices.append([None])
            continue
        opts = [("var", v) for v in _prime_factors(zj)]
        opts.append(("sec", j))
        choices.append(opts)
    sets = set()
    for pick in product(*choices) if choices else [()]:
        sets.add(frozenset(c for c in pick if c is not None))
    minimal = [s for s in sets if not any(o < s for o in sets)]

    def key(s):
        return (len(s), sorted((k, str(x)) for k, x in s))

    comps = []
    for s in sorted(minimal, key=key):
        forms = tuple(sorted(s, key=lambda f: (f[0] != "var", str(f[1]))))
        eqs = []
        for kind, x in forms:
            if kind == "var":
                eqs.append(Poly.var(x))
            else:
                eqs.extend(W[i][x] for i in range(n))
        comps.append(Component(
            name=_name(forms),
            forms=forms,
            equations=tuple(eqs),
            zero_vars=tuple(sort_vars(x for k, x in forms if k == "var")),
            sections=tuple(sorted(x for k, x in forms if k == "sec")),
        ))
    main = -1
    if all(not zj.is_zero() for zj in z):
        want = tuple(range(len(z)))
        for idx, c in enumerate(comps):
            if not c.zero_vars and c.sections == want:
                main = idx
    return ComponentDecomposition(comps, main, tuple(chart_vars), tuple(w_vars), n,
                                  tuple(z), W, tuple(adj))


def decompose(system, form):
    """Components of a leaf's local equations, rewritten through its DiagonalForm."""
    if form is None:
        raise NotDiagonalized("no diagonal form for this leaf")
    phi = system.phi
    m = phi.cols
    l = form.rank
    adj = adjugate(form.right) if m else ()
    W = section_forms(adj, system.n, m, l)
    return decompose_diagonal(form.entries, W, system.chart_vars, system.w_vars, system.n, adj)


def rewrite_identity(system, form):
    """Exact check of det(R) * L * Phi * w == D * adj(R) * w for every w-block."""
    phi = system.phi
    q, m = phi.shape
    if not m:
        return True
    adj = adjugate(form.right)
    detR = determinant(form.right)
    D = form.diagonal(q, m)
    lhs_mat = matmul(form.left, phi.entries)
    rhs_mat = matmul(D, adj)
    for i in range(system.n):
        w = tuple((Poly.var(_w_name(i, k)),) for k in range(m))
        lhs = matmul(lhs_mat, w)
        rhs = matmul(rhs_mat, w)
        for a, b in zip(lhs, rhs):
            if a[0] * detR != b[0]:
                return False
    return True


# ---------------------------------------------------------------------------
# sampling on components


def _w_point(decomp, chart_pt, sections, r):
    """w-coordinates on {W^i_j = 0, j in sections}: a random kernel vector per block."""
    m = len(decomp.w_vars) // decomp.n if decomp.n else 0
    pt = {}
    rows = [[a.eval(chart_pt) for a in decomp.adj[j]] for j in sections]
    basis = sampling.nullspace(rows, m) if m else []
    for i in range(decomp.n):
        vec = [Fraction(0)] * m
        for b in basis:
            c = sampling.random_rational(r, nonzero=False)
            vec = [x + c * y for x, y in zip(vec, b)]
        for k in range(m):
            pt[_w_name(i, k)] = vec[k]
    return pt


def sample_points(decomp, zero_vars, sections, seed=0, random_points=RANDOM_POINTS):
    """Stratum origins of the locus plus random points, as exact rational points."""
    r = sampling.rng(seed)
    free = [v for v in decomp.chart_vars if v not in set(zero_vars)]
    pts = []
    for spt in sampling.strata_points(free, seed=seed):
        chart_pt = {v: Fraction(0) for v in zero_vars}
        chart_pt.update(spt)
        pt = dict(chart_pt)
        pt.update(_w_point(decomp, chart_pt, sections, r))
        pts.append(pt)
    for _ in range(random_points):
        chart_pt = sampling.random_point(r, decomp.chart_vars, zero_vars)
        pt = dict(chart_pt)
        pt.update(_w_point(decomp, chart_pt, sections, r))
        pts.append(pt)
    return pts


def _jacobian_rank(eqs, names, pt):
    if not eqs:
        return 0
    rows = [[e.diff(v).eval(pt) for v in names] for e in eqs]
    return sampling.rank(rows)


def _restricted_form(eq, decomp):
    """Coordinate, or linear in the w-variables with chart-ring coefficients."""
    wset = set(decomp.w_vars)
    vs = eq.variables
    if len(eq.terms) == 1 and len(vs) == 1 and next(iter(eq.terms)).degree == 1:
        return True
    for m in eq.terms:
        if sum(e for v, e in m.items if v in wset) != 1:
            return False
    return True


def _forms_equations(decomp, forms):
    eqs = []
    for kind, x in forms:
        if kind == "var":
            eqs.append(Poly.var(x))
        else:
            eqs.extend(decomp.W[i][x] for i in range(decomp.n))
    return eqs


def check_smooth(component, decomp, seed=0):
    """Full-rank Jacobian of the defining forms at every sampled point."""
    names = decomp.ambient_vars
    eqs = list(component.equations)
    for e in eqs:
        if not _restricted_form(e, decomp):
            return False, {"reason": "form outside the coordinate/unit-linear class", "form": str(e)}
    for pt in sample_points(decomp, component.zero_vars, component.sections, seed):
        for e in eqs:
            if e.eval(pt) != 0:
                return False, {"reason": "sample point off the component", "point": _show(pt)}
        if _jacobian_rank(eqs, names, pt) != len(eqs):
            return False, {"reason": "Jacobian rank drops", "point": _show(pt)}
    return True, None


def check_normal_crossing(decomp, seed=0, max_order=None):
    """Independent differentials of the combined forms on every intersection."""
    names = decomp.ambient_vars
    comps = decomp.components
    k = len(comps)
    top = min(k, len(names)) if max_order is None else min(max_order, k, len(names))
    cross = [["self" if a == b else "normal" for b in range(k)] for a in range(k)]
    ok = True
    witness = None
    for size in range(2, top + 1):
        for group in combinations(range(k), size):
            forms = set()
            for g in group:
                forms.update(comps[g].forms)
            forms = sorted(forms, key=lambda f: (f[0] != "var", str(f[1])))
            eqs = _forms_equations(decomp, forms)
            zero = tuple(sort_vars(x for kind, x in forms if kind == "var"))
            secs = tuple(sorted(x for kind, x in forms if kind == "sec"))
            good = True
            for pt in sample_points(decomp, zero, secs, seed, random_points=3):
                if _jacobian_rank(eqs, names, pt) != len(eqs):
                    good = False
                    witness = {"components": [comps[g].name for g in group], "point": _show(pt)}
                    break
            if not good:
                ok = False
                if size == 2:
                    a, b = group
                    cross[a][b] = cross[b][a] = "not"
    decomp.crossings = cross
    return ok, witness


def main_component(decomp):
    if decomp.main < 0:
        raise NoMainComponent("some diagonal entry vanishes identically")
    return decomp.components[decomp.main]


def kernel_free_on_components(phi, decomp, seed=0, samples=10, offset=1):
    """Kernel rank of phi on each component's chart projection."""
    table = []
    for c in decomp.components:
        kr = kernel_rank(phi, c.zero_vars, seed=seed, samples=samples, names=decomp.chart_vars)
        table.append({"component": c.name, "kernel_rank": kr, "psi_kernel_rank": kr + offset})
    return table


def _show(pt):
    return {k: str(v) for k, v in sorted(pt.items())}
