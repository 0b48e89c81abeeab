"""Affine charts, smooth coordinate blowups and monomial principalization.

Chart coordinates keep their names across coordinate blowups: in the chart
with pivot ``s`` of the blowup along ``{x_s, x_t, ...}`` the substitution is
``x_t -> x_s * x_t``, so ``x_t`` now denotes the ratio ``x_t / x_s``.
"""

from fractions import Fraction
from itertools import combinations

import sympy

from .exactpoly import (
    Monomial, MonIdeal, Poly, monideal_local_principal, sort_vars, var_key,
)
from .twocomplex import (
    NotDescendant, TwoTermComplex, determinantal_ideals, is_locally_diagonalizable, pullback,
)
from . import sampling


class UnknownVariable(KeyError):
    pass


class NonMonomialIdeal(ValueError):
    pass


class NonMonomialLadder(ValueError):
    pass


class DiagonalizationFailed(RuntimeError):
    def __init__(self, path, point, result):
        self.path = path
        self.point = point
        self.result = result
        super().__init__(
            "chart %r: not diagonalizable at %s (%s)"
            % (path, {k: str(v) for k, v in point.items()}, result.reason or result.verdict)
        )


MAX_DEPTH = 64


class Chart:
    """An affine coordinate patch over the root chart."""

    def __init__(self, vars, subst, local_subst=None, exceptional=(), parent=None,
                 pivot=None, smooth=True):
        self.vars = tuple(vars)
        self.subst = dict(subst)
        self.local_subst = dict(local_subst or {})
        self.exceptional = tuple(exceptional)
        self.parent = parent
        self.pivot = pivot
        self.smooth = smooth
        self.path = "" if parent is None else parent.path + "/" + pivot

    @classmethod
    def root(cls, names):
        names = tuple(names)
        return cls(names, {v: Poly.var(v) for v in names})

    @property
    def is_root(self):
        return self.parent is None

    @property
    def depth(self):
        return 0 if self.parent is None else self.parent.depth + 1

    def ancestors(self):
        c = self
        while c is not None:
            yield c
            c = c.parent

    def relative_subst(self, ancestor):
        """Map ``ancestor``'s coordinates to polynomials in this chart's coordinates."""
        chain = []
        for c in self.ancestors():
            if c is ancestor:
                break
            chain.append(c)
        else:
            raise NotDescendant("chart %r is not below chart %r" % (self.path, ancestor.path))
        mapping = {v: Poly.var(v) for v in ancestor.vars}
        for c in reversed(chain):
            mapping = {v: p.subs(c.local_subst) for v, p in mapping.items()}
        return mapping

    def composed_subst(self):
        """Root substitution rebuilt from the per-step substitutions."""
        root = self
        while root.parent is not None:
            root = root.parent
        return self.relative_subst(root)

    def origin(self):
        return {v: Fraction(0) for v in self.vars}

    def __repr__(self):
        return "Chart(%r, vars=%s)" % (self.path, ",".join(self.vars))


class BlowupTree:
    """Charts produced by successive blowups; ``leaves`` kept in path order."""

    def __init__(self, root):
        self.root = root
        self.steps = []
        self.children = {}
        self.leaves = [root]
        self.forms = {}
        self.complexes = {}

    def record(self, chart, center, kids):
        self.steps.append((tuple(center), chart.path, tuple(kids)))
        self.children[chart.path] = (tuple(center), tuple(kids))
        i = self.leaves.index(chart)
        self.leaves[i:i + 1] = list(kids)

    @property
    def depth(self):
        return max(c.depth for c in self.leaves) - self.root.depth

    def is_trivial(self):
        return not self.steps

    def leaf(self, path):
        for c in self.leaves:
            if c.path == path:
                return c
        raise KeyError(path)

    def lift_point(self, point):
        """Follow the canonical chart (pivot of largest modulus) down to a leaf.

        Returns ``(leaf, lifted point)`` or None when the point meets a center.
        """
        chart = self.root
        pt = {v: Fraction(point.get(v, 0)) for v in chart.vars}
        while chart.path in self.children:
            center, kids = self.children[chart.path]
            vals = [(abs(pt[s]), s) for s in center]
            best = max(vals, key=lambda t: t[0])[0]
            if best == 0:
                return None
            s = min((s for a, s in vals if a == best), key=var_key)
            pt = {v: (pt[v] / pt[s] if v in center and v != s else pt[v]) for v in pt}
            chart = next(k for k in kids if k.pivot == s)
        return chart, pt

    def lifts(self, point):
        """Every leaf containing a preimage of ``point``, with that preimage."""
        out = []

        def walk(chart, pt):
            if chart.path not in self.children:
                out.append((chart, pt))
                return
            center, kids = self.children[chart.path]
            for k in kids:
                s = k.pivot
                if pt[s] == 0:
                    continue
                walk(k, {v: (pt[v] / pt[s] if v in center and v != s else pt[v]) for v in pt})

        walk(self.root, {v: Fraction(point.get(v, 0)) for v in self.root.vars})
        return out


# ---------------------------------------------------------------------------
# blowups


def blow_up_coordinate_center(c, center, tag=None):
    """Blow up the coordinate subspace {x_s = 0 : s in center} of chart ``c``."""
    center = sort_vars(set(center))
    if not center:
        raise ValueError("empty center")
    unknown = [v for v in center if v not in c.vars]
    if unknown:
        raise UnknownVariable("%s not coordinates of chart %r" % (unknown, c.path))
    if len(center) == 1:
        return [c]
    tag = tag or "E(%s)@%s" % (",".join(center), c.path or "/")
    kids = []
    for s in center:
        local = {t: Poly.var(s) * Poly.var(t) for t in center if t != s}
        subst = {v: p.subs(local) for v, p in c.subst.items()}
        exc = []
        for name, v in c.exceptional:
            # the strict transform of {x_s = 0} misses the chart with pivot s
            if v != s:
                exc.append((name, v))
        exc.append((tag, s))
        kids.append(Chart(c.vars, subst, local, exc, parent=c, pivot=s, smooth=c.smooth))
    return kids


def _as_monideal(ideal):
    if isinstance(ideal, MonIdeal):
        return ideal
    mons = []
    for g in ideal:
        if isinstance(g, Monomial):
            mons.append(g)
            continue
        p = Poly.coerce(g)
        if not p.is_monomial():
            raise NonMonomialIdeal("generator %s is not a monomial" % p)
        mons.append(next(iter(p.terms)))
    return MonIdeal(mons)


def _unimodular_basis(vectors, n):
    for basis in combinations(vectors, n):
        m = sympy.Matrix([list(b) for b in basis]).T
        if abs(m.det()) != 1:
            continue
        inv = m.inv()
        coords = {}
        ok = True
        for v in vectors:
            c = inv * sympy.Matrix(list(v))
            if any(x < 0 for x in c):
                ok = False
                break
            coords[v] = tuple(int(x) for x in c)
        if ok:
            return basis, coords
    return None


def blow_up_monomial_ideal(c, ideal):
    """Toric charts of the blowup of ``c`` along a monomial ideal.

    Returns a list of ``(chart, smooth)``; smoothness means the chart ring is a
    polynomial ring, found by exhibiting a unimodular basis of its semigroup.
    """
    ideal = _as_monideal(ideal)
    if ideal.is_zero():
        raise ValueError("cannot blow up the zero ideal")
    if monideal_local_principal(ideal) is not None:
        return [(c, True)]
    names = list(c.vars)
    unknown = [v for v in ideal.variables if v not in names]
    if unknown:
        raise UnknownVariable("%s not coordinates of chart %r" % (unknown, c.path))
    n = len(names)
    idx = {v: i for i, v in enumerate(names)}

    def vec(m):
        out = [0] * n
        for v, e in m.items:
            out[idx[v]] = e
        return tuple(out)

    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    out = []
    for g in ideal.generators:
        gv = vec(g)
        extra = []
        for h in ideal.generators:
            if h != g:
                d = tuple(a - b for a, b in zip(vec(h), gv))
                if d not in units and d not in extra and any(d):
                    extra.append(d)
        vectors = units + extra
        found = _unimodular_basis(vectors, n)
        pivot = str(g)
        if found is not None:
            basis, coords = found
            naming = {}
            free_names = [names[i] for i in range(n) if units[i] not in basis]
            for i, b in enumerate(basis):
                if b in units:
                    naming[b] = names[units.index(b)]
            for b in basis:
                if b in naming:
                    continue
                pick = None
                for v in free_names:
                    if coords[units[idx[v]]][basis.index(b)] > 0:
                        pick = v
                        break
                if pick is None:
                    pick = free_names[0]
                free_names.remove(pick)
                naming[b] = pick
            new_vars = [naming[b] for b in basis]
            local = {}
            for i, v in enumerate(names):
                cs = coords[units[i]]
                local[v] = Poly.monomial(Monomial({new_vars[k]: cs[k] for k in range(n)}))
            smooth = True
        else:
            new_vars = list(names) + ["t%d_%s" % (k, g) for k in range(len(extra))]
            local = {v: Poly.var(v) for v in names}
            smooth = False
        subst = {v: p.subs(local) for v, p in c.subst.items()}
        g_pulled = Poly.monomial(g).subs(local)
        exc = [("E(%s)@%s" % (ideal, c.path or "/"), v) for v in g_pulled.variables]
        chart = Chart(sort_vars(new_vars), subst, local, tuple(c.exceptional) + tuple(exc),
                      parent=c, pivot=pivot, smooth=smooth and c.smooth)
        out.append((chart, smooth))
    return out


# ---------------------------------------------------------------------------
# principalization


def failing_subspaces(ideal):
    """Minimal variable sets T whose coordinate subspace carries a non-principal point."""
    names = ideal.variables
    failing = []
    for size in range(2, len(names) + 1):
        for T in combinations(names, size):
            if any(set(f) <= set(T) for f in failing):
                continue
            if monideal_local_principal(ideal.localize(T)) is None:
                failing.append(T)
    return failing


def _incomparable(a, b):
    return not a.divides(b) and not b.divides(a)


def choose_center(gens):
    """Two-variable center from the first incomparable pair of generators.

    With gamma = exponent difference of the pair, the center is
    {argmax gamma, argmin gamma}.  In every chart the triple
    (max |gamma|, #entries attaining it, #entries of the opposite sign)
    drops lexicographically, so the pair becomes comparable after finitely
    many steps; comparable pairs stay comparable under pullback.
    """
    gens = list(gens)
    if monideal_local_principal(MonIdeal(gens)) is not None:
        return None
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            a, b = gens[i], gens[j]
            if _incomparable(a, b):
                names = sort_vars(set(a.variables) | set(b.variables))
                gamma = {v: a.exp(v) - b.exp(v) for v in names}
                top = max(gamma.values())
                bottom = min(gamma.values())
                s = next(v for v in names if gamma[v] == top)
                t = next(v for v in names if gamma[v] == bottom)
                return (s, t) if var_key(s) < var_key(t) else (t, s)
    return None


def _pull_monomial(m, pivot, center):
    e = m.exponents
    extra = sum(e.get(t, 0) for t in center if t != pivot)
    if extra:
        e[pivot] = e.get(pivot, 0) + extra
    return Monomial(e)


def _pull_ideal(ideal, chart, base):
    if chart is base:
        return ideal
    return ideal.subs(chart.relative_subst(base))


def _principalize_into(tree, chart, gens, depth=0):
    center = choose_center(gens)
    if center is None:
        return
    if depth > MAX_DEPTH:
        raise RuntimeError("principalization exceeded %d blowups on %s" % (MAX_DEPTH, MonIdeal(gens)))
    tag = "E%d" % (len(tree.steps) + 1)
    kids = blow_up_coordinate_center(chart, center, tag=tag)
    tree.record(chart, center, kids)
    for k in kids:
        _principalize_into(tree, k, [_pull_monomial(m, k.pivot, center) for m in gens], depth + 1)


def principalize(c, ideal, tree=None):
    """Smooth coordinate blowups after which ``ideal`` is principal on every leaf."""
    ideal = _as_monideal(ideal)
    if tree is None:
        tree = BlowupTree(c)
    _principalize_into(tree, c, list(ideal.generators))
    return tree


def leaf_ideal_principal(ideal, leaf, base):
    return monideal_local_principal(_pull_ideal(ideal, leaf, base)) is not None


# ---------------------------------------------------------------------------
# derived resolution


def strata_points(chart, seed=0):
    return sampling.strata_points(chart.vars, seed=seed)


def check_leaf(phi_leaf, leaf, seed=0):
    """Diagonalize at every stratum origin of the leaf; return the form at its origin."""
    origin_form = None
    for pt in strata_points(leaf, seed):
        res = is_locally_diagonalizable(phi_leaf, pt)
        if not res.is_yes or res.form is None:
            raise DiagonalizationFailed(leaf.path, pt, res)
        if all(v == 0 for v in pt.values()):
            origin_form = res.form
    return origin_form


def derived_resolution(phi, seed=0, check=True):
    """Principalize I_0, I_1, ... in turn and certify diagonalizability on every leaf."""
    root = phi.chart if phi.chart is not None else Chart.root(phi.variables)
    if phi.chart is None:
        phi = TwoTermComplex(phi.entries, root, phi.extra_vars)
    ladder = determinantal_ideals(phi)
    if not ladder.is_monomial():
        bad = next(k for k, m in enumerate(ladder.monomial) if m is None)
        raise NonMonomialLadder("I_%d has a generator that is not monomial x unit" % bad)
    tree = BlowupTree(root)
    for ideal in ladder.monomial:
        if ideal.is_zero():
            continue
        for leaf in list(tree.leaves):
            principalize(leaf, _pull_ideal(ideal, leaf, root), tree=tree)
    tree.ladder = ladder
    for leaf in tree.leaves:
        phi_leaf = pullback(phi, leaf)
        tree.complexes[leaf.path] = phi_leaf
        if check:
            tree.forms[leaf.path] = check_leaf(phi_leaf, leaf, seed)
    return tree
