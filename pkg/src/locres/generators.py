"""Seeded random inputs for experiments and acceptance runs."""

from fractions import Fraction

from .exactpoly import Monomial, Poly
from .twocomplex import TwoTermComplex, determinantal_ideals, is_locally_diagonalizable
from .blowup import Chart
from . import sampling

DEFAULT_VARS = ("x1", "x2", "x3", "x4")


def _unit(r, names, constant_only):
    c = Fraction(r.choice([-3, -2, -1, 1, 2, 3, 5]), r.choice([1, 1, 2, 3]))
    p = Poly.const(c)
    if not constant_only and r.random() < 0.3:
        p = p + Poly.var(r.choice(names)).scale(r.choice([1, -1, 2]))
    return p


def random_unit_monomial_matrix(r, max_rows=3, max_cols=4, names=DEFAULT_VARS, max_exp=2,
                                zero_prob=0.2, constant_units=False, max_tries=200):
    """A q x p matrix of unit * monomial entries whose determinantal ladder is monomial.

    Entries are resampled until every minor is monomial times a unit at the origin.
    """
    for _ in range(max_tries):
        q = r.randint(1, max_rows)
        p = r.randint(1, max_cols)
        nv = r.randint(1, len(names))
        vs = list(names[:nv])
        rows = []
        for _ in range(q):
            row = []
            for _ in range(p):
                if r.random() < zero_prob:
                    row.append(Poly())
                    continue
                m = Monomial({v: r.randint(0, max_exp) for v in vs})
                row.append(_unit(r, vs, constant_units).mul_monomial(m))
            rows.append(tuple(row))
        phi = TwoTermComplex(tuple(rows), Chart.root(vs))
        if determinantal_ideals(phi).is_monomial():
            return phi
    raise RuntimeError("no matrix with a monomial ladder after %d tries" % max_tries)


def diagonalizable_everywhere(phi, seed=0):
    return all(is_locally_diagonalizable(phi, pt).is_yes
               for pt in sampling.strata_points(phi.chart.vars, seed=seed))


def random_diagonalizable_matrix(r, names=DEFAULT_VARS, max_rows=3, max_cols=4, max_tries=500):
    """Unit * monomial matrix already diagonalizable at every stratum origin.

    Built as a product L * diag(monomial chain) * R with triangular unit
    transforms, then checked.
    """
    for _ in range(max_tries):
        q = r.randint(1, max_rows)
        p = r.randint(1, max_cols)
        nv = r.randint(1, len(names))
        vs = list(names[:nv])
        l = r.randint(0, min(q, p))
        chain = []
        cur = Monomial()
        for _ in range(l):
            cur = cur * Monomial({r.choice(vs): r.randint(0, 1)})
            chain.append(cur)
        D = [[Poly.monomial(chain[i]) if i == j and i < l else Poly() for j in range(p)] for i in range(q)]
        L = _unit_triangular(r, q)
        R = _unit_triangular(r, p)
        ent = _mul(_mul(L, D), R)
        phi = TwoTermComplex(tuple(tuple(row) for row in ent), Chart.root(vs))
        if determinantal_ideals(phi).is_monomial() and diagonalizable_everywhere(phi):
            return phi
    raise RuntimeError("no diagonalizable sample after %d tries" % max_tries)


def _unit_triangular(r, n):
    m = [[Poly.const(1) if i == j else Poly() for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if r.random() < 0.5:
                m[i][j] = Poly.const(r.choice([-2, -1, 1, 2, 3]))
    return m


def _mul(a, b):
    n, k, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Poly()) for j in range(p)] for i in range(n)]


def random_matrices(seed, count, **kw):
    r = sampling.rng(seed)
    return [random_unit_monomial_matrix(r, **kw) for _ in range(count)]
