"""Seeded rational point sampling and exact rank computations."""

import random
from fractions import Fraction
from itertools import combinations

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

MAX_DENOMINATOR = 97


def rng(seed):
    return random.Random(seed)


def random_rational(r, nonzero=True):
    while True:
        den = r.randint(1, MAX_DENOMINATOR)
        num = r.randint(-MAX_DENOMINATOR, MAX_DENOMINATOR)
        q = Fraction(num, den)
        if q or not nonzero:
            return q


def random_point(r, names, zero=()):
    zero = set(zero)
    return {v: (Fraction(0) if v in zero else random_rational(r)) for v in names}


def subsets(names):
    names = list(names)
    for k in range(len(names) + 1):
        for c in combinations(names, k):
            yield c


def strata_points(names, seed=0):
    """One representative per coordinate stratum: a subset vanishes, the rest generic.

    The generic values are drawn once per variable, so strata share coordinates.
    """
    r = rng(seed)
    generic = {v: random_rational(r) for v in names}
    pts = []
    for zs in subsets(names):
        zs = set(zs)
        pts.append({v: (Fraction(0) if v in zs else generic[v]) for v in names})
    return pts


def _dm(rows):
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    return DomainMatrix([[QQ(x.numerator, x.denominator) for x in r] for r in rows], (nr, nc), QQ)


def rank(rows):
    """Exact rank of a rational matrix given as a list of rows."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return _dm(rows).rank()


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} as lists of Fractions."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows).nullspace().to_Matrix()
    out = []
    for i in range(ns.rows):
        out.append([Fraction(int(x.p), int(x.q)) for x in ns.row(i)])
    return out
