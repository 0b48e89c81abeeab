"""Two-term complexes E -> F as polynomial matrices over a chart ring.

The centerpiece is :func:`is_locally_diagonalizable`, a Smith-style reduction in
the local ring at a point.  Pivots are entries that divide every remaining entry
locally; elimination uses unit multipliers only, so both transforms stay
polynomial with determinants that are units at the point.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .exactpoly import (
    NO, ONE, UNDECIDED, YES, ZERO, MonIdeal, Poly, local_associates_at, local_divides_at, split_at,
    render, sort_vars,
)
from . import sampling


class PointOutsideChart(ValueError):
    pass


class NotDescendant(ValueError):
    pass


class RankDisagreement(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# small polynomial-matrix helpers


def identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def matmul(a, b):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = ZERO
            for t in range(m):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def map_matrix(fn, mat):
    return tuple(tuple(fn(x) for x in row) for row in mat)


def all_minors(mat, size):
    """Dict (rows, cols) -> minor polynomial, for every size x size submatrix."""
    q = len(mat)
    p = len(mat[0]) if q else 0
    if size == 0:
        return {((), ()): ONE}
    if size > min(p, q):
        return {}
    memo = {}

    def det(rows, cols):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            val = mat[rows[0]][cols[0]]
        else:
            val = ZERO
            r0, rest = rows[0], rows[1:]
            for j, c in enumerate(cols):
                a = mat[r0][c]
                if a:
                    sub = det(rest, cols[:j] + cols[j + 1:])
                    if sub:
                        term = a * sub
                        val = val - term if j % 2 else val + term
        memo[key] = val
        return val

    return {(r, c): det(r, c) for r in combinations(range(q), size) for c in combinations(range(p), size)}


def determinant(mat):
    n = len(mat)
    if n == 0:
        return ONE
    return all_minors(mat, n)[(tuple(range(n)), tuple(range(n)))]


def adjugate(mat):
    n = len(mat)
    if n == 1:
        return ((ONE,),)
    minors = all_minors(mat, n - 1)
    full = tuple(range(n))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            # adj[i][j] = (-1)^{i+j} * minor deleting row j, column i
            rows = tuple(r for r in full if r != j)
            cols = tuple(c for c in full if c != i)
            m = minors[(rows, cols)]
            row.append(-m if (i + j) % 2 else m)
        out.append(tuple(row))
    return tuple(out)


def render_matrix(mat):
    return [[render(x) for x in row] for row in mat]


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class TwoTermComplex:
    """phi: O^p -> O^q, stored as a q x p matrix of Polys."""

    entries: tuple
    chart: object = field(default=None, compare=False, repr=False)
    extra_vars: tuple = ()

    def __post_init__(self):
        rows = tuple(tuple(Poly.coerce(x) for x in r) for r in self.entries)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows, chart=None, extra_vars=()):
        return cls(tuple(tuple(rows_) for rows_ in rows), chart, tuple(extra_vars))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def variables(self):
        if self.chart is not None:
            return tuple(self.chart.vars)
        vs = set(self.extra_vars)
        for row in self.entries:
            for x in row:
                vs.update(x.variables)
        return tuple(sort_vars(vs))

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def evaluate(self, point):
        return [[x.eval(point) for x in row] for row in self.entries]

    def rank_at(self, point):
        if not self.entries or not self.cols:
            return 0
        return sampling.rank(self.evaluate(point))

    def subs(self, mapping, chart=None):
        return TwoTermComplex(map_matrix(lambda x: x.subs(mapping), self.entries), chart, self.extra_vars)

    def permute_rows(self, order):
        return TwoTermComplex(tuple(self.entries[i] for i in order), self.chart, self.extra_vars)

    def render(self):
        return render_matrix(self.entries)


@dataclass(frozen=True)
class DiagonalForm:
    """left * phi * right == diag(entries, 0, ...) exactly, valid near ``point``."""

    entries: tuple
    left: tuple
    right: tuple
    point: dict
    blocks: tuple = ()

    @property
    def rank(self):
        return len(self.entries)

    def diagonal(self, q, p):
        return tuple(
            tuple(self.entries[i] if i == j and i < len(self.entries) else ZERO for j in range(p))
            for i in range(q)
        )

    def round_trip(self, phi):
        prod = matmul(matmul(self.left, phi.entries), self.right)
        return prod == self.diagonal(phi.rows, phi.cols)

    def transforms_are_units(self):
        return all(determinant(t).eval(_full_point(self.point, determinant(t))) != 0 for t in (self.left, self.right))

    def verify(self, phi):
        return self.round_trip(phi) and self.transforms_are_units()


def _full_point(point, poly):
    pt = dict(point)
    for v in poly.variables:
        pt.setdefault(v, Fraction(0))
    return pt


@dataclass(frozen=True)
class DiagResult:
    verdict: str
    form: Optional[DiagonalForm] = None
    obstruction: Optional[int] = None
    witness: tuple = ()
    reason: str = ""
    certificate: str = ""

    @property
    def is_yes(self):
        return self.verdict == YES


@dataclass(frozen=True)
class DetIdealLadder:
    """ideals[k] holds the distinct nonzero (k+1)-minors; monomial[k] their
    monomial parts when every generator is monomial x unit at the origin."""

    ideals: tuple
    monomial: tuple

    def __len__(self):
        return len(self.ideals)

    def is_monomial(self):
        return all(m is not None for m in self.monomial)


# ---------------------------------------------------------------------------
# operations


def determinantal_ideals(phi):
    q, p = phi.shape
    r = max(p, q)
    ideals = []
    mons = []
    for k in range(r + 1):
        gens = []
        seen = set()
        for m in all_minors(phi.entries, k + 1).values():
            if m and m not in seen:
                seen.add(m)
                gens.append(m)
        ideals.append(tuple(gens))
        splits = [g.monomial_unit_split() for g in gens]
        if all(s is not None for s in splits):
            mons.append(MonIdeal([s[0] for s in splits]))
        else:
            mons.append(None)
    return DetIdealLadder(tuple(ideals), tuple(mons))


def _check_point(phi, point):
    point = {v: Fraction(a) for v, a in (point or {}).items()}
    if phi.chart is not None:
        extra = set(point) - set(phi.chart.vars)
        if extra:
            raise PointOutsideChart(
                "point uses %s, not coordinates of chart %r" % (sorted(extra), phi.chart.path)
            )
    return point


def _pivot_key(entry, i, j, point):
    split = split_at(entry, point)
    if split is not None:
        return (0, split[0].degree, len(entry.terms), i, j)
    return (1, entry.total_degree(), len(entry.terms), i, j)


def _smith(a, q, p, point):
    """In-place reduction at the origin.  Returns (L, R, rank, stall) where stall
    is None on success or (k, verdict, residual entries)."""
    L = [list(r) for r in identity(q)]
    R = [list(r) for r in identity(p)]
    k = 0
    while k < min(q, p):
        cells = [(a[i][j], i, j) for i in range(k, q) for j in range(k, p) if a[i][j]]
        if not cells:
            break
        pivot = None
        undecided = False
        for entry, i, j in sorted(cells, key=lambda c: _pivot_key(*c, point)):
            ok = True
            for other, _, _ in cells:
                verdict, _ = local_divides_at(entry, other, point)
                if verdict != YES:
                    ok = False
                    if verdict == UNDECIDED:
                        undecided = True
                    break
            if ok:
                pivot = (i, j)
                break
        if pivot is None:
            return L, R, k, (k, UNDECIDED if undecided else NO, tuple(c[0] for c in cells))
        i, j = pivot
        a[k], a[i] = a[i], a[k]
        L[k], L[i] = L[i], L[k]
        if j != k:
            for row in a:
                row[k], row[j] = row[j], row[k]
            for row in R:
                row[k], row[j] = row[j], row[k]
        piv = a[k][k]
        for r in range(k + 1, q):
            if a[r][k]:
                _, (s, t) = local_divides_at(piv, a[r][k], point)
                a[r] = [s * x - t * y for x, y in zip(a[r], a[k])]
                L[r] = [s * x - t * y for x, y in zip(L[r], L[k])]
        for c in range(k + 1, p):
            if a[k][c]:
                _, (s, t) = local_divides_at(piv, a[k][c], point)
                for row in a:
                    row[c] = s * row[c] - t * row[k]
                for row in R:
                    row[c] = s * row[c] - t * row[k]
        k += 1
    return L, R, k, None


def _merge_blocks(entries, point):
    blocks = []
    for e in entries:
        if blocks and local_associates_at(blocks[-1][0], e, point) == YES:
            blocks[-1][1] += 1
        else:
            blocks.append([e, 1])
    return tuple((e, n) for e, n in blocks)


def _ladder_verdict(phi, point):
    """Decide principality of every I_k at the point from the minors alone.

    Returns (k, generators) for the first decidably non-principal I_k,
    'principal' when all are decidably principal, or None when undecided.
    """
    ladder = determinantal_ideals(phi)
    all_principal = True
    for k, gens in enumerate(ladder.ideals):
        if not gens:
            continue
        found = False
        undecided = False
        for g in gens:
            verdicts = [local_divides_at(g, h, point)[0] for h in gens]
            if all(v == YES for v in verdicts):
                found = True
                break
            if UNDECIDED in verdicts and NO not in verdicts:
                undecided = True
        if not found:
            if undecided:
                all_principal = False
                return None
            return k, gens
    return "principal" if all_principal else None


def is_locally_diagonalizable(phi, point=None):
    """Test local diagonalizability of ``phi`` at ``point`` (default: origin)."""
    point = _check_point(phi, point)
    q, p = phi.shape
    a = [list(row) for row in phi.entries]
    L, R, l, stall = _smith(a, q, p, point)
    if stall is None:
        form = DiagonalForm(
            entries=tuple(a[i][i] for i in range(l)),
            left=tuple(tuple(row) for row in L),
            right=tuple(tuple(row) for row in R),
            point=point,
            blocks=_merge_blocks([a[i][i] for i in range(l)], point),
        )
        return DiagResult(YES, form=form, certificate="smith")
    k, verdict, residual = stall
    if verdict == NO:
        return DiagResult(NO, obstruction=k, witness=residual,
                          reason="I_%d is not principal at the point" % k)
    ladder = _ladder_verdict(phi, point)
    if ladder == "principal":
        return DiagResult(YES, certificate="ladder",
                          reason="every determinantal ideal is principal; no constructive pivot found")
    if isinstance(ladder, tuple):
        kk, gens = ladder
        return DiagResult(NO, obstruction=kk, witness=tuple(gens),
                          reason="I_%d is not principal at the point" % kk)
    return DiagResult(UNDECIDED, obstruction=k, witness=residual,
                      reason="local divisibility outside the decidable class")


def kernel_rank(phi, component=None, seed=0, samples=3, names=None):
    """p - generic rank of phi on a coordinate-subspace component.

    ``component`` is an iterable of variables vanishing on the component
    (None for the whole chart).
    """
    zero = set(component or ())
    names = list(names) if names is not None else list(phi.variables)
    names = sort_vars(set(names) | zero)
    r = sampling.rng(seed)
    ranks = []
    for _ in range(max(samples, 3)):
        pt = sampling.random_point(r, names, zero)
        ranks.append(phi.rank_at(pt))
    if len(set(ranks)) != 1:
        raise RankDisagreement("sampled ranks disagree: %s (seed %d)" % (ranks, seed))
    return phi.cols - ranks[0]


def pullback(phi, child):
    """Rewrite every entry through the substitution from phi's chart to ``child``."""
    if phi.chart is None:
        mapping = child.subst
    else:
        mapping = child.relative_subst(phi.chart)
    return phi.subs(mapping, chart=child)
