"""Exact multivariate polynomials over the rationals.

Everything here is an immutable value.  Coefficients are ``fractions.Fraction``;
no floating point is ever involved.  Monomials are ordered graded-lexicographically
with variables ranked by (natural) name order, so ``z2`` precedes ``z10``.
"""

import ast
import re
from fractions import Fraction
from functools import cmp_to_key, total_ordering
from itertools import combinations


class ZeroDivisor(ZeroDivisionError):
    pass


class MissingVariable(KeyError):
    pass


class PolySyntaxError(ValueError):
    pass


_NAT = re.compile(r"(\d+)")


def var_key(name):
    """Natural sort key for variable names (``z2`` < ``z10``)."""
    return tuple(int(p) if p.isdigit() else p for p in _NAT.split(name))


def sort_vars(names):
    return sorted(names, key=var_key)


def _lex_cmp(a, b):
    # a, b: sorted tuples of (var, exp); first differing variable decides
    i = 0
    while i < len(a) and i < len(b):
        (va, ea), (vb, eb) = a[i], b[i]
        if va != vb:
            return 1 if var_key(va) < var_key(vb) else -1
        if ea != eb:
            return 1 if ea > eb else -1
        i += 1
    return (len(a) > len(b)) - (len(a) < len(b))


@total_ordering
class Monomial:
    """A power product, stored sparsely as sorted ``(var, exp)`` pairs."""

    __slots__ = ("_items", "_hash", "_deg")

    def __init__(self, exponents=None):
        if exponents is None:
            exponents = {}
        elif not isinstance(exponents, dict):
            exponents = dict(exponents)
        items = []
        for v, e in exponents.items():
            if e < 0:
                raise ValueError("negative exponent for %s" % v)
            if e:
                items.append((v, int(e)))
        items.sort(key=lambda it: var_key(it[0]))
        self._items = tuple(items)
        self._hash = hash(self._items)
        self._deg = sum(e for _, e in items)

    @classmethod
    def var(cls, name, exp=1):
        return cls({name: exp})

    @property
    def items(self):
        return self._items

    @property
    def exponents(self):
        return dict(self._items)

    @property
    def degree(self):
        return self._deg

    @property
    def variables(self):
        return tuple(v for v, _ in self._items)

    def exp(self, name):
        for v, e in self._items:
            if v == name:
                return e
        return 0

    def is_one(self):
        return not self._items

    def __mul__(self, other):
        d = dict(self._items)
        for v, e in other._items:
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def __pow__(self, k):
        return Monomial({v: e * k for v, e in self._items})

    def divides(self, other):
        return all(e <= other.exp(v) for v, e in self._items)

    def __floordiv__(self, other):
        d = dict(self._items)
        for v, e in other._items:
            r = d.get(v, 0) - e
            if r < 0:
                raise ValueError("%s does not divide %s" % (other, self))
            d[v] = r
        return Monomial(d)

    def gcd(self, other):
        return Monomial({v: min(e, other.exp(v)) for v, e in self._items})

    def lcm(self, other):
        d = dict(self._items)
        for v, e in other._items:
            d[v] = max(d.get(v, 0), e)
        return Monomial(d)

    def cmp(self, other):
        """Graded-lex comparison: -1, 0 or 1."""
        if self._deg != other._deg:
            return 1 if self._deg > other._deg else -1
        return _lex_cmp(self._items, other._items)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self._items:
            return "1"
        return "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in self._items)

    def __repr__(self):
        return "Monomial(%s)" % self


ONE_MONOMIAL = Monomial()
grlex_key = cmp_to_key(Monomial.cmp)


def monomial_divides(a, b):
    return a.divides(b)


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


class Poly:
    """Sparse polynomial: a mapping Monomial -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in (terms.items() if isinstance(terms, dict) else terms):
                c = _frac(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c):
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def var(cls, name):
        return cls({Monomial.var(name): 1})

    @classmethod
    def monomial(cls, m, c=1):
        return cls({m: c})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, Monomial):
            return cls.monomial(x)
        return cls.const(x)

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def variables(self):
        vs = set()
        for m in self._terms:
            vs.update(m.variables)
        return tuple(sort_vars(vs))

    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ZeroDivisor("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def coeff(self, m):
        return self._terms.get(m, Fraction(0))

    @property
    def constant_term(self):
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def is_constant(self):
        return all(m.is_one() for m in self._terms)

    def is_local_unit(self):
        """Nonzero constant term: a unit in the local ring at the origin."""
        return self.constant_term != 0

    def is_monomial(self):
        return len(self._terms) == 1

    def total_degree(self):
        return max((m.degree for m in self._terms), default=-1)

    # arithmetic
    def __add__(self, other):
        other = Poly.coerce(other)
        d = dict(self._terms)
        for m, c in other._terms.items():
            d[m] = d.get(m, 0) + c
        return Poly(d)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        other = Poly.coerce(other)
        d = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                d[m] = d.get(m, 0) + c1 * c2
        return Poly(d)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        return Poly({m: c * v for m, v in self._terms.items()})

    def mul_monomial(self, mono, c=1):
        return Poly({m * mono: c * v for m, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation and substitution
    def eval(self, point):
        total = Fraction(0)
        for m, c in self._terms.items():
            val = c
            for v, e in m.items:
                try:
                    val *= _frac(point[v]) ** e
                except KeyError:
                    raise MissingVariable(v) from None
            total += val
        return total

    def partial_eval(self, point):
        """Substitute rational values for the variables present in ``point``."""
        d = {}
        for m, c in self._terms.items():
            rest = {}
            for v, e in m.items:
                if v in point:
                    c = c * _frac(point[v]) ** e
                else:
                    rest[v] = e
            key = Monomial(rest)
            d[key] = d.get(key, 0) + c
        return Poly(d)

    def subs(self, mapping):
        """Substitute polynomials for variables; unmapped variables are kept."""
        if not mapping:
            return self
        cache = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = Poly.coerce(mapping[v]) ** e
            return cache[key]

        out = Poly()
        for m, c in self._terms.items():
            term = Poly.const(c)
            keep = {}
            for v, e in m.items:
                if v in mapping:
                    term = term * power(v, e)
                else:
                    keep[v] = e
            if keep:
                term = term.mul_monomial(Monomial(keep))
            out = out + term
        return out

    def translate(self, point):
        """Re-center at ``point``: substitute x -> x + point[x]."""
        shift = {v: Poly.var(v) + _frac(a) for v, a in point.items() if a}
        return self.subs(shift)

    def diff(self, var):
        d = {}
        for m, c in self._terms.items():
            e = m.exp(var)
            if e:
                ex = m.exponents
                ex[var] = e - 1
                d[Monomial(ex)] = d.get(Monomial(ex), 0) + c * e
        return Poly(d)

    # monomial content
    def monomial_content(self):
        """Greatest monomial dividing every term (1 for the zero polynomial)."""
        it = iter(self._terms)
        try:
            g = next(it)
        except StopIteration:
            return ONE_MONOMIAL
        for m in it:
            g = g.gcd(m)
            if g.is_one():
                break
        return g

    def div_monomial(self, mono):
        return Poly({m // mono: c for m, c in self._terms.items()})

    def monomial_unit_split(self):
        """Return ``(m, u)`` with ``self == m*u`` and ``u`` a local unit, else None."""
        if not self._terms:
            return None
        m = self.monomial_content()
        u = self.div_monomial(m)
        if u.is_local_unit():
            return m, u
        return None

    def __str__(self):
        return render(self)

    def __repr__(self):
        return "Poly(%r)" % render(self)


def _render_coeff(c):
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def render(p):
    """Canonical text: decreasing graded-lex terms, coefficients as ``a/b``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if m.is_one():
            body = _render_coeff(a)
        elif a == 1:
            body = str(m)
        else:
            body = "%s*%s" % (_render_coeff(a), m)
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(" %s %s" % (sign, body))
    return "".join(parts)


def var(name):
    return Poly.var(name)


def const(c):
    return Poly.const(c)


ZERO = Poly()
ONE = Poly.const(1)


# ---------------------------------------------------------------------------
# parsing


def parse_poly(text):
    """Parse ``"2*z1^2*z2 - 1/3"`` style text into a Poly."""
    if isinstance(text, (int, Fraction)):
        return Poly.const(text)
    if not isinstance(text, str):
        raise PolySyntaxError("expected a string, got %r" % (text,))
    src = text.replace("^", "**").strip()
    if not src:
        raise PolySyntaxError("empty polynomial")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise PolySyntaxError("cannot parse %r: %s" % (text, exc.msg)) from None
    return _walk(tree.body, text)


def _walk(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Poly.const(node.value)
    if isinstance(node, ast.Name):
        return Poly.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _walk(node.operand, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _walk(node.left, text)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise PolySyntaxError("exponent must be a nonnegative integer in %r" % text)
            if node.right.value < 0:
                raise PolySyntaxError("negative exponent in %r" % text)
            return left ** node.right.value
        right = _walk(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise PolySyntaxError("can only divide by a nonzero constant in %r" % text)
            return left.scale(1 / right.constant_term)
    raise PolySyntaxError("unsupported expression in %r" % text)


# ---------------------------------------------------------------------------
# division


def divide(q, p):
    """Single-divisor long division under graded-lex; returns (quotient, remainder)."""
    if p.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    lm, lc = p.leading_term()
    quot = {}
    rem = {}
    r = q
    while not r.is_zero():
        m, c = r.leading_term()
        if lm.divides(m):
            f = m // lm
            k = c / lc
            quot[f] = quot.get(f, 0) + k
            r = r - p.mul_monomial(f, k)
        else:
            rem[m] = c
            r = r - Poly.monomial(m, c)
    return Poly(quot), Poly(rem)


def poly_divides(p, q):
    """Decide p | q in Q[x]; returns (True, h) with q == p*h, or (False, None)."""
    h, r = divide(q, p)
    if r.is_zero():
        return True, h
    return False, None


def poly_eval(p, point):
    return p.eval(point)


# ---------------------------------------------------------------------------
# local divisibility at the origin

YES, NO, UNDECIDED = "yes", "no", "undecided"


def _binomial_unit_free(p):
    # a polynomial whose terms share one weighted degree for some positive
    # weight has no factor that is a unit at the origin
    if p.is_local_unit() or len(p.terms) != 2:
        return False
    (m1, _), (m2, _) = p.terms.items()
    diff = {}
    for v in set(m1.variables) | set(m2.variables):
        diff[v] = m1.exp(v) - m2.exp(v)
    return any(e > 0 for e in diff.values()) and any(e < 0 for e in diff.values())


def _homogeneous_unit_free(p):
    degs = {m.degree for m in p.terms}
    return len(degs) == 1 and 0 not in degs


def is_unit_free(p):
    """True when ``p`` provably has no factor that is a unit at the origin."""
    split = p.monomial_content()
    rest = p.div_monomial(split)
    if rest.is_constant():
        return not rest.is_zero()
    return _homogeneous_unit_free(rest) or _binomial_unit_free(rest)


def local_divides(u, v):
    """Decide ``u | v`` in the local ring at the origin.

    Returns ``(verdict, (s, t))`` where on YES ``s`` is a local unit and
    ``s*v == t*u`` holds exactly in Q[x].
    """
    if v.is_zero():
        return YES, (ONE, ZERO)
    if u.is_zero():
        return NO, None
    split = u.monomial_unit_split()
    if split is not None:
        m, e = split
        if all(m.divides(t) for t in v.terms):
            return YES, (e, v.div_monomial(m))
        return NO, None
    ok, h = poly_divides(u, v)
    if ok:
        return YES, (ONE, h)
    if is_unit_free(u):
        return NO, None
    return UNDECIDED, None


def local_associates(u, v):
    """u and v generate the same ideal locally at the origin."""
    a, _ = local_divides(u, v)
    b, _ = local_divides(v, u)
    if a == YES and b == YES:
        return YES
    if NO in (a, b):
        return NO
    return UNDECIDED


def _value_at(p, point):
    return p.eval({v: point.get(v, 0) for v in p.variables})


def split_at(p, point):
    """``(m, e)`` with p == m*e, m a monomial in the coordinates vanishing at
    ``point`` and e(point) != 0; None when p has no such factorization."""
    if p.is_zero():
        return None
    cont = p.monomial_content()
    m = Monomial({v: e for v, e in cont.items if not point.get(v, 0)})
    e = p.div_monomial(m)
    if _value_at(e, point) != 0:
        return m, e
    return None


def local_divides_at(u, v, point):
    """``local_divides`` in the local ring at an arbitrary rational point.

    Entries of the form monomial x unit are decided without translating;
    everything else is shifted to the origin and the witness shifted back.
    """
    if not point or not any(point.values()):
        return local_divides(u, v)
    if v.is_zero():
        return YES, (ONE, ZERO)
    if u.is_zero():
        return NO, None
    split = split_at(u, point)
    if split is not None:
        m, e = split
        if all(m.divides(t) for t in v.terms):
            return YES, (e, v.div_monomial(m))
        return NO, None
    shift = {x: a for x, a in point.items() if a}
    back = {x: -a for x, a in shift.items()}
    verdict, wit = local_divides(u.translate(shift), v.translate(shift))
    if wit is None:
        return verdict, None
    s, t = wit
    return verdict, (s.translate(back), t.translate(back))


def local_associates_at(u, v, point):
    a, _ = local_divides_at(u, v, point)
    b, _ = local_divides_at(v, u, point)
    if a == YES and b == YES:
        return YES
    if NO in (a, b):
        return NO
    return UNDECIDED


# ---------------------------------------------------------------------------
# monomial ideals


class MonIdeal:
    """Monomial ideal with a reduced (antichain) generator set.

    The empty generator set is the zero ideal; a generator ``1`` is the unit ideal.
    """

    __slots__ = ("_gens",)

    def __init__(self, gens=()):
        self._gens = _reduce(gens)

    @property
    def generators(self):
        return self._gens

    def is_zero(self):
        return not self._gens

    def is_unit(self):
        return len(self._gens) == 1 and self._gens[0].is_one()

    def contains(self, m):
        return any(g.divides(m) for g in self._gens)

    def __add__(self, other):
        return MonIdeal(self._gens + other._gens)

    def intersect(self, other):
        return MonIdeal([a.lcm(b) for a in self._gens for b in other._gens])

    def __mul__(self, other):
        return MonIdeal([a * b for a in self._gens for b in other._gens])

    def gcd(self):
        g = None
        for m in self._gens:
            g = m if g is None else g.gcd(m)
        return g if g is not None else ONE_MONOMIAL

    def divide_by(self, mono):
        return MonIdeal([g // mono for g in self._gens])

    def subs(self, mapping):
        """Pull back along a monomial substitution (var -> monomial Poly)."""
        out = []
        for g in self._gens:
            p = Poly.monomial(g).subs(mapping)
            if not p.is_monomial():
                raise ValueError("substitution is not monomial on %s" % g)
            (m,) = p.terms
            out.append(m)
        return MonIdeal(out)

    def localize(self, keep):
        """Set every variable outside ``keep`` to 1."""
        keep = set(keep)
        return MonIdeal([Monomial({v: e for v, e in g.items if v in keep}) for g in self._gens])

    @property
    def variables(self):
        vs = set()
        for g in self._gens:
            vs.update(g.variables)
        return tuple(sort_vars(vs))

    def __eq__(self, other):
        return isinstance(other, MonIdeal) and self._gens == other._gens

    def __hash__(self):
        return hash(self._gens)

    def __str__(self):
        if not self._gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self._gens) + ")"

    __repr__ = __str__


def _reduce(gens):
    gens = sorted(set(gens), key=grlex_key)
    keep = []
    for g in gens:
        if not any(k.divides(g) for k in keep):
            keep.append(g)
    return tuple(keep)


def monideal_local_principal(ideal):
    """The generator dividing all others, if any (principality at the origin)."""
    gens = ideal.generators if isinstance(ideal, MonIdeal) else _reduce(ideal)
    if not gens:
        return None
    for g in gens:
        if all(g.divides(h) for h in gens):
            return g
    return None


def coordinate_ideal(names):
    return MonIdeal([Monomial.var(v) for v in names])


def products_ideal(names, size):
    """Ideal generated by all products of ``size`` distinct variables."""
    return MonIdeal([Monomial({v: 1 for v in c}) for c in combinations(sort_vars(names), size)])
