from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from locres.exactpoly import YES, Monomial, MonIdeal, Poly, monideal_local_principal, parse_poly as P
from locres.twocomplex import TwoTermComplex, determinantal_ideals, is_locally_diagonalizable
from locres.blowup import (
    BlowupTree, Chart, DiagonalizationFailed, NonMonomialIdeal, NonMonomialLadder, UnknownVariable,
    blow_up_coordinate_center, blow_up_monomial_ideal, derived_resolution, principalize,
)
from locres.generators import random_diagonalizable_matrix, random_unit_monomial_matrix
from locres import sampling
from strategies import monideals


def mono(text):
    (m,) = P(text).terms
    return m


def ideal(*texts):
    return MonIdeal([mono(t) for t in texts])


def pulled(I, leaf, root):
    return I.subs(leaf.relative_subst(root)) if leaf is not root else I


class TestCoordinateBlowup:
    def test_plane(self):
        root = Chart.root(("x", "y"))
        kids = blow_up_coordinate_center(root, ["x", "y"])
        assert [k.path for k in kids] == ["/x", "/y"]
        assert kids[0].subst == {"x": P("x"), "y": P("x*y")}
        assert kids[1].subst == {"x": P("x*y"), "y": P("y")}
        assert all(k.smooth for k in kids)
        assert kids[0].exceptional[-1][1] == "x"

    def test_third_variable_untouched(self):
        root = Chart.root(("x", "y", "z"))
        kids = blow_up_coordinate_center(root, ["x", "y"])
        assert len(kids) == 2
        assert all(k.subst["z"] == P("z") for k in kids)

    def test_principal_center(self):
        root = Chart.root(("x", "y"))
        assert blow_up_coordinate_center(root, ["x"]) == [root]

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable):
            blow_up_coordinate_center(Chart.root(("x",)), ["x", "w"])

    def test_strict_transform_drops_divisor(self):
        root = Chart.root(("x", "y", "z"))
        a = next(k for k in blow_up_coordinate_center(root, ["x", "y"], tag="E1") if k.pivot == "x")
        b = blow_up_coordinate_center(a, ["x", "z"], tag="E2")
        by_pivot = {k.pivot: k for k in b}
        # x = z*x' in the z chart, so the old divisor survives as {x' = 0};
        # in the x chart {x = 0} is the new exceptional divisor only
        assert ("E1", "x") in by_pivot["z"].exceptional
        assert ("E1", "x") not in by_pivot["x"].exceptional
        assert ("E2", "x") in by_pivot["x"].exceptional


class TestMonomialBlowup:
    def test_two_coordinates(self):
        root = Chart.root(("z1", "z2"))
        out = blow_up_monomial_ideal(root, ideal("z1", "z2"))
        assert len(out) == 2 and all(s for _, s in out)
        for c, _ in out:
            assert monideal_local_principal(pulled(ideal("z1", "z2"), c, root)) is not None

    def test_principal(self):
        root = Chart.root(("x",))
        assert blow_up_monomial_ideal(root, ideal("x")) == [(root, True)]

    def test_three_coordinates(self):
        root = Chart.root(("x", "y", "z"))
        out = blow_up_monomial_ideal(root, ideal("x", "y", "z"))
        assert len(out) == 3 and all(s for _, s in out)
        for c, _ in out:
            assert monideal_local_principal(pulled(ideal("x", "y", "z"), c, root)) is not None

    def test_non_monomial(self):
        with pytest.raises(NonMonomialIdeal):
            blow_up_monomial_ideal(Chart.root(("x", "y")), [P("x + y")])

    def test_singular_chart_flagged(self):
        # (x^2, y^2): the chart of x^2 carries the cone generated by (0,2) - (2,0)
        root = Chart.root(("x", "y"))
        out = blow_up_monomial_ideal(root, ideal("x^2", "y^2"))
        assert not any(s for _, s in out)


class TestPrincipalize:
    def test_two_coordinates(self):
        root = Chart.root(("z1", "z2"))
        tree = principalize(root, ideal("z1", "z2"))
        assert len(tree.steps) == 1 and len(tree.leaves) == 2

    def test_pairwise_products(self):
        root = Chart.root(("z1", "z2", "z3"))
        I = ideal("z1*z2", "z1*z3", "z2*z3")
        tree = principalize(root, I)
        assert tree.depth <= 3
        for leaf in tree.leaves:
            assert monideal_local_principal(pulled(I, leaf, root)) is not None

    def test_principal_input(self):
        root = Chart.root(("x", "y"))
        assert principalize(root, ideal("x*y", "x^2*y")).is_trivial()

    @settings(max_examples=150, deadline=None)
    @given(monideals(names=("x", "y", "z", "u"), max_exp=2, max_gens=4))
    def test_postcondition(self, I):
        root = Chart.root(("u", "x", "y", "z"))
        tree = principalize(root, I)
        for leaf in tree.leaves:
            assert monideal_local_principal(pulled(I, leaf, root)) is not None
            assert leaf.smooth

    @settings(max_examples=30, deadline=None)
    @given(monideals(names=("x", "y", "z"), max_exp=2, max_gens=4))
    def test_substitution_composition(self, I):
        root = Chart.root(("x", "y", "z"))
        tree = principalize(root, I)
        for leaf in tree.leaves:
            assert leaf.composed_subst() == leaf.subst

    @settings(max_examples=30, deadline=None)
    @given(monideals(names=("x", "y", "z"), max_exp=2, max_gens=4), st.integers(0, 1000))
    def test_coverage(self, I, seed):
        root = Chart.root(("x", "y", "z"))
        tree = principalize(root, I)
        r = sampling.rng(seed)
        for _ in range(100):
            pt = sampling.random_point(r, root.vars)
            leaf, lifted = tree.lift_point(pt)
            image = {v: p.eval(lifted) for v, p in leaf.subst.items()}
            assert image == pt
            # every other preimage sits in a chart overlap of the same point
            for other, q in tree.lifts(pt):
                assert {v: p.eval(q) for v, p in other.subst.items()} == pt


def test_principalize_exhaustive_two_variables():
    # every monomial ideal with generators of exponent <= 2 in x, y
    root = Chart.root(("x", "y"))
    mons = [Monomial({"x": a, "y": b}) for a, b in product(range(3), repeat=2)]
    for mask in range(1, 1 << len(mons)):
        I = MonIdeal([m for i, m in enumerate(mons) if mask >> i & 1])
        tree = principalize(root, I)
        for leaf in tree.leaves:
            assert monideal_local_principal(pulled(I, leaf, root)) is not None


class TestDerivedResolution:
    def test_one_row(self):
        root = Chart.root(("z1", "z2"))
        phi = TwoTermComplex(((P("z1"), P("z2")),), root)
        tree = derived_resolution(phi)
        assert [l.path for l in tree.leaves] == ["/z1", "/z2"]
        for leaf in tree.leaves:
            (p1,) = tree.forms[leaf.path].entries
            assert p1 == P(leaf.pivot)
            assert leaf.exceptional[-1][1] == leaf.pivot

    def test_already_diagonal(self):
        root = Chart.root(("x",))
        phi = TwoTermComplex(((P("x"), P(0)), (P(0), P("x^2"))), root)
        assert derived_resolution(phi).is_trivial()

    def test_diagonal_coordinates(self):
        root = Chart.root(("x", "y"))
        phi = TwoTermComplex(((P("x"), P(0)), (P(0), P("y"))), root)
        tree = derived_resolution(phi)
        assert tree.forms["/x"].entries == (P("x"), P("x*y"))
        assert tree.forms["/y"].entries == (P("y"), P("x*y"))

    def test_non_monomial_ladder(self):
        root = Chart.root(("x", "y"))
        phi = TwoTermComplex(((P("y"), P("x*y")), (P("y^2"), P("x^2*y"))), root)
        with pytest.raises(NonMonomialLadder):
            derived_resolution(phi)

    def test_failure_carries_chart(self):
        # an unresolved matrix placed on a leaf fails with that leaf's path
        root = Chart.root(("x", "y"))
        phi = TwoTermComplex(((P("x"), P("y")),), root)
        tree = derived_resolution(phi, check=False)
        leaf = tree.leaves[0]
        from locres.blowup import check_leaf
        with pytest.raises(DiagonalizationFailed) as info:
            check_leaf(TwoTermComplex(((P("x"), P("y")),), leaf), leaf)
        assert info.value.path == leaf.path

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_random_leaves_diagonalizable(self, seed):
        phi = random_unit_monomial_matrix(sampling.rng(seed), max_rows=3, max_cols=3, names=("x", "y", "z"))
        tree = derived_resolution(phi, seed=seed)
        root = phi.chart
        for leaf in tree.leaves:
            form = tree.forms[leaf.path]
            assert form.verify(tree.complexes[leaf.path])
            for I in tree.ladder.monomial:
                if not I.is_zero():
                    assert monideal_local_principal(pulled(I, leaf, root)) is not None

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_minimality(self, seed):
        phi = random_diagonalizable_matrix(sampling.rng(seed), names=("x", "y", "z"))
        assert derived_resolution(phi, seed=seed).is_trivial()
