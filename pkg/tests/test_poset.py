from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hnlattice import (
    PLUS_INFINITY,
    ExplicitFinitePoset,
    ExtendedRealPoset,
    ReverseInclusionPoset,
)
from hnlattice.errors import (
    CrossPosetComparison,
    InvalidPoset,
    NoInfimum,
    SupUnavailable,
)


class TestExtendedReal:
    def test_leq_on_reals(self):
        p = ExtendedRealPoset()
        assert p.leq(p.value(1), p.value(3))
        assert not p.leq(p.value(3), p.value(1))
        assert p.not_leq(p.value(3), p.value(1))
        assert not p.not_leq(p.value(2), p.value(2))

    def test_plus_infinity_is_greatest(self):
        p = ExtendedRealPoset()
        top = p.top_value()
        for payload in (Fraction(-5), 0, Fraction(7, 3)):
            assert p.leq(p.value(payload), top)
            assert not p.leq(top, p.value(payload))
        assert p.leq(top, top)

    def test_inf_and_sup_are_min_and_max(self):
        p = ExtendedRealPoset()
        vals = [p.value(1), p.value(3), p.top_value()]
        assert p.inf_set(vals) == p.value(1)
        assert p.sup_set([p.value(2), p.value(1)]) == p.value(2)
        assert p.inf_set([p.value(5)]) == p.value(5)

    def test_empty_inf_returns_top(self):
        p = ExtendedRealPoset()
        assert p.inf_set([]).payload is PLUS_INFINITY

    def test_exact_mode_rejects_floats(self):
        p = ExtendedRealPoset()
        with pytest.raises(TypeError):
            p.value(0.5)

    def test_float_mode_tolerance_equality(self):
        p = ExtendedRealPoset(exact=False, atol=1e-9)
        assert p.value(1.0) == p.value(1.0 + 1e-10)
        assert p.value(1.0) != p.value(1.0 + 1e-6)
        assert p.leq(p.value(1.0 + 1e-10), p.value(1.0))

    def test_cross_poset_comparison_raises(self):
        p, q = ExtendedRealPoset(), ExtendedRealPoset()
        with pytest.raises(CrossPosetComparison):
            p.leq(p.value(1), q.value(1))
        with pytest.raises(CrossPosetComparison):
            p.value(1) == q.value(1)

    @given(st.lists(st.fractions(), min_size=1, max_size=8))
    @settings(max_examples=60, deadline=None)
    def test_inf_laws(self, raws):
        p = ExtendedRealPoset()
        vals = [p.value(x) for x in raws]
        bottom = p.inf_set(vals)
        assert all(p.leq(bottom, v) for v in vals)
        assert p.inf_set(vals + [bottom]) == bottom


class TestReverseInclusion:
    def test_superset_order(self):
        p = ReverseInclusionPoset(["2", "3"])
        assert p.leq(p.value({"2", "3"}), p.value({"2"}))
        assert not p.leq(p.value({"2"}), p.value({"3"}))
        assert p.not_leq(p.value({"2"}), p.value({"3"}))

    def test_empty_set_is_greatest(self):
        p = ReverseInclusionPoset(["2", "3", "5"])
        top = p.top_value()
        assert top.payload == frozenset()
        for sub in ({"2"}, {"3", "5"}, set()):
            assert p.leq(p.value(sub), top)

    def test_inf_is_union_sup_is_intersection(self):
        p = ReverseInclusionPoset(["2", "3"])
        vals = [p.value({"3"}), p.value({"2"}), p.value(set())]
        assert p.inf_set(vals).payload == frozenset({"2", "3"})
        assert p.sup_set([p.value({"2"}), p.value({"3"})]).payload == frozenset()

    def test_labels_must_be_in_universe(self):
        p = ReverseInclusionPoset(["2"])
        with pytest.raises(ValueError):
            p.value({"7"})

    def test_order_laws_exhaustively_universe_of_six(self):
        labels = [str(i) for i in range(6)]
        p = ReverseInclusionPoset(labels)
        subsets = [
            frozenset(l for i, l in enumerate(labels) if m >> i & 1)
            for m in range(64)
        ]
        for a in subsets:
            assert p._payload_leq(a, a)
        for a, b in product(subsets, repeat=2):
            if p._payload_leq(a, b) and p._payload_leq(b, a):
                assert a == b
        for a, b, c in product(subsets, repeat=3):
            if p._payload_leq(a, b) and p._payload_leq(b, c):
                assert p._payload_leq(a, c)


def _diamond():
    # bottom b, incomparable x y, top t
    elements = ["b", "x", "y", "t"]
    leq = {
        ("b", "b"), ("x", "x"), ("y", "y"), ("t", "t"),
        ("b", "x"), ("b", "y"), ("b", "t"), ("x", "t"), ("y", "t"),
    }
    order = [[(a, b) in leq for b in elements] for a in elements]
    return elements, order


class TestExplicitFinite:
    def test_diamond_meets_and_joins(self):
        elements, order = _diamond()
        p = ExplicitFinitePoset(elements, order)
        assert p.has_suprema
        assert not p.totally_ordered
        assert p.top_value().payload == "t"
        assert p.inf_set([p.value("x"), p.value("y")]).payload == "b"
        assert p.sup_set([p.value("x"), p.value("y")]).payload == "t"
        assert p.inf_set([]).payload == "t"

    def test_chain_is_totally_ordered(self):
        order = [[j >= i for j in range(3)] for i in range(3)]
        p = ExplicitFinitePoset(["a", "b", "c"], order)
        assert p.totally_ordered
        assert p.top_value().payload == "c"

    def test_rejects_non_reflexive(self):
        with pytest.raises(InvalidPoset, match="reflexive"):
            ExplicitFinitePoset(["a", "b"], [[False, True], [False, True]])

    def test_rejects_non_antisymmetric(self):
        with pytest.raises(InvalidPoset, match="antisymmetric"):
            ExplicitFinitePoset(["a", "b"], [[True, True], [True, True]])

    def test_rejects_non_transitive(self):
        order = [
            [True, True, False],
            [False, True, True],
            [False, False, True],
        ]
        with pytest.raises(InvalidPoset, match="transitive"):
            ExplicitFinitePoset(["a", "b", "c"], order)

    def test_rejects_missing_top(self):
        order = [[i == j for j in range(2)] for i in range(2)]
        with pytest.raises(InvalidPoset, match="greatest"):
            ExplicitFinitePoset(["a", "b"], order)

    def test_rejects_missing_meet(self):
        # x, y below a common top but with no common lower bound
        elements = ["x", "y", "t"]
        leq = {("x", "x"), ("y", "y"), ("t", "t"), ("x", "t"), ("y", "t")}
        order = [[(a, b) in leq for b in elements] for a in elements]
        with pytest.raises(NoInfimum):
            ExplicitFinitePoset(elements, order)

    def test_meets_plus_top_force_joins(self):
        # once pairwise meets and a greatest element are verified, every
        # explicit poset is a complete lattice, so suprema always exist
        elements, order = _diamond()
        assert ExplicitFinitePoset(elements, order).has_suprema

    def test_sup_unavailable_guard(self, monkeypatch):
        elements, order = _diamond()
        p = ExplicitFinitePoset(elements, order)
        monkeypatch.setattr(p, "has_suprema", False)
        with pytest.raises(SupUnavailable):
            p.sup_set([p.value("x"), p.value("y")])

    def test_order_laws_match_validation(self):
        elements, order = _diamond()
        p = ExplicitFinitePoset(elements, order)
        for a, b, c in product(elements, repeat=3):
            if p._payload_leq(a, b) and p._payload_leq(b, c):
                assert p._payload_leq(a, c)
            if p._payload_leq(a, b) and p._payload_leq(b, a):
                assert a == b
