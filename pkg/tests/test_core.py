from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from arthurkit.core import (
    HalfInt,
    MultiSet,
    Parity,
    RhoSymbol,
    Segment,
    TRIVIAL_RHO,
    ValidationError,
    multiset_combine,
    segment_elements,
)


halfints = st.integers(min_value=-40, max_value=40).map(HalfInt)


class TestHalfInt:
    def test_arithmetic_exact(self):
        a = HalfInt(3)  # 3/2
        b = HalfInt(-1)  # -1/2
        assert a + b == HalfInt(2) == 1
        assert a - b == HalfInt(4) == 2
        assert -a == HalfInt(-3)
        assert a + 1 == HalfInt(5)
        assert 2 - a == HalfInt(1)

    def test_integrality(self):
        assert HalfInt.of(3).is_integer
        assert not HalfInt(3).is_integer
        assert int(HalfInt.of(-2)) == -2
        with pytest.raises(ValueError):
            int(HalfInt(1))

    def test_order_agrees_with_rationals(self):
        values = [HalfInt(t) for t in range(-6, 7)]
        assert sorted(values) == values
        assert HalfInt(1) < 1 < HalfInt(3)

    def test_floor(self):
        assert HalfInt(3).floor() == 1
        assert HalfInt(-3).floor() == -2
        assert HalfInt.of(2).floor() == 2

    def test_serialization(self):
        assert str(HalfInt(3)) == "3/2"
        assert str(HalfInt(-1)) == "-1/2"
        assert str(HalfInt.of(4)) == "4"
        for token in ("3/2", "-5/2", "0", "-7"):
            assert str(HalfInt.parse(token)) == token

    @given(halfints, halfints)
    def test_add_sub_roundtrip(self, a, b):
        assert (a + b) - b == a

    @given(halfints)
    def test_doubling_is_integral(self, a):
        assert (a + a).is_integer


class TestMultiSet:
    def test_spec_examples(self):
        x = MultiSet({"a": 2, "b": 1})
        y = MultiSet({"a": 1, "b": 2})
        assert multiset_combine("sum", x, y) == MultiSet({"a": 3, "b": 3})
        assert multiset_combine("diff", x, y) == MultiSet({"a": 1})
        # symdiff = (union) minus (intersect), evaluated by hand
        assert multiset_combine("symdiff", x, y) == MultiSet({"a": 1, "b": 1})

    def test_union_intersect(self):
        x = MultiSet({"a": 2, "b": 1})
        y = MultiSet({"a": 1, "c": 4})
        assert multiset_combine("union", x, y) == MultiSet({"a": 2, "b": 1, "c": 4})
        assert multiset_combine("intersect", x, y) == MultiSet({"a": 1})

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            multiset_combine("xor", MultiSet(), MultiSet())

    small = st.dictionaries(st.sampled_from("abcd"), st.integers(1, 5), max_size=4).map(
        MultiSet
    )

    @given(small, small)
    def test_sum_counts(self, x, y):
        assert multiset_combine("sum", x, y).total == x.total + y.total

    @given(small, small)
    def test_diff_plus_intersect_is_left(self, x, y):
        assert (x - y) + (x & y) == x

    @given(small, small)
    def test_symdiff_union_intersect(self, x, y):
        assert (x ^ y) == (x | y) - (x & y)

    @given(small)
    def test_identities(self, x):
        empty = MultiSet()
        assert (x ^ x) == empty
        assert (x | empty) == x
        assert (x & empty) == empty


class TestRhoSymbol:
    def test_equality_by_label(self):
        r1 = RhoSymbol("r", dim=1, parity=Parity.ORTHOGONAL)
        r2 = RhoSymbol("r", dim=2, parity=Parity.SYMPLECTIC)
        assert r1 == r2
        assert hash(r1) == hash(r2)

    def test_dual_roundtrip(self):
        sigma = RhoSymbol("s", dim=1, parity=Parity.NON_SELF_DUAL, dual_label="sv")
        assert sigma.contragredient().label == "sv"
        assert sigma.contragredient().contragredient() == sigma
        assert TRIVIAL_RHO.contragredient() == TRIVIAL_RHO

    def test_invariants(self):
        with pytest.raises(ValidationError):
            RhoSymbol("x", dim=2, unramified_character=True)
        with pytest.raises(ValidationError):
            RhoSymbol("x", parity=Parity.NON_SELF_DUAL)  # needs a distinct dual
        with pytest.raises(ValidationError):
            RhoSymbol("x", parity=Parity.ORTHOGONAL, dual_label="y")


class TestSegment:
    def test_elements_examples(self):
        rho = TRIVIAL_RHO
        seg = Segment(rho, HalfInt.of(2), HalfInt.of(0))
        assert segment_elements(seg) == MultiSet(
            [(rho, HalfInt.of(2)), (rho, HalfInt.of(1)), (rho, HalfInt.of(0))]
        )
        single = Segment(rho, HalfInt(1), HalfInt(1))
        assert segment_elements(single) == MultiSet([(rho, HalfInt(1))])
        seg31 = Segment(rho, HalfInt.of(3), HalfInt.of(1))
        assert segment_elements(seg31).total == 3
        assert (rho, HalfInt.of(2)) in segment_elements(seg31)

    def test_length_invariant(self):
        with pytest.raises(ValidationError):
            Segment(TRIVIAL_RHO, HalfInt.of(0), HalfInt.of(1))
        with pytest.raises(ValidationError):
            Segment(TRIVIAL_RHO, HalfInt(1), HalfInt.of(0))  # 1/2 - 0 not integral
