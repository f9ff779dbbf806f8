from fractions import Fraction

import pytest

from arthurkit.core import HalfInt, MultiSet, Parity, RhoSymbol, TRIVIAL_RHO, Segment, ValidationError
from arthurkit.ems import (
    ExtendedMultiSegment,
    ExtendedSegment,
    dual,
    l_class,
    make_row,
    omega_sets,
    order_check,
    parameter_of,
    pi_of_L,
    satisfies_L,
    sign_condition,
    weak_equivalent,
)
from arthurkit.ldata import omega_pi
from arthurkit.oracle import dimension_audit, enumerate_ems, enumerate_good_parity
from arthurkit.params import (
    Family,
    GroupTag,
    Summand,
    characters_of,
    dual_parameter,
    make_parameter,
)

SP1 = GroupTag(Family.SP, 1)
SP2 = GroupTag(Family.SP, 2)
SP4 = GroupTag(Family.SP, 4)
SO1 = GroupTag(Family.SO_ODD, 1)
RHO = TRIVIAL_RHO


def ems_of(group, *rows):
    return ExtendedMultiSegment.build(group, [make_row(RHO, *r) for r in rows])


class TestOrderCheck:
    def test_increasing_b(self):
        e = ems_of(SP2, (1, 0, 0, 1), (2, 1, 0, 1))
        assert order_check(e, "P") and order_check(e, "Pprime")

    def test_violates_p(self):
        e = ems_of(SP2, (2, 1, 0, 1), (1, 0, 0, 1))
        assert not order_check(e, "P")
        assert not order_check(e, "Pprime")

    def test_p_without_pprime(self):
        # [1,1] before [2,0]: neither A nor B both larger, but B decreases.
        e = ems_of(SP4, (1, 1, 0, 1), (2, 0, 0, 1))
        assert order_check(e, "P")
        assert not order_check(e, "Pprime")

    def test_pprime_implies_p(self):
        for psi in enumerate_good_parity(SP4, [RHO]):
            for e in enumerate_ems(psi):
                assert order_check(e, "Pprime")
                assert order_check(e, "P")


class TestSignCondition:
    def test_single_rows(self):
        assert sign_condition(ems_of(SP1, (0, 0, 0, 1), (1, 1, 0, 1)))  # helper shape
        assert sign_condition(ems_of(SO1, (HalfInt(1), HalfInt(1), 0, 1)))
        # ([0,0], 0, +): b=1, (-1)^0 * 1 = 1
        e = ExtendedMultiSegment.build(SP1, [make_row(RHO, 0, 0, 0, 1)] * 3)
        assert sign_condition(e)

    def test_minus_eta_odd_b(self):
        e = ems_of(SP1, (1, 1, 0, -1))  # (-1)^0 * (-1)^1 = -1
        assert not sign_condition(e)

    def test_even_b_eta_irrelevant(self):
        # ([1,0], 1, eta): b=2 -> (-1)^(1+1) * eta^2 = 1 either way
        for eta in (1, -1):
            e = ems_of(SP2, (1, 0, 1, eta), (0, 0, 0, 1))
            assert sign_condition(e)


class TestParameterOf:
    def test_examples(self):
        assert parameter_of(ems_of(SP4, (2, 0, 1, 1))).summands == MultiSet(
            [Summand(RHO, Fraction(0), 3, 3)]
        )
        assert parameter_of(ems_of(SP1, (1, -1, 1, 1))).summands == MultiSet(
            [Summand(RHO, Fraction(0), 1, 3)]
        )
        assert parameter_of(
            ems_of(SO1, (HalfInt(1), HalfInt(1), 0, 1))
        ).summands == MultiSet([Summand(RHO, Fraction(0), 2, 1)])

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValidationError):
            parameter_of(ems_of(SP2, (1, -1, 1, 1)))  # dim 3 != 5

    def test_rejects_bad_parity(self):
        with pytest.raises(ValidationError):
            # a+b = 3 odd for orthogonal rho on Sp
            parameter_of(ems_of(SP1, (HalfInt(1), HalfInt(1), 0, 1), (0, 0, 0, 1)))


class TestWeakEquivalence:
    def test_eta_free_at_half(self):
        e1 = ems_of(SP2, (1, 0, 1, 1), (0, 0, 0, 1))
        e2 = ems_of(SP2, (1, 0, 1, -1), (0, 0, 0, 1))
        assert weak_equivalent(e1, e2)  # l = b/2 = 1

    def test_eta_pinned_below_half(self):
        e1 = ems_of(SP1, (1, 1, 0, 1))
        e2 = ems_of(SP1, (1, 1, 0, -1))
        assert not weak_equivalent(e1, e2)  # l = 0 < b/2

    def test_identical(self):
        e = ems_of(SP1, (1, -1, 1, 1))
        assert weak_equivalent(e, e)


class TestSatisfiesL:
    def test_l_value(self):
        assert satisfies_L(ems_of(SP1, (1, -1, 1, 1)))  # floor(3/2) = 1
        assert not satisfies_L(ems_of(SP1, (1, -1, 0, -1)))

    def test_third_condition_vacuous(self):
        # A+B values 0 and 2 differ, so the equal-sum sign constraint is vacuous.
        e = ems_of(SP4, (0, 0, 0, 1), (2, 0, 1, -1))
        assert satisfies_L(e)

    def test_equal_sum_sign_clash(self):
        # [1,-1] and [0,0] both have A+B = 0 and odd length.
        e = ems_of(SP2, (1, -1, 1, 1), (0, 0, 0, -1))
        assert not satisfies_L(e)

    def test_nondecreasing_sum(self):
        e = ems_of(SP4, (2, -1, 2, 1), (0, 0, 0, 1))  # sums 1 then 0
        assert not satisfies_L(e)

    def test_invariant_under_weak_equivalence(self):
        for psi in enumerate_good_parity(SP4, [RHO]):
            for e in enumerate_ems(psi):
                flipped_rows = {}
                for rho, rows in e.rows:
                    flipped_rows[rho] = [
                        ExtendedSegment(r.seg, r.l, -r.eta if not r.eta_relevant else r.eta)
                        for r in rows
                    ]
                flipped = ExtendedMultiSegment.build(e.group, flipped_rows)
                assert weak_equivalent(e, flipped)
                assert satisfies_L(e) == satisfies_L(flipped)


class TestPiOfL:
    def test_sp1_antitempered(self):
        pi = pi_of_L(ems_of(SP1, (1, -1, 1, 1)))
        assert len(pi.segments) == 1
        seg = pi.segments[0]
        assert (seg.x, seg.y) == (HalfInt.of(-1), HalfInt.of(-1))
        assert pi.tempered.eps_of(RHO, 1) == 1
        assert pi.dim == 3 == dimension_audit(pi)

    def test_so1_trivial_rep(self):
        pi = pi_of_L(ems_of(SO1, (HalfInt(1), HalfInt(-1), 1, 1)))
        assert len(pi.segments) == 1
        assert pi.tempered.phi.pieces.total == 0  # even length row: no tempered part
        assert pi.dim == 2

    def test_tempered_rows(self):
        e = ems_of(SP2, (0, 0, 0, 1), (0, 0, 0, 1), (1, 1, 0, 1))
        pi = pi_of_L(e)
        assert pi.segments == ()
        assert pi.tempered.eps_of(RHO, 3) == 1
        assert pi.tempered.eps_of(RHO, 1) == 1

    def test_requires_normal_form(self):
        with pytest.raises(ValidationError):
            pi_of_L(ems_of(SP1, (1, -1, 0, -1)))


class TestLClass:
    def test_anti_tempered_singleton_class(self):
        psi = make_parameter(SP1, [Summand(RHO, Fraction(0), 1, 3)])
        classes = l_class(psi)
        assert len(classes) == 1
        row = next(classes[0].all_rows())
        assert (row.A, row.B, row.l, row.eta) == (HalfInt.of(1), HalfInt.of(-1), 1, 1)

    def test_tempered_matches_characters(self):
        psi = make_parameter(
            GroupTag(Family.SO_ODD, 8),
            [Summand(C_RHO, Fraction(0), 3, 1), Summand(C_RHO, Fraction(0), 5, 1)],
        )
        assert len(l_class(psi)) == len(characters_of(psi).characters) == 2

    def test_so1_forced_sign(self):
        psi = make_parameter(SO1, [Summand(RHO, Fraction(0), 2, 1)])
        classes = l_class(psi)
        assert len(classes) == 1
        row = next(classes[0].all_rows())
        assert (row.A, row.B, row.l, row.eta) == (HalfInt(1), HalfInt(1), 0, 1)

    def test_all_satisfy_L_and_sign(self):
        for group in (SP4, GroupTag(Family.SO_ODD, 3)):
            for psi in enumerate_good_parity(group, [RHO]):
                for e in l_class(psi):
                    assert satisfies_L(e)
                    assert sign_condition(e)
                    assert parameter_of(e) == psi


class TestDual:
    def test_tempered_to_antitempered(self):
        e = ems_of(SP1, (1, 1, 0, 1))
        d = dual(e)
        row = next(d.all_rows())
        assert (row.A, row.B, row.l, row.eta) == (HalfInt.of(1), HalfInt.of(-1), 1, 1)

    def test_half_integral_branch(self):
        e = ems_of(SO1, (HalfInt(1), HalfInt(1), 0, 1))
        d = dual(e)
        row = next(d.all_rows())
        assert (row.A, row.B) == (HalfInt(1), HalfInt(-1))
        assert row.l == 1  # 0 + 1/2 + (1/2)(+1)(+1)
        assert not row.eta_relevant  # l = b/2 = 1

    def test_order_precondition(self):
        e = ems_of(SP4, (1, 1, 0, 1), (2, 0, 0, 1))  # B decreases
        with pytest.raises(ValidationError):
            dual(e)

    def test_two_row_signs(self):
        # Worked by hand through the alpha/beta formulas.
        e = ems_of(SP2, (1, -1, 1, 1), (0, 0, 0, 1))
        d = dual(e)
        rows = list(d.all_rows())
        assert [(str(r.A), str(r.B), r.l, r.eta) for r in rows] == [
            ("0", "0", 0, -1),
            ("1", "1", 0, -1),
        ]


CENSUS_GROUPS_SINGLE = [
    GroupTag(Family.SP, n) for n in (1, 2, 3, 4)
] + [GroupTag(Family.SO_ODD, n) for n in (1, 2, 3, 4)]

CENSUS_GROUPS_DOUBLE = [
    GroupTag(Family.SP, n) for n in (1, 2, 3)
] + [GroupTag(Family.SO_ODD, n) for n in (1, 2, 3)]

U_RHO = RhoSymbol("u", dim=1, parity=Parity.ORTHOGONAL, unramified_character=True)
C_RHO = RhoSymbol("c", dim=2, parity=Parity.SYMPLECTIC)


def census_single():
    for group in CENSUS_GROUPS_SINGLE:
        for rho in (RHO, C_RHO):
            yield from enumerate_good_parity(group, [rho])


def census_double():
    for group in CENSUS_GROUPS_DOUBLE:
        yield from enumerate_good_parity(group, [RHO, U_RHO])


class TestDualInvolutionCensus:
    def test_single_rho(self):
        checked = 0
        for psi in census_single():
            for e in enumerate_ems(psi):
                d = dual(e)
                assert parameter_of(d) == dual_parameter(psi)
                assert sign_condition(d)
                assert weak_equivalent(dual(d), e)
                checked += 1
        assert checked > 300

    def test_two_rho(self):
        checked = 0
        for psi in census_double():
            for e in enumerate_ems(psi):
                d = dual(e)
                assert parameter_of(d) == dual_parameter(psi)
                assert sign_condition(d)
                assert weak_equivalent(dual(d), e)
                checked += 1
        assert checked > 100


class TestOmegaSets:
    def test_ascending(self):
        rows = [make_row(RHO, 2, 1, 0, 1), make_row(RHO, 1, 0, 0, 1)]
        asc, desc = omega_sets(rows)
        assert [str(h) for h in asc] == ["0", "1", "1", "2"]
        assert [str(h) for h in desc] == ["1", "0", "0", "-1", "-1", "-2"]

    def test_empty(self):
        assert omega_sets([]) == ([], [])


class TestDimensionConservation:
    def test_census_normal_forms(self):
        # The binding check on the segment end index of the closed form.
        for psi in census_single():
            for e in enumerate_ems(psi):
                if satisfies_L(e):
                    pi = pi_of_L(e)
                    assert dimension_audit(pi) == psi.N

    def test_omega_pi_stable_under_weak_equivalence(self):
        psi = make_parameter(SP2, [Summand(RHO, Fraction(0), 2, 2), Summand(RHO, Fraction(0), 1, 1)])
        variants = [e for e in enumerate_ems(psi) if satisfies_L(e)]
        for e in variants:
            pi = pi_of_L(e)
            assert omega_pi(pi) is not None
