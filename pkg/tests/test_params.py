import itertools
from fractions import Fraction

import pytest

from arthurkit.core import HalfInt, MultiSet, Parity, RhoSymbol, TRIVIAL_RHO, ValidationError
from arthurkit.params import (
    ArthurParameter,
    Family,
    GroupTag,
    Summand,
    characters_of,
    decompose,
    dual_parameter,
    is_good_parity,
    l_parameter_of,
    make_parameter,
    predicates,
    steinberg_parameter,
    validate,
)

SP1 = GroupTag(Family.SP, 1)
SP2 = GroupTag(Family.SP, 2)
SP3 = GroupTag(Family.SP, 3)
SO1 = GroupTag(Family.SO_ODD, 1)
SO2 = GroupTag(Family.SO_ODD, 2)
RHO = TRIVIAL_RHO


def s(a, b, x=0, rho=RHO):
    return Summand(rho, Fraction(x), a, b)


class TestGroupTag:
    def test_N(self):
        assert SP2.N == 5
        assert SO2.N == 4

    def test_dual_parity(self):
        assert SP2.dual_parity is Parity.ORTHOGONAL
        assert SO2.dual_parity is Parity.SYMPLECTIC


class TestValidate:
    def test_dimension_ok(self):
        assert validate(make_parameter(SP2, [s(5, 1)])) is None

    def test_dimension_mismatch(self):
        report = validate(make_parameter(SP2, [s(3, 1)]))
        assert report is not None and "dimension" in report

    def test_contragredient_closure(self):
        psi = make_parameter(SO1, [s(2, 1, Fraction(1, 4))])
        report = validate(psi)
        assert report is not None and "contragredient" in report

    def test_twist_bound_enforced_at_construction(self):
        with pytest.raises(ValidationError):
            Summand(RHO, Fraction(1, 2), 1, 1)


class TestGoodParity:
    def test_sp_even_rule(self):
        assert is_good_parity(make_parameter(SP2, [s(5, 1)]))  # a+b = 6 even

    def test_so_odd_rule(self):
        assert is_good_parity(make_parameter(SO1, [s(2, 1)]))  # a+b = 3 odd

    def test_sp_rejects_odd_sum(self):
        psi = make_parameter(SP1, [s(2, 1), s(1, 1)])  # 2*1 + 1*1 = 3 = N
        assert validate(psi) is None
        assert not is_good_parity(psi)  # a+b = 3 odd fails the Sp rule

    def test_nonzero_twist_fails(self):
        psi = make_parameter(
            SP3, [s(2, 1, Fraction(1, 4)), s(2, 1, Fraction(-1, 4)), s(1, 3)]
        )
        assert not is_good_parity(psi)

    def test_symplectic_rho(self):
        c = RhoSymbol("c", dim=2, parity=Parity.SYMPLECTIC)
        # Sp with symplectic rho wants a+b odd: 2*(2*1) + 1 = 5 = N of Sp2
        psi = make_parameter(SP2, [s(2, 1, rho=c), s(1, 1)])
        assert is_good_parity(psi)


class TestDecompose:
    def test_twisted_pair(self):
        psi = make_parameter(
            SP3, [s(2, 1, Fraction(1, 4)), s(2, 1, Fraction(-1, 4)), s(1, 3)]
        )
        parts = decompose(psi)
        assert parts.nu_pos == (s(2, 1, Fraction(1, 4)),)
        assert parts.np == ()
        assert parts.gp.summands == MultiSet([s(1, 3)])
        assert parts.reassembled() == psi.summands

    def test_tempered_identity(self):
        psi = make_parameter(SP2, [s(5, 1)])
        parts = decompose(psi)
        assert parts.nu_pos == () and parts.np == ()
        assert parts.gp.summands == psi.summands

    def test_non_self_dual_pair(self):
        sigma = RhoSymbol("s", parity=Parity.NON_SELF_DUAL, dual_label="sv")
        psi = make_parameter(SP3, [s(1, 1, rho=sigma), s(1, 1, rho=sigma.contragredient()), s(5, 1)])
        parts = decompose(psi)
        assert parts.np == (s(1, 1, rho=sigma),)  # 's' < 'sv' lexicographically
        assert parts.gp.summands == MultiSet([s(5, 1)])
        assert parts.reassembled() == psi.summands

    def test_wrong_type_self_dual_halves(self):
        # Sp with a+b odd is self-dual of the wrong type; pairs split evenly.
        psi = make_parameter(SP2, [s(2, 1), s(2, 1), s(1, 1)])
        parts = decompose(psi)
        assert parts.np == (s(2, 1),)
        assert parts.reassembled() == psi.summands


class TestLParameter:
    def test_b3_fan_out(self):
        phi = l_parameter_of(make_parameter(GroupTag(Family.SO_ODD, 3), [s(2, 3)]))
        twists = sorted(p.twist for p in phi.pieces)
        assert twists == [Fraction(-1), Fraction(0), Fraction(1)]
        assert all(p.a == 2 for p in phi.pieces.support())

    def test_b1_identity(self):
        phi = l_parameter_of(make_parameter(SP2, [s(5, 1)]))
        assert phi.pieces.total == 1
        piece = next(iter(phi.pieces))
        assert (piece.twist, piece.a) == (Fraction(0), 5)

    def test_twisted_fan_out(self):
        psi = make_parameter(
            SP2,
            [s(1, 2, Fraction(1, 4)), s(1, 2, Fraction(-1, 4)), s(1, 1)],
        )
        phi = l_parameter_of(psi)
        twists = sorted(p.twist for p in phi.pieces)
        assert Fraction(3, 4) in twists and Fraction(-1, 4) in twists

    def test_dimension_preserved(self):
        for psi in (
            make_parameter(SP2, [s(5, 1)]),
            make_parameter(SP2, [s(1, 5)]),
            make_parameter(GroupTag(Family.SO_ODD, 3), [s(2, 3)]),
        ):
            assert l_parameter_of(psi).dim == psi.N


class TestDualParameter:
    def test_swap(self):
        psi = make_parameter(SP2, [s(5, 1)])
        assert dual_parameter(psi).summands == MultiSet([s(1, 5)])

    def test_involution_and_multi(self):
        psi = make_parameter(GroupTag(Family.SO_ODD, 3), [s(2, 3)])
        assert dual_parameter(dual_parameter(psi)) == psi
        psi2 = make_parameter(GroupTag(Family.SP, 3), [s(2, 3), s(1, 1)])
        assert dual_parameter(psi2).summands == MultiSet([s(3, 2), s(1, 1)])

    def test_dimension_preserved(self):
        psi = make_parameter(GroupTag(Family.SP, 3), [s(2, 3), s(1, 1)])
        assert l_parameter_of(dual_parameter(psi)).dim == psi.N


class TestPredicates:
    def test_tempered_and_generic(self):
        traits = predicates(make_parameter(SP2, [s(5, 1)]))
        assert traits.is_tempered and traits.is_generic
        assert not traits.is_anti_generic

    def test_anti_tempered(self):
        traits = predicates(make_parameter(SP1, [s(1, 3)]))
        assert traits.is_anti_tempered and traits.is_anti_generic
        assert not traits.is_generic

    def test_generic_not_tempered(self):
        psi = make_parameter(
            SP2, [s(2, 1, Fraction(1, 4)), s(2, 1, Fraction(-1, 4)), s(1, 1)]
        )
        traits = predicates(psi)
        assert traits.is_generic and not traits.is_tempered

    def test_implications(self):
        for summands in ([s(5, 1)], [s(1, 5)], [s(1, 3), s(1, 1), s(1, 1)]):
            psi = make_parameter(SP2, summands)
            traits = predicates(psi)
            assert not traits.is_tempered or traits.is_generic
            assert not traits.is_anti_tempered or traits.is_anti_generic


def brute_force_character_count(psi):
    """Independent filter over all sign vectors on distinct summands."""
    distinct = sorted(psi.summands.support(), key=str)
    mults = [psi.summands.multiplicity(d) for d in distinct]
    count = 0
    for signs in itertools.product((1, -1), repeat=len(distinct)):
        product = 1
        for sign, mult in zip(signs, mults):
            product *= sign**mult
        if product == 1:
            count += 1
    return count


class TestCharacters:
    def test_three_distinct(self):
        psi = make_parameter(GroupTag(Family.SP, 4), [s(1, 1), s(3, 1), s(5, 1)])
        table = characters_of(psi)
        assert len(table) == brute_force_character_count(psi) == 4

    def test_multiplicity_two(self):
        psi = make_parameter(SP3, [s(3, 1), s(3, 1), s(1, 1)])
        sub = make_parameter(SP3, [s(3, 1), s(3, 1), s(1, 1)])
        assert len(characters_of(sub)) == brute_force_character_count(sub)
        # the S3-with-multiplicity-2 slot alone admits both signs
        doubled = ArthurParameter(SP3, MultiSet([s(3, 1)] * 2 + [s(1, 1)]))
        signs = {c.sign_of(s(3, 1)) for c in characters_of(doubled).characters}
        assert signs == {1, -1}

    def test_single_summand_trivial_only(self):
        psi = make_parameter(SO1, [s(2, 1)])
        table = characters_of(psi)
        assert len(table) == 1 and table.characters[0].is_trivial

    def test_counting_law_on_census(self):
        from arthurkit.oracle import enumerate_good_parity

        for group in (SP2, SO2):
            for psi in enumerate_good_parity(group, [RHO]):
                table = characters_of(psi)
                k = len(table.distinct)
                odd = any(m % 2 == 1 for _, m in table.distinct)
                expected = 2 ** (k - 1) if odd else 2**k
                assert len(table) == expected == brute_force_character_count(psi)

    def test_requires_good_parity(self):
        with pytest.raises(ValidationError):
            characters_of(make_parameter(SP1, [s(2, 1), s(1, 1)]))


class TestSteinberg:
    def test_sp(self):
        psi = steinberg_parameter(SP2)
        assert psi.summands == MultiSet([Summand(TRIVIAL_RHO, Fraction(0), 5, 1)])

    def test_so(self):
        psi = steinberg_parameter(SO2)
        assert psi.summands == MultiSet([Summand(TRIVIAL_RHO, Fraction(0), 4, 1)])

    def test_good_parity(self):
        for group in (SP1, SP2, SP3, SO1, SO2):
            assert is_good_parity(steinberg_parameter(group))
