"""Local Arthur parameters for Sp(2n) and split SO(2n+1).

A parameter is a multi-set of summands rho|.|^x (x) S_a (x) S_b of total
dual-group dimension N (N = 2n+1 for Sp(2n), N = 2n for SO(2n+1)), closed
under the contragredient and with every twist |x| < 1/2.  This module
validates parameters, splits them into twisted / bad-parity / good-parity
parts, computes the associated L-parameter, the (a,b)-swap dual, the four
temperedness predicates, component-group characters, and the Steinberg
parameter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .core import (
    HalfInt,
    MultiSet,
    Parity,
    RhoSymbol,
    TRIVIAL_RHO,
    ValidationError,
    block_parity,
    combine_parities,
    format_fraction,
)


class Family(Enum):
    SP = "Sp"
    SO_ODD = "SO"

    @classmethod
    def from_token(cls, token: str) -> "Family":
        for fam in cls:
            if fam.value == token:
                return fam
        raise ValueError(f"unknown group family {token!r}")


@dataclass(frozen=True)
class GroupTag:
    """The group Sp(2n) or split SO(2n+1), with its dual-group bookkeeping."""

    family: Family
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError("group rank n must be positive")

    @property
    def N(self) -> int:
        """Dimension of the dual-group standard representation."""
        return 2 * self.n + 1 if self.family is Family.SP else 2 * self.n

    @property
    def dual_parity(self) -> Parity:
        """Self-duality type of the dual group: orthogonal for Sp, symplectic for SO."""
        return Parity.ORTHOGONAL if self.family is Family.SP else Parity.SYMPLECTIC

    def __str__(self) -> str:
        return f"{self.family.value} n={self.n}"


@dataclass(frozen=True)
class Summand:
    """One summand rho|.|^x (x) S_a (x) S_b of a parameter; |x| < 1/2 strictly."""

    rho: RhoSymbol
    x: Fraction = Fraction(0)
    a: int = 1
    b: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", Fraction(self.x))
        if self.a < 1 or self.b < 1:
            raise ValidationError("block sizes a, b must be positive")
        if abs(self.x) >= Fraction(1, 2):
            raise ValidationError(f"twist {self.x} must satisfy |x| < 1/2")

    @property
    def A(self) -> HalfInt:
        return HalfInt(self.a + self.b - 2)

    @property
    def B(self) -> HalfInt:
        return HalfInt(self.a - self.b)

    @property
    def dim(self) -> int:
        return self.rho.dim * self.a * self.b

    def contragredient(self) -> "Summand":
        return Summand(self.rho.contragredient(), -self.x, self.a, self.b)

    def self_dual_parity(self) -> Parity:
        """Type of the summand as a self-dual representation (N if it is not one)."""
        if self.x != 0 or not self.rho.is_self_dual:
            return Parity.NON_SELF_DUAL
        blocks = combine_parities(block_parity(self.a), block_parity(self.b))
        return combine_parities(self.rho.parity, blocks)

    def swapped(self) -> "Summand":
        return Summand(self.rho, self.x, self.b, self.a)

    def __str__(self) -> str:
        twist = "" if self.x == 0 else f"@{format_fraction(self.x)}"
        return f"{self.rho.label}{twist}*S{self.a}*S{self.b}"


def _summand_sort_key(s: Summand):
    return (s.rho.label, s.x, s.a, s.b)


@dataclass(frozen=True)
class ArthurParameter:
    """A local Arthur parameter: a group tag plus a multi-set of summands."""

    group: GroupTag
    summands: MultiSet[Summand]

    @property
    def N(self) -> int:
        return self.group.N

    @property
    def dim(self) -> int:
        return sum(s.dim * mult for s, mult in self.summands.items())

    def sorted_summands(self) -> list[Summand]:
        """Summands repeated by multiplicity, in canonical order."""
        out: list[Summand] = []
        for s, mult in sorted(self.summands.items(), key=lambda kv: _summand_sort_key(kv[0])):
            out.extend([s] * mult)
        return out

    def __str__(self) -> str:
        return " + ".join(str(s) for s in self.sorted_summands()) or "0"


def make_parameter(group: GroupTag, summands: Iterable[Summand]) -> ArthurParameter:
    return ArthurParameter(group, MultiSet(summands))


def validate(psi: ArthurParameter) -> Optional[str]:
    """Return None if psi is a valid parameter, else a report naming the
    first failing condition (dimension sum, then contragredient closure)."""
    total = psi.dim
    if total != psi.N:
        return f"dimension: sum of dim(rho)*a*b is {total}, expected N = {psi.N}"
    for s, mult in psi.summands.items():
        dual_mult = psi.summands.multiplicity(s.contragredient())
        if dual_mult != mult:
            return (
                f"contragredient: {s} has multiplicity {mult} but its dual "
                f"has multiplicity {dual_mult}"
            )
    # |x| < 1/2 is enforced at Summand construction.
    return None


def require_valid(psi: ArthurParameter) -> None:
    report = validate(psi)
    if report is not None:
        raise ValidationError(report)


def is_good_parity(psi: ArthurParameter) -> bool:
    """True iff every twist is zero and every summand is self-dual of the
    same type as the dual group."""
    return all(
        s.self_dual_parity() is psi.group.dual_parity for s in psi.summands.support()
    )


@dataclass(frozen=True)
class Decomposition:
    """Split of a parameter into the strictly-positive-twist part, a chosen
    half of the bad-parity part, and the good-parity core."""

    nu_pos: tuple[Summand, ...]
    np: tuple[Summand, ...]
    gp: ArthurParameter

    def reassembled(self) -> MultiSet[Summand]:
        pieces = list(self.nu_pos) + list(self.np)
        pieces += [s.contragredient() for s in self.np]
        pieces += [s.contragredient() for s in self.nu_pos]
        return MultiSet(pieces) + self.gp.summands


def decompose(psi: ArthurParameter) -> Decomposition:
    """Split psi = nu_pos + np + gp + np^v + nu_pos^v.

    The np half of each contragredient pair is chosen canonically: the
    summand with the lexicographically smaller (label, twist) key, so two
    runs always agree.
    """
    require_valid(psi)
    nu_pos: list[Summand] = []
    gp: list[Summand] = []
    zero_bad: list[Summand] = []
    for s in psi.sorted_summands():
        if s.x > 0:
            nu_pos.append(s)
        elif s.x < 0:
            continue  # accounted for as nu_pos^v
        elif s.self_dual_parity() is psi.group.dual_parity:
            gp.append(s)
        else:
            zero_bad.append(s)

    np_half: list[Summand] = []
    remaining = MultiSet(zero_bad)
    for s in zero_bad:
        if remaining.multiplicity(s) == 0:
            continue
        dual = s.contragredient()
        if dual == s:
            # Self-dual of the wrong type: multiplicity must be even.
            mult = remaining.multiplicity(s)
            if mult % 2 != 0:
                raise ValidationError(
                    f"summand {s} is self-dual of the wrong type with odd multiplicity"
                )
            np_half.extend([s] * (mult // 2))
            remaining = remaining - MultiSet([s] * mult)
        else:
            mult = remaining.multiplicity(s)
            dual_mult = remaining.multiplicity(dual)
            if mult != dual_mult:
                raise ValidationError(f"unpaired bad-parity summand {s}")
            chosen = min(s, dual, key=lambda t: (t.rho.label, t.x))
            np_half.extend([chosen] * mult)
            remaining = remaining - MultiSet([s] * mult + [dual] * dual_mult)

    return Decomposition(
        nu_pos=tuple(nu_pos),
        np=tuple(np_half),
        gp=ArthurParameter(psi.group, MultiSet(gp)),
    )


@dataclass(frozen=True)
class LPiece:
    """One piece rho|.|^twist (x) S_a of an L-parameter."""

    rho: RhoSymbol
    twist: Fraction
    a: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "twist", Fraction(self.twist))
        if self.a < 1:
            raise ValidationError("L-parameter block size must be positive")

    @property
    def dim(self) -> int:
        return self.rho.dim * self.a

    def __str__(self) -> str:
        twist = "" if self.twist == 0 else f"@{format_fraction(self.twist)}"
        return f"{self.rho.label}{twist}*S{self.a}"


@dataclass(frozen=True)
class LParameter:
    """An L-parameter as a multi-set of pieces, tagged with the group family.

    Only the family enters parity formulas, so sub-parameters of smaller
    groups (down to the trivial group) carry the same tag.
    """

    family: Family
    pieces: MultiSet[LPiece]

    @property
    def dim(self) -> int:
        return sum(p.dim * mult for p, mult in self.pieces.items())

    @property
    def is_tempered(self) -> bool:
        return all(p.twist == 0 for p in self.pieces.support())

    def sorted_pieces(self) -> list[LPiece]:
        out: list[LPiece] = []
        for p, mult in sorted(
            self.pieces.items(), key=lambda kv: (kv[0].rho.label, kv[0].twist, kv[0].a)
        ):
            out.extend([p] * mult)
        return out

    def __str__(self) -> str:
        return " + ".join(str(p) for p in self.sorted_pieces()) or "0"


def l_parameter_of(psi: ArthurParameter) -> LParameter:
    """Evaluate the Arthur-SL(2) factor at the absolute-value cocharacter:
    each rho|.|^x (x) S_a (x) S_b contributes pieces rho|.|^(x+(b-1)/2-j) (x) S_a
    for j = 0, ..., b-1.  Total dimension is preserved."""
    require_valid(psi)
    pieces: list[LPiece] = []
    for s in psi.sorted_summands():
        for j in range(s.b):
            twist = s.x + Fraction(s.b - 1, 2) - j
            pieces.append(LPiece(s.rho, twist, s.a))
    return LParameter(psi.group.family, MultiSet(pieces))


def dual_parameter(psi: ArthurParameter) -> ArthurParameter:
    """Swap the two SL(2) factors of every summand; an involution."""
    require_valid(psi)
    return ArthurParameter(psi.group, MultiSet(s.swapped() for s in psi.summands))


@dataclass(frozen=True)
class ParameterTraits:
    is_tempered: bool
    is_generic: bool
    is_anti_generic: bool
    is_anti_tempered: bool


def predicates(psi: ArthurParameter) -> ParameterTraits:
    """Temperedness traits: generic = trivial Arthur-SL(2) (all b = 1),
    tempered adds zero twists; the anti- versions swap the roles of a and b."""
    require_valid(psi)
    summands = psi.summands.support()
    all_b1 = all(s.b == 1 for s in summands)
    all_a1 = all(s.a == 1 for s in summands)
    all_x0 = all(s.x == 0 for s in summands)
    return ParameterTraits(
        is_tempered=all_b1 and all_x0,
        is_generic=all_b1,
        is_anti_generic=all_a1,
        is_anti_tempered=all_a1 and all_x0,
    )


@dataclass(frozen=True)
class Character:
    """A sign function on the distinct summands of a good-parity parameter."""

    distinct: tuple[Summand, ...]
    signs: tuple[int, ...]

    def sign_of(self, s: Summand) -> int:
        try:
            return self.signs[self.distinct.index(s)]
        except ValueError:
            raise KeyError(f"{s} is not a summand of this parameter") from None

    @property
    def is_trivial(self) -> bool:
        return all(sign == 1 for sign in self.signs)

    def __str__(self) -> str:
        return ", ".join(
            f"{s}:{'+' if sign == 1 else '-'}" for s, sign in zip(self.distinct, self.signs)
        )


@dataclass(frozen=True)
class CharacterTable:
    """All characters of the component group of a good-parity parameter."""

    distinct: tuple[tuple[Summand, int], ...]
    characters: tuple[Character, ...]

    def __len__(self) -> int:
        return len(self.characters)


def iter_characters(psi_gp: ArthurParameter) -> Iterator[Character]:
    """Yield the sign functions that are constant on equal summands and whose
    product over all summands (with multiplicity) is 1; trivial one first."""
    if not is_good_parity(psi_gp):
        raise ValidationError("component-group characters need a good-parity parameter")
    distinct = sorted(psi_gp.summands.support(), key=_summand_sort_key)
    mults = [psi_gp.summands.multiplicity(s) for s in distinct]
    for signs in itertools.product((1, -1), repeat=len(distinct)):
        product = 1
        for sign, mult in zip(signs, mults):
            if mult % 2 == 1:
                product *= sign
        if product == 1:
            yield Character(tuple(distinct), signs)


def characters_of(psi_gp: ArthurParameter) -> CharacterTable:
    distinct = sorted(psi_gp.summands.support(), key=_summand_sort_key)
    table = tuple(iter_characters(psi_gp))
    return CharacterTable(
        distinct=tuple((s, psi_gp.summands.multiplicity(s)) for s in distinct),
        characters=table,
    )


def steinberg_parameter(group: GroupTag) -> ArthurParameter:
    """The parameter 1 (x) S_N (x) S_1 of the Steinberg representation."""
    return make_parameter(group, [Summand(TRIVIAL_RHO, Fraction(0), group.N, 1)])
