"""Decision procedures on packets.

Four classification results as executable tests: the criterion for a tempered
representation to lie in exactly one packet, enumeration of tempered packets
with their generic member, the generic-member shape test, and the
unramified-of-Arthur-type classification with its anti-generic dual
certificate and at-most-one-member inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .core import (
    HalfInt,
    MultiSet,
    Parity,
    RhoSymbol,
    ValidationError,
    block_parity,
    combine_parities,
)
from .ems import (
    ExtendedMultiSegment,
    ExtendedSegment,
    dual,
    parameter_of,
    pi_of_L,
)
from .core import Segment
from .ldata import (
    LData,
    LParameter,
    MultiplicityProfile,
    TemperedData,
    make_tempered,
)
from .params import (
    ArthurParameter,
    Family,
    GroupTag,
    LPiece,
    Summand,
    characters_of,
    is_good_parity,
    predicates,
    require_valid,
)


def _dual_parity_of(family: Family) -> Parity:
    return Parity.ORTHOGONAL if family is Family.SP else Parity.SYMPLECTIC


def group_for_dimension(family: Family, dim: int) -> GroupTag:
    """The group whose dual-group dimension is dim, within one family."""
    if family is Family.SP:
        if dim % 2 != 1:
            raise ValidationError(f"Sp parameters have odd dimension, got {dim}")
        return GroupTag(family, (dim - 1) // 2)
    if dim % 2 != 0:
        raise ValidationError(f"SO parameters have even dimension, got {dim}")
    return GroupTag(family, dim // 2)


def _tempered_good_parity(t: TemperedData) -> bool:
    target = _dual_parity_of(t.phi.family)
    for piece in t.phi.pieces.support():
        parity = combine_parities(piece.rho.parity, block_parity(piece.a))
        if parity is not target:
            return False
    return True


def _singleton_on_signs(phi: LParameter, sign_of) -> bool:
    """The two singleton conditions on an arbitrary sign assignment (which
    need not satisfy the character product constraint)."""
    by_rho: dict[str, set[int]] = {}
    for piece in phi.pieces.support():
        by_rho.setdefault(piece.rho.label, set()).add(piece.a)
    for piece in phi.pieces.support():
        label, a = piece.rho.label, piece.a
        if a + 2 in by_rho[label] and sign_of(label, a) * sign_of(label, a + 2) == -1:
            return False
        if a == 2 and sign_of(label, a) == -1:
            return False
    return True


def tempered_singleton(t: TemperedData) -> bool:
    """True iff the tempered representation (phi, eps) lies in exactly one
    packet: no pair rho(x)S_a, rho(x)S_(a+2) in phi with sign product -1, and
    no rho(x)S_2 with sign -1."""
    if not _tempered_good_parity(t):
        raise ValidationError("the singleton criterion needs good-parity tempered data")
    return _singleton_on_signs(t.phi, lambda label, a: dict(t.eps)[(label, a)])


def tempered_packet(phi: LParameter) -> list[TemperedData]:
    """The tempered packet of phi: one member per component-group character,
    the trivial-character (generic) member first."""
    if not phi.is_tempered:
        raise ValidationError("tempered packets need an L-parameter with zero twists")
    group = group_for_dimension(phi.family, phi.dim)
    summands = MultiSet(
        Summand(p.rho, Fraction(0), p.a, 1) for p in phi.pieces
    )
    psi = ArthurParameter(group, summands)
    require_valid(psi)
    table = characters_of(psi)
    members = []
    for character in table.characters:
        eps = {
            (s.rho.label, s.a): character.sign_of(s)
            for s, _ in table.distinct
        }
        members.append(TemperedData(phi, tuple(sorted(eps.items()))))
    return members


def is_generic_member(t: TemperedData) -> bool:
    """A tempered packet member is generic iff its character is trivial."""
    return t.is_trivial_eps


def has_generic_member(psi: ArthurParameter) -> bool:
    """The packet of psi has a generic member iff psi itself is generic
    (trivial Arthur-SL(2), i.e. all b = 1)."""
    return predicates(psi).is_generic


@dataclass(frozen=True)
class UnramifiedRejection:
    """Why Langlands data is not unramified of Arthur type: condition
    "i" (shape), "ii" (profile monotonicity), or "iii" (nontrivial sign),
    with the offending witness."""

    condition: str
    witness: str

    def __str__(self) -> str:
        return f"rejected ({self.condition}): {self.witness}"


def _profile_of(pi: LData) -> MultiplicityProfile:
    counts: dict[tuple[RhoSymbol, HalfInt], int] = {}
    for seg in pi.segments:
        key = (seg.rho, -seg.x)
        counts[key] = counts.get(key, 0) + 1
    for piece, mult in pi.tempered.phi.pieces.items():
        key = (piece.rho, HalfInt(0))
        counts[key] = counts.get(key, 0) + mult
    return MultiplicityProfile.from_counts(counts)


def profile_rows(
    group: GroupTag, profile: MultiplicityProfile, rhos: dict[str, RhoSymbol]
) -> ExtendedMultiSegment:
    """Rows ([x,-x], floor(x+1/2), +1) with multiplicity m_x - m_(x+1), in the
    canonical order (largest x first, i.e. B ascending)."""
    rows: dict[RhoSymbol, list[ExtendedSegment]] = {}
    for label in profile.labels():
        rho = rhos[label]
        support = profile.support(label)
        for x in sorted(support, key=lambda h: -h.twice):
            count = profile.m(rho, x) - profile.m(rho, x + 1)
            for _ in range(count):
                rows.setdefault(rho, []).append(
                    ExtendedSegment(Segment(rho, x, -x), (x + HalfInt(1)).floor(), 1)
                )
    return ExtendedMultiSegment.build(group, rows)


def classify_unramified(
    pi: LData,
) -> Union[ExtendedMultiSegment, UnramifiedRejection]:
    """Decide whether pi is unramified of Arthur type.

    Accepts iff (i) every segment is Delta_rho[x,x] with rho an unramified
    character and every tempered piece is rho (x) S_1, (ii) the multiplicity
    profile is nonincreasing on each family, and (iii) the sign character is
    trivial.  On acceptance returns the unique row system whose Langlands
    data is pi; its parameter is then anti-generic.
    """
    for seg in pi.segments:
        if seg.x != seg.y:
            return UnramifiedRejection("i", f"segment {seg} is not of the form [x,x]")
        if not seg.rho.unramified_character:
            return UnramifiedRejection("i", f"segment {seg}: rho is not an unramified character")
    for piece in pi.tempered.phi.pieces.support():
        if piece.a != 1:
            return UnramifiedRejection("i", f"tempered piece {piece} has block size > 1")
        if not piece.rho.unramified_character:
            return UnramifiedRejection("i", f"tempered piece {piece}: rho is not an unramified character")

    profile = _profile_of(pi)
    violation = profile.monotonicity_violation()
    if violation is not None:
        label, x = violation
        return UnramifiedRejection(
            "ii", f"m_({label},{x + 1}) > m_({label},{x})"
        )

    for (label, a), sign in pi.tempered.eps:
        if sign != 1:
            return UnramifiedRejection("iii", f"eps({label}*S{a}) = -1")

    rhos = {seg.rho.label: seg.rho for seg in pi.segments}
    for piece in pi.tempered.phi.pieces.support():
        rhos[piece.rho.label] = piece.rho
    e = profile_rows(pi.group, profile, rhos)
    parameter_of(e)  # good-parity and dimension validation
    return e


@dataclass(frozen=True)
class UnramifiedCertificate:
    """Evidence attached to an accepted unramified representation: the dual
    row system is tempered-shaped, its tempered pair passes the singleton
    criterion (both with the signs the involution computed and with the
    per-rho parity-rule signs), and the parameter is anti-generic."""

    dual_rows: ExtendedMultiSegment
    dual_tempered: TemperedData
    dual_is_tempered_shape: bool
    singleton: bool
    singleton_by_parity_rule: bool
    anti_generic: bool

    @property
    def passes(self) -> bool:
        return (
            self.dual_is_tempered_shape
            and self.singleton
            and self.singleton_by_parity_rule
            and self.anti_generic
        )


@dataclass(frozen=True)
class UnramifiedParameterSet:
    """The unique parameter whose packet contains the representation."""

    psi: ArthurParameter
    rows: ExtendedMultiSegment
    certificate: UnramifiedCertificate


def dual_eps_sign(rho: RhoSymbol, group: GroupTag) -> int:
    """Sign rule for the dual tempered datum: +1 when rho (x) S_2 has the
    dual-group parity, -1 otherwise."""
    parity = combine_parities(rho.parity, block_parity(2))
    return 1 if parity is group.dual_parity else -1


def unramified_parameter_set(pi: LData) -> UnramifiedParameterSet:
    """The singleton parameter set of an accepted unramified representation,
    with its anti-generic certificate.

    The certificate's tempered datum carries the signs produced by the
    involution (these always form a character); the per-rho parity-rule signs
    need not, so the singleton conditions are additionally evaluated on them
    directly.
    """
    result = classify_unramified(pi)
    if isinstance(result, UnramifiedRejection):
        raise ValidationError(f"not unramified of Arthur type: {result}")
    e = result
    psi = parameter_of(e)
    dual_e = dual(e)
    tempered_shape = all(row.A == row.B for row in dual_e.all_rows())

    pieces: list[LPiece] = []
    eps: dict[tuple[str, int], int] = {}
    for row in dual_e.all_rows():
        a = int(row.A + row.B) + 1
        pieces.append(LPiece(row.rho, Fraction(0), a))
        if eps.setdefault((row.rho.label, a), row.eta) != row.eta:
            raise ValidationError("involution produced inconsistent signs on equal rows")
    dual_tempered = make_tempered(pi.group.family, pieces, eps)
    rule_signs = {
        row.rho.label: dual_eps_sign(row.rho, pi.group) for row in dual_e.all_rows()
    }

    certificate = UnramifiedCertificate(
        dual_rows=dual_e,
        dual_tempered=dual_tempered,
        dual_is_tempered_shape=tempered_shape,
        singleton=tempered_singleton(dual_tempered),
        singleton_by_parity_rule=_singleton_on_signs(
            dual_tempered.phi, lambda label, a: rule_signs[label]
        ),
        anti_generic=predicates(psi).is_anti_generic,
    )
    return UnramifiedParameterSet(psi=psi, rows=e, certificate=certificate)


def unramified_member(psi: ArthurParameter) -> Optional[LData]:
    """The unique unramified representation of the packet, or None.

    A member exists iff psi is anti-generic (all a = 1); its rows are
    ([x,-x], floor(x+1/2), +1) with x = (b-1)/2, and the induced profile is
    automatically nonincreasing.  Never returns two candidates.
    """
    require_valid(psi)
    if not is_good_parity(psi):
        raise ValidationError("unramified members are sought in good-parity packets")
    if any(not s.rho.unramified_character for s in psi.summands.support()):
        raise ValidationError("every rho must be an unramified character")
    if any(s.a != 1 for s in psi.summands.support()):
        return None
    rows: dict[RhoSymbol, list[ExtendedSegment]] = {}
    per_rho: dict[RhoSymbol, list[Summand]] = {}
    for s in psi.sorted_summands():
        per_rho.setdefault(s.rho, []).append(s)
    for rho, summands in per_rho.items():
        for s in sorted(summands, key=lambda t: -t.b):
            x = HalfInt(s.b - 1)  # (b-1)/2
            rows.setdefault(rho, []).append(
                ExtendedSegment(Segment(rho, x, -x), (x + HalfInt(1)).floor(), 1)
            )
    e = ExtendedMultiSegment.build(psi.group, rows)
    return pi_of_L(e)
