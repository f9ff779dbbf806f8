"""Extended multi-segments.

An extended multi-segment refines a good-parity Arthur parameter: per rho, an
ordered list of rows ([A,B]_rho, l, eta) subject to A+B >= 0 and a global sign
condition.  Rows parametrize packet members; this module implements the two
admissible-order checks, the sign condition, weak equivalence, the closed-form
Langlands-data formula for rows in normal form, the enumeration of those
normal forms, the exponent multi-sets, and the involution realizing the
Aubert-Zelevinsky dual (which swaps the two SL(2) block sizes).

Row bounds are deliberately lenient: the involution is total on every
sign-condition-satisfying census only if intermediate l values may leave
[0, b/2] (such rows label the zero representation).  Builders that produce
packet members always stay in range; :func:`in_l_range` tests it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .core import (
    HalfInt,
    MultiSet,
    RhoSymbol,
    Segment,
    ValidationError,
    sign_power,
)
from .ldata import LData, TemperedData, make_ldata, make_tempered, steinberg_segment
from .params import (
    ArthurParameter,
    GroupTag,
    LPiece,
    Summand,
    is_good_parity,
    require_valid,
)


@dataclass(frozen=True)
class ExtendedSegment:
    """One row ([A,B]_rho, l, eta); eta is a sign, l an integer."""

    seg: Segment
    l: int
    eta: int

    def __post_init__(self) -> None:
        if self.eta not in (1, -1):
            raise ValidationError("eta must be +1 or -1")
        if not isinstance(self.l, int):
            raise ValidationError("l must be an integer")

    @property
    def rho(self) -> RhoSymbol:
        return self.seg.rho

    @property
    def A(self) -> HalfInt:
        return self.seg.A

    @property
    def B(self) -> HalfInt:
        return self.seg.B

    @property
    def a(self) -> int:
        """A + B + 1, the Deligne-SL(2) size of the associated summand."""
        return int(self.A + self.B) + 1

    @property
    def b(self) -> int:
        """A - B + 1, the segment length and Arthur-SL(2) size."""
        return self.seg.length

    @property
    def eta_relevant(self) -> bool:
        """The stored sign carries information only when l < b/2."""
        return 2 * self.l < self.b

    def __str__(self) -> str:
        eta = "+" if self.eta == 1 else "-"
        return f"{self.rho.label} [{self.A},{self.B}] l={self.l} eta={eta}"


def in_l_range(row: ExtendedSegment) -> bool:
    return 0 <= 2 * row.l <= row.b


def make_row(rho: RhoSymbol, A, B, l: int, eta: int) -> ExtendedSegment:
    return ExtendedSegment(Segment(rho, HalfInt.coerce(A), HalfInt.coerce(B)), l, eta)


@dataclass(frozen=True)
class ExtendedMultiSegment:
    """Rows grouped per rho, each group in its stored admissible order
    (first row = minimal)."""

    group: GroupTag
    rows: tuple[tuple[RhoSymbol, tuple[ExtendedSegment, ...]], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for rho, rows in self.rows:
            if rho.label in seen:
                raise ValidationError(f"duplicate row group for rho {rho.label!r}")
            seen.add(rho.label)
            for row in rows:
                if row.rho != rho:
                    raise ValidationError("row filed under the wrong rho")
                if (row.A + row.B).twice < 0:
                    raise ValidationError(f"row {row}: A + B must be >= 0")

    @classmethod
    def build(
        cls,
        group: GroupTag,
        rows: Union[Mapping[RhoSymbol, Sequence[ExtendedSegment]], Iterable[ExtendedSegment]],
    ) -> "ExtendedMultiSegment":
        grouped: dict[RhoSymbol, list[ExtendedSegment]] = {}
        if isinstance(rows, Mapping):
            for rho, row_list in rows.items():
                grouped.setdefault(rho, []).extend(row_list)
        else:
            for row in rows:
                grouped.setdefault(row.rho, []).append(row)
        ordered = tuple(
            (rho, tuple(grouped[rho]))
            for rho in sorted(grouped, key=lambda r: r.label)
            if grouped[rho]
        )
        return cls(group, ordered)

    def rho_symbols(self) -> list[RhoSymbol]:
        return [rho for rho, _ in self.rows]

    def rows_for(self, rho: RhoSymbol) -> tuple[ExtendedSegment, ...]:
        for r, rows in self.rows:
            if r == rho:
                return rows
        return ()

    def all_rows(self) -> Iterator[ExtendedSegment]:
        for _, rows in self.rows:
            yield from rows

    def __str__(self) -> str:
        return " ; ".join(str(row) for row in self.all_rows())


def order_check(e: ExtendedMultiSegment, mode: str) -> bool:
    """Check the stored order of each rho group.

    Mode "P": any pair with both A and B strictly larger must come later.
    Mode "Pprime": any pair with strictly larger B must come later, i.e. B is
    nondecreasing along the group; Pprime implies P.
    """
    if mode not in ("P", "Pprime"):
        raise ValueError(f"order mode must be 'P' or 'Pprime', got {mode!r}")
    for _, rows in e.rows:
        for i, j in itertools.combinations(range(len(rows)), 2):
            early, late = rows[i], rows[j]
            if mode == "Pprime":
                if early.B > late.B:
                    return False
            else:
                if early.A > late.A and early.B > late.B:
                    return False
    return True


def sign_condition(e: ExtendedMultiSegment) -> bool:
    """Evaluate the product of (-1)^(floor(b/2)+l) * eta^b over all rows."""
    product = 1
    for row in e.all_rows():
        product *= sign_power(row.b // 2 + row.l) * row.eta**row.b
    return product == 1


def parameter_of(e: ExtendedMultiSegment) -> ArthurParameter:
    """The Arthur parameter with one summand rho (x) S_(A+B+1) (x) S_(A-B+1)
    per row; raises unless the result is a valid good-parity parameter."""
    summands = [Summand(row.rho, Fraction(0), row.a, row.b) for row in e.all_rows()]
    psi = ArthurParameter(e.group, MultiSet(summands))
    require_valid(psi)
    if not is_good_parity(psi):
        raise ValidationError("the associated parameter is not of good parity")
    return psi


def weak_equivalent(e1: ExtendedMultiSegment, e2: ExtendedMultiSegment) -> bool:
    """Row-wise equality of segments and l, with eta compared only where it
    carries information (l < b/2)."""
    if e1.group != e2.group:
        return False
    rhos1, rhos2 = e1.rho_symbols(), e2.rho_symbols()
    if rhos1 != rhos2:
        return False
    for rho in rhos1:
        rows1, rows2 = e1.rows_for(rho), e2.rows_for(rho)
        if len(rows1) != len(rows2):
            return False
        for r1, r2 in zip(rows1, rows2):
            if r1.seg != r2.seg or r1.l != r2.l:
                return False
            if r1.eta_relevant and r1.eta != r2.eta:
                return False
    return True


def satisfies_L(e: ExtendedMultiSegment) -> bool:
    """The closed-form normal form: per rho group, A+B nondecreasing along the
    order, every l = floor(b/2), and rows with equal A+B and even A-B (odd b)
    share their sign."""
    for _, rows in e.rows:
        for early, late in zip(rows, rows[1:]):
            if early.A + early.B > late.A + late.B:
                return False
        for row in rows:
            if row.l != row.b // 2:
                return False
        for i, j in itertools.combinations(range(len(rows)), 2):
            ri, rj = rows[i], rows[j]
            if ri.A + ri.B == rj.A + rj.B and ri.b % 2 == 1 and rj.b % 2 == 1:
                if ri.eta != rj.eta:
                    return False
    return True


def pi_of_L(e: ExtendedMultiSegment) -> LData:
    """Langlands data of a normal-form row system.

    Each row yields segments Delta_rho[B+k, -A+k] for k = 0, ..., l-1 (l of
    them; this count is what makes the L-parameter dimension match the
    parameter dimension), and rows of odd length contribute a tempered piece
    rho (x) S_(A+B+1) carrying eta.
    """
    if not satisfies_L(e):
        raise ValidationError("rows are not in closed-form normal form")
    psi = parameter_of(e)  # validates good parity
    segments = []
    pieces: list[LPiece] = []
    eps: dict[tuple[str, int], int] = {}
    for row in e.all_rows():
        for k in range(row.l):
            segments.append(steinberg_segment(row.rho, row.B + k, -row.A + k))
        if row.b % 2 == 1:
            pieces.append(LPiece(row.rho, Fraction(0), row.a))
            eps[(row.rho.label, row.a)] = row.eta
    tempered = make_tempered(e.group.family, pieces, eps)
    pi = make_ldata(e.group, segments, tempered)
    if pi.dim != psi.dim:
        raise ValidationError(
            f"dimension audit failed: Langlands data has dimension {pi.dim}, "
            f"parameter has {psi.dim}"
        )
    return pi


def canonical_segments(psi: ArthurParameter) -> dict[RhoSymbol, list[Segment]]:
    """Per-rho segments [A,B] of a good-parity parameter in the canonical
    admissible order: (B, A) lexicographically ascending, which satisfies
    Pprime."""
    require_valid(psi)
    if not is_good_parity(psi):
        raise ValidationError("extended multi-segments need a good-parity parameter")
    per_rho: dict[RhoSymbol, list[Segment]] = {}
    for s in psi.sorted_summands():
        per_rho.setdefault(s.rho, []).append(Segment(s.rho, s.A, s.B))
    for segs in per_rho.values():
        segs.sort(key=lambda seg: (seg.B.twice, seg.A.twice))
    return per_rho


def l_class(psi: ArthurParameter) -> list[ExtendedMultiSegment]:
    """All normal-form extended multi-segments over the canonical order of
    supp(psi), satisfying the sign condition, up to weak equivalence.

    The normal form pins every l to floor(b/2), so only the signs of
    odd-length rows vary; rows of equal A+B within one rho must share their
    sign, and the sign condition reduces to a product over odd-length rows.
    """
    per_rho = canonical_segments(psi)
    if any(
        segs != sorted(segs, key=lambda seg: (seg.A + seg.B).twice)
        for segs in per_rho.values()
    ):
        return []  # no normal form exists over the canonical order

    # One free sign per (rho, A+B) class of odd-length rows; weight = number
    # of rows in the class (the sign condition sees eta^b with b odd).
    sign_classes: list[tuple[RhoSymbol, HalfInt, int]] = []
    for rho in sorted(per_rho, key=lambda r: r.label):
        classes: dict[HalfInt, int] = {}
        for seg in per_rho[rho]:
            if seg.length % 2 == 1:
                key = seg.A + seg.B
                classes[key] = classes.get(key, 0) + 1
        for key in sorted(classes, key=lambda h: h.twice):
            sign_classes.append((rho, key, classes[key]))

    out: list[ExtendedMultiSegment] = []
    for signs in itertools.product((1, -1), repeat=len(sign_classes)):
        product = 1
        for sign, (_, _, count) in zip(signs, sign_classes):
            product *= sign**count
        if product != 1:
            continue
        assignment = {
            (rho.label, key.twice): sign
            for sign, (rho, key, _) in zip(signs, sign_classes)
        }
        rows: dict[RhoSymbol, list[ExtendedSegment]] = {}
        for rho, segs in per_rho.items():
            row_list = []
            for seg in segs:
                if seg.length % 2 == 1:
                    eta = assignment[(rho.label, (seg.A + seg.B).twice)]
                else:
                    eta = 1  # canonical for l = b/2
                row_list.append(ExtendedSegment(seg, seg.length // 2, eta))
            rows[rho] = row_list
        out.append(ExtendedMultiSegment.build(psi.group, rows))
    return out


def dual(e: ExtendedMultiSegment) -> ExtendedMultiSegment:
    """The involution realizing the Aubert-Zelevinsky dual on row systems.

    Requires the stored order to satisfy Pprime for every rho.  Per rho, with
    alpha_i the sum of a over earlier rows and beta_i the sum of b over later
    rows, each row ([A,B], l, eta) becomes ([A,-B], l', eta') where

        l'   = l + B                                (B integral)
               l + B + (1/2) * (-1)^alpha * eta     (B non-integral)
        eta' = (-1)^(alpha+beta) * eta              (B integral)
               (-1)^(alpha+beta+1) * eta            (B non-integral)

    and rows with non-integral B and l = b/2 are first re-normalized to
    eta = (-1)^(alpha+1), the stored sign being meaningless there.  The row
    order is reversed, which is again Pprime.  On parameters this swaps the
    two SL(2) sizes; applied twice it returns a weakly equivalent system.
    """
    if not order_check(e, "Pprime"):
        raise ValidationError("the dual needs the Pprime order on every rho group")
    new_rows: dict[RhoSymbol, list[ExtendedSegment]] = {}
    for rho, rows in e.rows:
        a_sizes = [row.a for row in rows]
        b_sizes = [row.b for row in rows]
        transformed: list[ExtendedSegment] = []
        for i, row in enumerate(rows):
            alpha = sum(a_sizes[:i])
            beta = sum(b_sizes[i + 1 :])
            eta = row.eta
            if not row.B.is_integer and 2 * row.l == row.b:
                eta = sign_power(alpha + 1)
            if row.B.is_integer:
                new_l = row.l + int(row.B)
                new_eta = sign_power(alpha + beta) * eta
            else:
                new_l = row.l + (row.B + HalfInt(sign_power(alpha) * eta)).floor()
                new_eta = sign_power(alpha + beta + 1) * eta
            new_seg = Segment(rho, row.A, -row.B)
            new_row = ExtendedSegment(new_seg, new_l, new_eta)
            if not new_row.eta_relevant and new_row.eta != 1:
                new_row = ExtendedSegment(new_seg, new_l, 1)  # canonical sign
            transformed.append(new_row)
        transformed.reverse()
        new_rows[rho] = transformed
    return ExtendedMultiSegment.build(e.group, new_rows)


def omega_sets(rows: Sequence[ExtendedSegment]) -> tuple[list[HalfInt], list[HalfInt]]:
    """Exponent multi-sets of one rho group: the sum of the [A_i, B_i]
    segments sorted ascending, and of the [B_i, -A_i] segments sorted
    descending."""
    ascending: list[HalfInt] = []
    descending: list[HalfInt] = []
    for row in rows:
        ascending.extend(Segment(row.rho, row.A, row.B).exponents())
        descending.extend(Segment(row.rho, row.B, -row.A).exponents())
    ascending.sort(key=lambda h: h.twice)
    descending.sort(key=lambda h: -h.twice)
    return ascending, descending
