"""Langlands data for the classical groups and GL building blocks.

A representation of G_n is labeled by a list of essentially-discrete GL
segments Delta_rho[x,y] with x+y < 0, sorted by x+y, plus a tempered pair
(phi, eps) where eps is a component-group character of phi.  The GL side
additionally supplies Zelevinsky segments, Leibniz derivative rules, and
(shifted) Speh blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    HalfInt,
    MultiSet,
    Parity,
    RhoSymbol,
    ValidationError,
    block_parity,
    combine_parities,
)
from .params import Family, GroupTag, LParameter, LPiece, Summand


class SegKind(Enum):
    STEINBERG = "D"
    ZELEVINSKY = "Z"


@dataclass(frozen=True)
class GLSegmentRep:
    """A Steinberg Delta_rho[x,y] or Zelevinsky Z_rho[y,x] segment module.

    x is the top exponent and y the bottom one; x - y >= -1, and x = y - 1
    marks the trivial representation of GL(0) so derivative chains terminate
    without special cases.
    """

    kind: SegKind
    rho: RhoSymbol
    x: HalfInt
    y: HalfInt

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", HalfInt.coerce(self.x))
        object.__setattr__(self, "y", HalfInt.coerce(self.y))
        diff = self.x - self.y
        if not diff.is_integer or diff.twice < -2:
            raise ValidationError(
                f"segment [{self.x},{self.y}]: x-y must be an integer >= -1"
            )

    @property
    def length(self) -> int:
        return int(self.x - self.y) + 1

    @property
    def is_gl0_trivial(self) -> bool:
        return self.length == 0

    @property
    def dim(self) -> int:
        return self.rho.dim * self.length

    def __str__(self) -> str:
        if self.kind is SegKind.STEINBERG:
            return f"D_{self.rho.label}[{self.x},{self.y}]"
        return f"Z_{self.rho.label}[{self.y},{self.x}]"


def steinberg_segment(rho: RhoSymbol, x, y) -> GLSegmentRep:
    return GLSegmentRep(SegKind.STEINBERG, rho, HalfInt.coerce(x), HalfInt.coerce(y))


def zelevinsky_segment(rho: RhoSymbol, y, x) -> GLSegmentRep:
    return GLSegmentRep(SegKind.ZELEVINSKY, rho, HalfInt.coerce(x), HalfInt.coerce(y))


def gl_derivative(
    seg: GLSegmentRep, at: tuple[RhoSymbol, HalfInt], side: str
) -> Optional[GLSegmentRep]:
    """Leibniz rule for a single segment module; None encodes the zero module.

    Steinberg segments derive at the top exponent on the left and at the
    bottom on the right; Zelevinsky segments do the opposite.  The surviving
    exponent range shrinks by one step toward the other end.
    """
    if side not in ("left", "right"):
        raise ValueError(f"derivative side must be 'left' or 'right', got {side!r}")
    rho, exponent = at
    exponent = HalfInt.coerce(exponent)
    if rho != seg.rho or seg.is_gl0_trivial:
        return None
    if seg.kind is SegKind.STEINBERG:
        if side == "left":
            if exponent != seg.x:
                return None
            return GLSegmentRep(seg.kind, seg.rho, seg.x - 1, seg.y)
        if exponent != seg.y:
            return None
        return GLSegmentRep(seg.kind, seg.rho, seg.x, seg.y + 1)
    # Zelevinsky: left at the bottom exponent, right at the top.
    if side == "left":
        if exponent != seg.y:
            return None
        return GLSegmentRep(seg.kind, seg.rho, seg.x, seg.y + 1)
    if exponent != seg.x:
        return None
    return GLSegmentRep(seg.kind, seg.rho, seg.x - 1, seg.y)


@dataclass(frozen=True)
class SpehBlock:
    """A (shifted) Speh representation: the s-by-t grid with entry
    (i, j) = top_left - i + j (1-indexed), realized as a Langlands quotient
    of column segments."""

    rho: RhoSymbol
    top_left: Fraction
    rows: int
    cols: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "top_left", Fraction(self.top_left))
        if self.rows < 1 or self.cols < 1:
            raise ValidationError("Speh block needs positive row and column counts")

    def entry(self, i: int, j: int) -> Fraction:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i},{j}) outside a {self.rows}x{self.cols} block")
        return self.top_left - (i - 1) + (j - 1)

    def as_matrix(self) -> list[list[Fraction]]:
        return [
            [self.entry(i, j) for j in range(1, self.cols + 1)]
            for i in range(1, self.rows + 1)
        ]


def speh_of_summand(s: Summand, shifted: bool) -> SpehBlock:
    """The GL block attached to one parameter summand: a rows, b columns,
    top-left exponent (a-b)/2 + x.  Shifted blocks carry the positive twist;
    unshifted ones require x = 0."""
    if shifted and s.x <= 0:
        raise ValidationError("shifted Speh blocks need a strictly positive twist")
    if not shifted and s.x != 0:
        raise ValidationError("unshifted Speh blocks need twist zero")
    top_left = Fraction(s.a - s.b, 2) + s.x
    return SpehBlock(s.rho, top_left, rows=s.a, cols=s.b)


@dataclass(frozen=True)
class TemperedData:
    """A tempered pair (phi, eps): phi with all twists zero and eps a sign on
    each distinct piece, constant on equal pieces, of total product one."""

    phi: LParameter
    eps: tuple[tuple[tuple[str, int], int], ...]  # ((rho label, a), sign), sorted

    def __post_init__(self) -> None:
        if not self.phi.is_tempered:
            raise ValidationError("tempered data needs an L-parameter with zero twists")
        keys = sorted({(p.rho.label, p.a) for p in self.phi.pieces.support()})
        eps_map = dict(self.eps)
        if sorted(eps_map) != keys or len(eps_map) != len(self.eps):
            raise ValidationError("eps must assign exactly one sign per distinct piece")
        if any(sign not in (1, -1) for sign in eps_map.values()):
            raise ValidationError("eps signs must be +1 or -1")
        product = 1
        for piece, mult in self.phi.pieces.items():
            product *= eps_map[(piece.rho.label, piece.a)] ** mult
        if product != 1:
            raise ValidationError("eps must have total product 1 over all pieces")
        object.__setattr__(self, "eps", tuple(sorted(self.eps)))

    def eps_of(self, rho: RhoSymbol, a: int) -> int:
        for key, sign in self.eps:
            if key == (rho.label, a):
                return sign
        raise KeyError(f"{rho.label}*S{a} is not a piece of this tempered parameter")

    @property
    def is_trivial_eps(self) -> bool:
        return all(sign == 1 for _, sign in self.eps)

    @property
    def dim(self) -> int:
        return self.phi.dim

    def __str__(self) -> str:
        eps = ", ".join(f"{label}*S{a}:{'+' if s == 1 else '-'}" for (label, a), s in self.eps)
        return f"pi({self.phi}; {eps or 'eps empty'})"


def make_tempered(
    family: Family, pieces: Iterable[LPiece], eps: dict[tuple[str, int], int] | None = None
) -> TemperedData:
    """Build a tempered pair; eps defaults to the trivial character."""
    phi = LParameter(family, MultiSet(pieces))
    keys = sorted({(p.rho.label, p.a) for p in phi.pieces.support()})
    if eps is None:
        eps = {key: 1 for key in keys}
    return TemperedData(phi, tuple(sorted(eps.items())))


def _segment_sort_key(seg: GLSegmentRep):
    return ((seg.x + seg.y).twice, seg.rho.label, seg.x.twice)


@dataclass(frozen=True)
class LData:
    """Langlands data: sorted Steinberg segments with x+y < 0 plus a tempered pair."""

    group: GroupTag
    segments: tuple[GLSegmentRep, ...]
    tempered: TemperedData

    @property
    def dim(self) -> int:
        """Dual-group dimension: each segment counts twice (it pairs with its
        contragredient in the associated L-parameter)."""
        return 2 * sum(seg.dim for seg in self.segments) + self.tempered.dim

    def __str__(self) -> str:
        segs = " ".join(str(seg) for seg in self.segments)
        return f"L({segs}{' ' if segs else ''}; {self.tempered})"


def make_ldata(
    group: GroupTag,
    segments: Iterable[GLSegmentRep],
    tempered: TemperedData,
) -> LData:
    """Sort and validate Langlands data.

    Every segment must be a Steinberg segment with x + y < 0; ties in x+y are
    ordered by (label, x), which the classification treats as unordered.
    """
    segs = list(segments)
    for seg in segs:
        if seg.kind is not SegKind.STEINBERG:
            raise ValidationError("Langlands data uses Steinberg segments only")
        if seg.is_gl0_trivial:
            raise ValidationError("Langlands data cannot contain the GL(0) marker")
        if (seg.x + seg.y).twice >= 0:
            raise ValidationError(f"segment {seg} needs x + y < 0")
    if tempered.phi.family is not group.family:
        raise ValidationError("tempered part tagged with a different group family")
    segs.sort(key=_segment_sort_key)
    return LData(group, tuple(segs), tempered)


def omega_pi(pi: LData) -> MultiSet[tuple[RhoSymbol, HalfInt]]:
    """The exponent multi-set of pi: with segments written Delta_rho[x,-y],
    each contributes x and y; a tempered piece rho (x) S_(2z+1) contributes z."""
    elems: list[tuple[RhoSymbol, HalfInt]] = []
    for seg in pi.segments:
        elems.append((seg.rho, seg.x))
        elems.append((seg.rho, -seg.y))
    for piece in pi.tempered.phi.pieces:
        elems.append((piece.rho, HalfInt(piece.a - 1)))
    return MultiSet(elems)


def is_good_parity_ldata(pi: LData) -> bool:
    """Literal parity test on Langlands data: the tempered part must be good
    parity for the group, and each segment Delta_rho[x,y] must have
    rho (x) S_(x-y+1) self-dual of the dual-group type."""
    target = pi.group.dual_parity
    for piece in pi.tempered.phi.pieces.support():
        if piece.twist != 0:
            return False
        parity = combine_parities(piece.rho.parity, block_parity(piece.a))
        if parity is not target:
            return False
    for seg in pi.segments:
        parity = combine_parities(seg.rho.parity, block_parity(seg.length))
        if parity is not target:
            return False
    return True


@dataclass(frozen=True)
class MultiplicityProfile:
    """The multiplicity profile m_(rho,x) of unramified-shaped Langlands data:
    for x > 0 the number of segments Delta_rho[-x,-x], for x = 0 the number of
    tempered pieces rho (x) S_1.  Zero off the stored support."""

    counts: tuple[tuple[tuple[str, HalfInt], int], ...]  # ((rho label, x), m), sorted

    @classmethod
    def from_counts(cls, counts: dict[tuple[RhoSymbol, HalfInt], int]) -> "MultiplicityProfile":
        stored = tuple(
            sorted(
                ((rho.label, x), m)
                for (rho, x), m in counts.items()
                if m > 0
            )
        )
        for (_, x), _ in stored:
            if x < 0:
                raise ValidationError("profile support lives at x >= 0")
        return cls(stored)

    def m(self, rho: RhoSymbol, x: HalfInt) -> int:
        x = HalfInt.coerce(x)
        if x < 0:
            return 0
        for key, count in self.counts:
            if key == (rho.label, x):
                return count
        return 0

    def labels(self) -> list[str]:
        return sorted({label for (label, _), _ in self.counts})

    def support(self, label: str) -> list[HalfInt]:
        return sorted(x for (lab, x), _ in self.counts if lab == label)

    def monotonicity_violation(self) -> Optional[tuple[str, HalfInt]]:
        """First (label, x) with m_(rho,x+1) > m_(rho,x), scanning x upward.

        The integer and half-integer families of one label are independent
        chains; each is scanned from its smallest admissible x.
        """
        by_family: dict[tuple[str, int], dict[HalfInt, int]] = {}
        for (label, x), m in self.counts:
            by_family.setdefault((label, x.twice % 2), {})[x] = m
        for (label, parity), values in sorted(by_family.items()):
            top = max(values)
            x = HalfInt(parity)  # 0 for the integer family, 1/2 otherwise
            while x <= top:
                if values.get(x + 1, 0) > values.get(x, 0):
                    return (label, x)
                x = x + 1
        return None
