"""Exact arithmetic and symbolic base layer.

Everything downstream is finite formal combinatorics built from three
ingredients: a supercuspidal symbol ``rho`` (an opaque label plus the data the
parity formulas consume), half-integer exponents, and multi-sets.  This module
keeps all of it exact and immutable; there are no floats anywhere in the
package.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Generic, Iterable, Iterator, Mapping, TypeVar, Union


class ArthurKitError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ArthurKitError):
    """An object violates one of its structural invariants."""


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An element of (1/2)Z, stored as twice its value to keep arithmetic exact.

    ``HalfInt(3)`` is 3/2; use :meth:`of` for whole values.  Mixed arithmetic
    with ``int`` is supported and always exact.
    """

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int):
            raise TypeError(f"HalfInt.twice must be int, got {self.twice!r}")

    @staticmethod
    def of(value: int) -> "HalfInt":
        return HalfInt(2 * value)

    @staticmethod
    def coerce(value: Union["HalfInt", int]) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def floor(self) -> int:
        return self.twice // 2

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other: Union["HalfInt", int]) -> "HalfInt":
        if isinstance(other, int):
            return HalfInt(self.twice + 2 * other)
        if isinstance(other, HalfInt):
            return HalfInt(self.twice + other.twice)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Union["HalfInt", int]) -> "HalfInt":
        if isinstance(other, int):
            return HalfInt(self.twice - 2 * other)
        if isinstance(other, HalfInt):
            return HalfInt(self.twice - other.twice)
        return NotImplemented

    def __rsub__(self, other: Union["HalfInt", int]) -> "HalfInt":
        if isinstance(other, int):
            return HalfInt(2 * other - self.twice)
        return NotImplemented

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __mul__(self, other: int) -> "HalfInt":
        if isinstance(other, int):
            return HalfInt(self.twice * other)
        return NotImplemented

    __rmul__ = __mul__

    def _cmp_key(self, other: object):
        if isinstance(other, int):
            return 2 * other
        if isinstance(other, HalfInt):
            return other.twice
        return None

    def __eq__(self, other: object) -> bool:
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return self.twice == key

    def __lt__(self, other: object) -> bool:
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return self.twice < key

    def __hash__(self) -> int:
        # Hash-compatible with int and Fraction for mixed-key containers.
        return hash(self.to_fraction())

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.twice})"

    @classmethod
    def parse(cls, token: str) -> "HalfInt":
        """Parse ``"p/2"`` or a plain integer literal."""
        token = token.strip()
        if "/" in token:
            num, _, den = token.partition("/")
            if den.strip() != "2":
                raise ValueError(f"half-integer denominator must be 2: {token!r}")
            return cls(int(num))
        return cls.of(int(token))


ZERO = HalfInt(0)
HALF = HalfInt(1)


T = TypeVar("T")

MULTISET_KINDS = ("sum", "union", "diff", "intersect", "symdiff")


class MultiSet(Generic[T]):
    """An immutable multi-set: a map from elements to positive multiplicities."""

    __slots__ = ("_entries", "_total", "_hash")

    def __init__(self, items: Union[Iterable[T], Mapping[T, int]] = ()):
        entries: dict[T, int] = {}
        if isinstance(items, Mapping):
            for elem, mult in items.items():
                if mult < 0:
                    raise ValueError(f"negative multiplicity for {elem!r}")
                if mult > 0:
                    entries[elem] = entries.get(elem, 0) + mult
        else:
            for elem in items:
                entries[elem] = entries.get(elem, 0) + 1
        self._entries = entries
        self._total = sum(entries.values())
        self._hash: int | None = None

    def multiplicity(self, elem: T) -> int:
        return self._entries.get(elem, 0)

    @property
    def total(self) -> int:
        return self._total

    def support(self) -> list[T]:
        return list(self._entries)

    def items(self) -> Iterator[tuple[T, int]]:
        return iter(self._entries.items())

    def __contains__(self, elem: object) -> bool:
        return elem in self._entries

    def __iter__(self) -> Iterator[T]:
        for elem, mult in self._entries.items():
            for _ in range(mult):
                yield elem

    def __len__(self) -> int:
        return self._total

    def __bool__(self) -> bool:
        return self._total > 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiSet):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{elem!r}: {mult}" for elem, mult in self._entries.items())
        return f"MultiSet({{{inner}}})"

    def _merge(self, other: "MultiSet[T]", rule) -> "MultiSet[T]":
        keys = set(self._entries) | set(other._entries)
        out = {k: rule(self.multiplicity(k), other.multiplicity(k)) for k in keys}
        return MultiSet({k: m for k, m in out.items() if m > 0})

    def __add__(self, other: "MultiSet[T]") -> "MultiSet[T]":
        return self._merge(other, lambda a, b: a + b)

    def __or__(self, other: "MultiSet[T]") -> "MultiSet[T]":
        return self._merge(other, max)

    def __sub__(self, other: "MultiSet[T]") -> "MultiSet[T]":
        return self._merge(other, lambda a, b: max(a - b, 0))

    def __and__(self, other: "MultiSet[T]") -> "MultiSet[T]":
        return self._merge(other, min)

    def __xor__(self, other: "MultiSet[T]") -> "MultiSet[T]":
        return (self | other) - (self & other)


def multiset_combine(kind: str, x: MultiSet[T], y: MultiSet[T]) -> MultiSet[T]:
    """Combine two multi-sets; ``kind`` is one of ``MULTISET_KINDS``.

    Per-element multiplicities: sum adds, union takes max, diff subtracts
    clamped at zero, intersect takes min, and symdiff is union minus intersect.
    """
    if kind == "sum":
        return x + y
    if kind == "union":
        return x | y
    if kind == "diff":
        return x - y
    if kind == "intersect":
        return x & y
    if kind == "symdiff":
        return x ^ y
    raise ValueError(f"unknown multi-set operation {kind!r}")


class Parity(Enum):
    """Self-duality type of a symbol or block: orthogonal, symplectic, or neither."""

    ORTHOGONAL = "O"
    SYMPLECTIC = "S"
    NON_SELF_DUAL = "N"

    @property
    def code(self) -> str:
        return self.value

    @classmethod
    def from_code(cls, code: str) -> "Parity":
        for parity in cls:
            if parity.value == code:
                return parity
        raise ValueError(f"unknown parity code {code!r}")


def block_parity(k: int) -> Parity:
    """Parity of the k-dimensional irreducible SL(2)-representation."""
    return Parity.ORTHOGONAL if k % 2 == 1 else Parity.SYMPLECTIC


def combine_parities(p: Parity, q: Parity) -> Parity:
    """Parity of a tensor product of two self-dual representations."""
    if Parity.NON_SELF_DUAL in (p, q):
        return Parity.NON_SELF_DUAL
    if p == q:
        return Parity.ORTHOGONAL
    return Parity.SYMPLECTIC


@dataclass(frozen=True, eq=False)
class RhoSymbol:
    """A symbolic unitary supercuspidal of GL(dim).

    Only the label, the dimension, and the self-duality type enter any
    formula; equality and hashing are by label.  Non-self-dual symbols come in
    linked pairs so the contragredient is total.
    """

    label: str
    dim: int = 1
    parity: Parity = Parity.ORTHOGONAL
    dual_label: str = ""
    unramified_character: bool = False

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValidationError(f"rho {self.label!r}: dim must be positive")
        dual = self.dual_label or self.label
        object.__setattr__(self, "dual_label", dual)
        if self.parity is Parity.NON_SELF_DUAL:
            if dual == self.label:
                raise ValidationError(
                    f"rho {self.label!r}: a non-self-dual symbol needs a distinct dual label"
                )
        elif dual != self.label:
            raise ValidationError(
                f"rho {self.label!r}: self-dual symbols are their own dual"
            )
        if self.unramified_character and self.dim != 1:
            raise ValidationError(
                f"rho {self.label!r}: an unramified character has dim 1"
            )

    @property
    def is_self_dual(self) -> bool:
        return self.parity is not Parity.NON_SELF_DUAL

    def contragredient(self) -> "RhoSymbol":
        if self.is_self_dual:
            return self
        return RhoSymbol(
            label=self.dual_label,
            dim=self.dim,
            parity=self.parity,
            dual_label=self.label,
            unramified_character=self.unramified_character,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RhoSymbol):
            return NotImplemented
        return self.label == other.label

    def __hash__(self) -> int:
        return hash(self.label)

    def __repr__(self) -> str:
        return f"RhoSymbol({self.label!r}, dim={self.dim}, parity={self.parity.code})"


#: The trivial character of the Weil group, the rho of Steinberg parameters.
TRIVIAL_RHO = RhoSymbol("1", dim=1, parity=Parity.ORTHOGONAL, unramified_character=True)


@dataclass(frozen=True)
class Segment:
    """A segment [A,B]_rho = {rho@A, rho@(A-1), ..., rho@B} of length A-B+1 >= 1."""

    rho: RhoSymbol
    A: HalfInt
    B: HalfInt

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", HalfInt.coerce(self.A))
        object.__setattr__(self, "B", HalfInt.coerce(self.B))
        diff = self.A - self.B
        if not diff.is_integer or diff.twice < 0:
            raise ValidationError(
                f"segment [{self.A},{self.B}]: A-B must be a non-negative integer"
            )

    @property
    def length(self) -> int:
        return int(self.A - self.B) + 1

    def exponents(self) -> list[HalfInt]:
        """Exponents A, A-1, ..., B in descending order."""
        return [self.A - k for k in range(self.length)]

    def __str__(self) -> str:
        return f"[{self.A},{self.B}]_{self.rho.label}"


def segment_elements(seg: Segment) -> MultiSet[tuple[RhoSymbol, HalfInt]]:
    """The multi-set {rho@A, rho@(A-1), ..., rho@B} of a segment."""
    return MultiSet((seg.rho, x) for x in seg.exponents())


def sign_power(exponent: int) -> int:
    """(-1)**exponent, safe for negative exponents."""
    return 1 if exponent % 2 == 0 else -1


def parse_fraction(token: str) -> Fraction:
    """Parse an exact rational written as ``p`` or ``p/q``."""
    return Fraction(token.strip())


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
