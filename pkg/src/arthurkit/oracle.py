"""Brute-force enumeration and cross-checking oracles.

Desk-scale censuses drive the acceptance suite: every good-parity parameter
for a group and a handful of rho symbols, every candidate row system over a
parameter's support, and a dimension audit that is independent of the main
code paths.  Streams are deterministic: two runs yield identical order.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .core import HalfInt, MultiSet, Parity, RhoSymbol, Segment, ValidationError
from .ems import (
    ExtendedMultiSegment,
    ExtendedSegment,
    canonical_segments,
    sign_condition,
)
from .ldata import LData
from .params import ArthurParameter, GroupTag, Summand, is_good_parity

MAX_N_ENV = "ARTHURKIT_MAX_N"
DEFAULT_MAX_N = 9


def census_cap(requested: int | None = None) -> int:
    """The N cap for censuses: the explicit argument, else ARTHURKIT_MAX_N,
    else 9."""
    if requested is not None:
        return requested
    value = os.environ.get(MAX_N_ENV)
    return int(value) if value else DEFAULT_MAX_N


def good_parity_blocks(group: GroupTag, rho: RhoSymbol, max_dim: int) -> list[tuple[int, int]]:
    """All (a, b) with rho (x) S_a (x) S_b of the dual-group type and
    dimension at most max_dim."""
    out = []
    bound = max_dim // rho.dim
    for a in range(1, bound + 1):
        for b in range(1, bound // a + 1):
            s = Summand(rho, Fraction(0), a, b)
            if s.self_dual_parity() is group.dual_parity:
                out.append((a, b))
    out.sort()
    return out


def enumerate_good_parity(
    group: GroupTag, rhos: Iterable[RhoSymbol], max_rows: int = 12
) -> Iterator[ArthurParameter]:
    """All good-parity parameters of the group supported on the given rho
    symbols, as multi-sets of at most max_rows summands, in a fixed order."""
    rhos = sorted(set(rhos), key=lambda r: r.label)
    candidates: list[Summand] = []
    for rho in rhos:
        for a, b in good_parity_blocks(group, rho, group.N):
            candidates.append(Summand(rho, Fraction(0), a, b))

    def extend(start: int, remaining: int, chosen: list[Summand]) -> Iterator[ArthurParameter]:
        if remaining == 0:
            yield ArthurParameter(group, MultiSet(chosen))
            return
        if len(chosen) >= max_rows:
            return
        for idx in range(start, len(candidates)):
            s = candidates[idx]
            if s.dim <= remaining:
                chosen.append(s)
                yield from extend(idx, remaining - s.dim, chosen)
                chosen.pop()

    yield from extend(0, group.N, [])


def _row_choices(seg: Segment) -> list[tuple[int, int]]:
    """The (l, eta) values of one row, with eta pinned to +1 where it carries
    no information (2l = b)."""
    choices = []
    for l in range(seg.length // 2 + 1):
        if 2 * l < seg.length:
            choices.append((l, 1))
            choices.append((l, -1))
        else:
            choices.append((l, 1))
    return choices


def enumerate_ems(psi: ArthurParameter) -> Iterator[ExtendedMultiSegment]:
    """All candidate row systems over the canonical order of supp(psi) with
    0 <= l <= b/2 and the sign condition, one representative per weak
    equivalence class.

    Runs of identical segments receive multisets of (l, eta) choices rather
    than sequences, so permuting equal rows never yields duplicates.
    """
    per_rho = canonical_segments(psi)
    rho_order = sorted(per_rho, key=lambda r: r.label)

    runs: list[tuple[RhoSymbol, Segment, int]] = []
    for rho in rho_order:
        for seg, group_iter in itertools.groupby(per_rho[rho]):
            runs.append((rho, seg, len(list(group_iter))))

    per_run_choices = [
        list(itertools.combinations_with_replacement(_row_choices(seg), count))
        for _, seg, count in runs
    ]
    for assignment in itertools.product(*per_run_choices):
        rows: dict[RhoSymbol, list[ExtendedSegment]] = {rho: [] for rho in rho_order}
        for (rho, seg, _), choices in zip(runs, assignment):
            for l, eta in choices:
                rows[rho].append(ExtendedSegment(seg, l, eta))
        e = ExtendedMultiSegment.build(psi.group, rows)
        if sign_condition(e):
            yield e


def dimension_audit(obj: Union[ArthurParameter, ExtendedMultiSegment, LData]) -> int:
    """Total dual-group dimension, computed directly from the raw data.

    Parameters sum dim(rho)*a*b; row systems sum dim(rho)*(A+B+1)*(A-B+1);
    Langlands data count each segment twiceplus the tempered dimension.  This
    is the independent side of every dimension-conservation check.
    """
    if isinstance(obj, ArthurParameter):
        return sum(s.rho.dim * s.a * s.b for s in obj.summands)
    if isinstance(obj, ExtendedMultiSegment):
        total = 0
        for row in obj.all_rows():
            total += row.rho.dim * (int(row.A + row.B) + 1) * (int(row.A - row.B) + 1)
        return total
    if isinstance(obj, LData):
        total = 2 * sum(seg.rho.dim * seg.length for seg in obj.segments)
        total += sum(p.rho.dim * p.a * m for p, m in obj.tempered.phi.pieces.items())
        return total
    raise TypeError(f"cannot audit {type(obj).__name__}")


def standard_rhos() -> list[RhoSymbol]:
    """The census rho symbols: two unramified characters (orthogonal, dim 1)
    and a symplectic symbol of dimension 2 for the opposite-parity lanes."""
    return [
        RhoSymbol("1", dim=1, parity=Parity.ORTHOGONAL, unramified_character=True),
        RhoSymbol("u", dim=1, parity=Parity.ORTHOGONAL, unramified_character=True),
        RhoSymbol("c", dim=2, parity=Parity.SYMPLECTIC),
    ]
