"""The line-oriented workspace grammar and its canonical serializer.

A workspace is UTF-8 text: one ``group`` line, ``rho`` declarations, and then
object statements (``param`` summand lines, which aggregate into a single
parameter; ``ems`` row lines; ``ldata`` lines).  Half-integers are written
``p/2`` when proper and as plain integers otherwise; twists are exact
rationals after ``@``.  ``parse`` and ``serialize_workspace`` are mutually
inverse on every object type, and serialization is byte-stable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .core import (
    ArthurKitError,
    HalfInt,
    MultiSet,
    Parity,
    RhoSymbol,
    Segment,
    ValidationError,
    format_fraction,
)
from .ems import ExtendedMultiSegment, ExtendedSegment
from .ldata import (
    GLSegmentRep,
    LData,
    SegKind,
    TemperedData,
    make_ldata,
    make_tempered,
    steinberg_segment,
)
from .params import (
    ArthurParameter,
    Family,
    GroupTag,
    LParameter,
    LPiece,
    Summand,
)


class ParseError(ArthurKitError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


Statement = tuple[str, Union[ArthurParameter, ExtendedMultiSegment, LData]]


@dataclass
class Workspace:
    """A parsed input: the group, the declared rho symbols, and statements."""

    group: GroupTag
    rhos: dict[str, RhoSymbol] = field(default_factory=dict)
    statements: list[Statement] = field(default_factory=list)

    def parameter(self) -> ArthurParameter:
        params = [obj for kind, obj in self.statements if kind == "param"]
        if len(params) != 1:
            raise ValidationError(
                f"expected exactly one parameter in the workspace, found {len(params)}"
            )
        return params[0]

    def ems_list(self) -> list[ExtendedMultiSegment]:
        return [obj for kind, obj in self.statements if kind == "ems"]

    def ldata_list(self) -> list[LData]:
        return [obj for kind, obj in self.statements if kind == "ldata"]


_GROUP_RE = re.compile(r"^group\s+(Sp|SO)\s+(\d+)$")
_RHO_RE = re.compile(
    r"^rho\s+(\w+)\s+dim\s+(\d+)\s+parity\s+([OSN])"
    r"(?:\s+(unramified))?(?:\s+dual\s+(\w+))?$"
)
_PARAM_RE = re.compile(r"^param\s+(\w+)(?:\s+@(-?\d+(?:/\d+)?))?\s+S(\d+)\s+S(\d+)$")
_EMS_ROW_RE = re.compile(
    r"^(\w+)\s+\[(-?\d+(?:/2)?),(-?\d+(?:/2)?)\]\s+l=(-?\d+)\s+eta=([+-])$"
)
_LDATA_RE = re.compile(r"^ldata\s+L\(\s*(.*?)\s*;\s*phi\s*=\s*(.*?)\s*;\s*eps\s*=\s*(.*?)\s*\)$")
_SEG_RE = re.compile(r"^D\((\w+),(-?\d+(?:/2)?),(-?\d+(?:/2)?)\)$")
_PIECE_RE = re.compile(r"^(\w+)\*S(\d+)$")
_EPS_RE = re.compile(r"^(\w+)\*S(\d+):([+-])$")


def _lookup(rhos: dict[str, RhoSymbol], label: str, lineno: int, col: int) -> RhoSymbol:
    if label not in rhos:
        raise ParseError(f"undeclared rho label {label!r}", lineno, col)
    return rhos[label]


def parse(text: str) -> Workspace:
    """Parse workspace text; raises ParseError with line/column positions."""
    group: Optional[GroupTag] = None
    rhos: dict[str, RhoSymbol] = {}
    statements: list[Statement] = []
    param_summands: list[Summand] = []
    param_position: Optional[int] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword = line.split(None, 1)[0]
        try:
            if keyword == "group":
                match = _GROUP_RE.match(line)
                if not match:
                    raise ParseError("malformed group line", lineno)
                if group is not None:
                    raise ParseError("duplicate group line", lineno)
                group = GroupTag(Family.from_token(match.group(1)), int(match.group(2)))
            elif keyword == "rho":
                match = _RHO_RE.match(line)
                if not match:
                    raise ParseError("malformed rho declaration", lineno)
                label, dim, parity, unram, dual = match.groups()
                if label in rhos:
                    raise ParseError(f"duplicate rho label {label!r}", lineno)
                rhos[label] = RhoSymbol(
                    label=label,
                    dim=int(dim),
                    parity=Parity.from_code(parity),
                    dual_label=dual or "",
                    unramified_character=bool(unram),
                )
            elif keyword == "param":
                match = _PARAM_RE.match(line)
                if not match:
                    raise ParseError("malformed param line", lineno)
                label, twist, a, b = match.groups()
                rho = _lookup(rhos, label, lineno, line.index(label) + 1)
                x = Fraction(twist) if twist else Fraction(0)
                param_summands.append(Summand(rho, x, int(a), int(b)))
                if param_position is None:
                    param_position = len(statements)
                    statements.append(("param", None))  # placeholder
            elif keyword == "ems":
                body = line[len("ems") :].strip()
                rows: list[ExtendedSegment] = []
                for piece in body.split(";"):
                    piece = piece.strip()
                    match = _EMS_ROW_RE.match(piece)
                    if not match:
                        raise ParseError(f"malformed ems row {piece!r}", lineno)
                    label, A, B, l, eta = match.groups()
                    rho = _lookup(rhos, label, lineno, line.index(label) + 1)
                    seg = Segment(rho, HalfInt.parse(A), HalfInt.parse(B))
                    rows.append(ExtendedSegment(seg, int(l), 1 if eta == "+" else -1))
                if group is None:
                    raise ParseError("ems statement before the group line", lineno)
                statements.append(("ems", ExtendedMultiSegment.build(group, rows)))
            elif keyword == "ldata":
                if group is None:
                    raise ParseError("ldata statement before the group line", lineno)
                statements.append(("ldata", _parse_ldata(line, group, rhos, lineno)))
            else:
                raise ParseError(f"unknown statement {keyword!r}", lineno)
        except ParseError:
            raise
        except (ValidationError, ValueError) as exc:
            raise ParseError(str(exc), lineno) from exc

    if group is None:
        raise ParseError("missing group line", max(1, text.count("\n") + 1))
    for label, rho in rhos.items():
        if rho.dual_label not in rhos:
            raise ParseError(f"rho {label!r}: dual label {rho.dual_label!r} undeclared", 1)

    ws = Workspace(group, rhos, statements)
    if param_position is not None:
        psi = ArthurParameter(group, MultiSet(param_summands))
        ws.statements[param_position] = ("param", psi)
    return ws


def _parse_ldata(
    line: str, group: GroupTag, rhos: dict[str, RhoSymbol], lineno: int
) -> LData:
    match = _LDATA_RE.match(line)
    if not match:
        raise ParseError("malformed ldata line", lineno)
    seg_part, phi_part, eps_part = match.groups()

    segments: list[GLSegmentRep] = []
    for token in seg_part.split():
        seg_match = _SEG_RE.match(token)
        if not seg_match:
            raise ParseError(f"malformed segment {token!r}", lineno)
        label, x, y = seg_match.groups()
        rho = _lookup(rhos, label, lineno, line.index(token) + 1)
        segments.append(steinberg_segment(rho, HalfInt.parse(x), HalfInt.parse(y)))

    pieces: list[LPiece] = []
    if phi_part != "0":
        for token in phi_part.split("+"):
            token = token.strip()
            piece_match = _PIECE_RE.match(token)
            if not piece_match:
                raise ParseError(f"malformed tempered piece {token!r}", lineno)
            label, a = piece_match.groups()
            rho = _lookup(rhos, label, lineno, line.index(token) + 1)
            pieces.append(LPiece(rho, Fraction(0), int(a)))

    eps: dict[tuple[str, int], int] = {}
    if eps_part:
        for token in eps_part.split(","):
            token = token.strip()
            eps_match = _EPS_RE.match(token)
            if not eps_match:
                raise ParseError(f"malformed eps entry {token!r}", lineno)
            label, a, sign = eps_match.groups()
            _lookup(rhos, label, lineno, line.index(label) + 1)
            eps[(label, int(a))] = 1 if sign == "+" else -1
    else:
        eps = {}

    tempered = make_tempered(group.family, pieces, eps if eps else None)
    return make_ldata(group, segments, tempered)


# ---------------------------------------------------------------------------
# Serialization


def group_line(group: GroupTag) -> str:
    return f"group {group.family.value} {group.n}"


def rho_line(rho: RhoSymbol) -> str:
    parts = [f"rho {rho.label} dim {rho.dim} parity {rho.parity.code}"]
    if rho.unramified_character:
        parts.append("unramified")
    if rho.dual_label != rho.label:
        parts.append(f"dual {rho.dual_label}")
    return " ".join(parts)


def summand_line(s: Summand) -> str:
    twist = f" @{format_fraction(s.x)}" if s.x != 0 else ""
    return f"param {s.rho.label}{twist} S{s.a} S{s.b}"


def ems_line(e: ExtendedMultiSegment) -> str:
    rows = []
    for row in e.all_rows():
        eta = "+" if row.eta == 1 else "-"
        rows.append(f"{row.rho.label} [{row.A},{row.B}] l={row.l} eta={eta}")
    return "ems " + " ; ".join(rows)


def ldata_line(pi: LData) -> str:
    segs = " ".join(f"D({s.rho.label},{s.x},{s.y})" for s in pi.segments)
    pieces = pi.tempered.phi.sorted_pieces()
    phi = " + ".join(f"{p.rho.label}*S{p.a}" for p in pieces) or "0"
    eps = ", ".join(
        f"{label}*S{a}:{'+' if sign == 1 else '-'}"
        for (label, a), sign in pi.tempered.eps
    )
    segs_part = f"{segs} " if segs else ""
    return f"ldata L( {segs_part}; phi = {phi} ; eps = {eps} )"


def _collect_rhos(ws: Workspace) -> dict[str, RhoSymbol]:
    """Declared symbols plus any referenced by statements, dual-closed."""
    rhos = dict(ws.rhos)

    def note(rho: RhoSymbol) -> None:
        rhos.setdefault(rho.label, rho)
        rhos.setdefault(rho.dual_label, rho.contragredient())

    for kind, obj in ws.statements:
        if kind == "param":
            for s in obj.summands.support():
                note(s.rho)
        elif kind == "ems":
            for row in obj.all_rows():
                note(row.rho)
        elif kind == "ldata":
            for seg in obj.segments:
                note(seg.rho)
            for p in obj.tempered.phi.pieces.support():
                note(p.rho)
    return rhos


def serialize_workspace(ws: Workspace) -> str:
    lines = [group_line(ws.group)]
    rhos = _collect_rhos(ws)
    for label in sorted(rhos):
        lines.append(rho_line(rhos[label]))
    for kind, obj in ws.statements:
        if kind == "param":
            lines.extend(summand_line(s) for s in obj.sorted_summands())
        elif kind == "ems":
            lines.append(ems_line(obj))
        elif kind == "ldata":
            lines.append(ldata_line(obj))
    return "\n".join(lines) + "\n"


def workspace_for(
    group: GroupTag,
    objects: Iterable[Union[ArthurParameter, ExtendedMultiSegment, LData]],
) -> Workspace:
    """Wrap objects in a workspace (declarations are derived on output)."""
    statements: list[Statement] = []
    for obj in objects:
        if isinstance(obj, ArthurParameter):
            statements.append(("param", obj))
        elif isinstance(obj, ExtendedMultiSegment):
            statements.append(("ems", obj))
        elif isinstance(obj, LData):
            statements.append(("ldata", obj))
        else:
            raise TypeError(f"cannot place {type(obj).__name__} in a workspace")
    return Workspace(group, {}, statements)


# ---------------------------------------------------------------------------
# JSON mirror (output side)


def halfint_json(h: HalfInt) -> str:
    return str(h)


def summand_json(s: Summand) -> dict:
    return {
        "rho": s.rho.label,
        "x": format_fraction(s.x),
        "a": s.a,
        "b": s.b,
    }


def parameter_json(psi: ArthurParameter) -> dict:
    return {
        "type": "param",
        "summands": [summand_json(s) for s in psi.sorted_summands()],
    }


def ems_json(e: ExtendedMultiSegment) -> dict:
    return {
        "type": "ems",
        "rows": [
            {
                "rho": row.rho.label,
                "A": halfint_json(row.A),
                "B": halfint_json(row.B),
                "l": row.l,
                "eta": row.eta,
            }
            for row in e.all_rows()
        ],
    }


def ldata_json(pi: LData) -> dict:
    return {
        "type": "ldata",
        "segments": [
            {"rho": s.rho.label, "x": halfint_json(s.x), "y": halfint_json(s.y)}
            for s in pi.segments
        ],
        "phi": [
            {"rho": p.rho.label, "a": p.a}
            for p in pi.tempered.phi.sorted_pieces()
        ],
        "eps": [
            {"rho": label, "a": a, "sign": sign}
            for (label, a), sign in pi.tempered.eps
        ],
    }


def rho_json(rho: RhoSymbol) -> dict:
    return {
        "label": rho.label,
        "dim": rho.dim,
        "parity": rho.parity.code,
        "unramified": rho.unramified_character,
        "dual": rho.dual_label,
    }


def workspace_json(ws: Workspace) -> dict:
    rhos = _collect_rhos(ws)
    statements = []
    for kind, obj in ws.statements:
        if kind == "param":
            statements.append(parameter_json(obj))
        elif kind == "ems":
            statements.append(ems_json(obj))
        elif kind == "ldata":
            statements.append(ldata_json(obj))
    return {
        "group": {"family": ws.group.family.value, "n": ws.group.n},
        "rhos": [rho_json(rhos[label]) for label in sorted(rhos)],
        "statements": statements,
    }


def dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
