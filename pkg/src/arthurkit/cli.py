"""Command-line front end.

Workspaces flow through stdin/stdout so subcommands compose in pipes:
``arthurkit steinberg --group Sp --n 2 | arthurkit singleton``.  Exit codes:
0 success, 1 input error, 2 negative verdict under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .arthur_algo import (
    ArthurVia,
    Candidate,
    NotArthurType,
    TemperedOracle,
    UnramifiedOracle,
    UnsupportedInputError,
    arthur_type_check,
)
from .classify import (
    UnramifiedRejection,
    classify_unramified,
    has_generic_member,
    is_generic_member,
    tempered_packet,
    tempered_singleton,
    unramified_member,
    unramified_parameter_set,
)
from .core import ArthurKitError, ValidationError
from .ems import (
    dual,
    l_class,
    order_check,
    parameter_of,
    pi_of_L,
    satisfies_L,
    sign_condition,
)
from .ldata import TemperedData, make_tempered
from .oracle import census_cap, enumerate_ems, enumerate_good_parity, standard_rhos
from .params import (
    Family,
    GroupTag,
    characters_of,
    decompose,
    dual_parameter,
    is_good_parity,
    l_parameter_of,
    predicates,
    steinberg_parameter,
    validate,
)
from .textio import (
    Workspace,
    dump_json,
    ems_json,
    ems_line,
    ldata_json,
    ldata_line,
    parameter_json,
    parse,
    serialize_workspace,
    summand_line,
    workspace_for,
    workspace_json,
)

NEGATIVE_VERDICT = 2


class _Reporter:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.negative = False

    def say(self, text: str) -> None:
        self.lines.append(text)

    def flag_negative(self) -> None:
        self.negative = True


def _read_workspace(args: argparse.Namespace) -> Workspace:
    if getattr(args, "input", None):
        with open(args.input, "r", encoding="utf-8") as handle:
            return parse(handle.read())
    return parse(sys.stdin.read())


def _emit_workspace(ws: Workspace, args: argparse.Namespace, out: _Reporter) -> None:
    if args.json:
        out.say(dump_json(workspace_json(ws)).rstrip("\n"))
    else:
        out.say(serialize_workspace(ws).rstrip("\n"))


def _tempered_of_workspace(ws: Workspace) -> list[TemperedData]:
    """Tempered pairs named by the workspace: the tempered parts of ldata
    statements without segments, else the packet members of a tempered
    parameter."""
    data = [pi.tempered for pi in ws.ldata_list() if not pi.segments]
    if data:
        return data
    psi = ws.parameter()
    if not predicates(psi).is_tempered:
        raise ValidationError("singleton needs a tempered parameter or segmentless ldata")
    return tempered_packet(l_parameter_of(psi))


def cmd_validate(ws: Workspace, args, out: _Reporter) -> None:
    report = validate(ws.parameter())
    if report is None:
        out.say("ok")
    else:
        out.say(f"violation: {report}")
        out.flag_negative()


def cmd_decompose(ws: Workspace, args, out: _Reporter) -> None:
    psi = ws.parameter()
    parts = decompose(psi)
    out.say("nu_pos: " + (" + ".join(str(s) for s in parts.nu_pos) or "0"))
    out.say("np: " + (" + ".join(str(s) for s in parts.np) or "0"))
    out.say(f"gp: {parts.gp}")


def cmd_lparam(ws: Workspace, args, out: _Reporter) -> None:
    out.say(f"lparam: {l_parameter_of(ws.parameter())}")


def cmd_dual_param(ws: Workspace, args, out: _Reporter) -> None:
    _emit_workspace(
        workspace_for(ws.group, [dual_parameter(ws.parameter())]), args, out
    )


def cmd_characters(ws: Workspace, args, out: _Reporter) -> None:
    table = characters_of(ws.parameter())
    out.say(f"characters: {len(table)}")
    for character in table.characters:
        out.say("  " + str(character))


def cmd_ems_check(ws: Workspace, args, out: _Reporter) -> None:
    for e in ws.ems_list():
        checks = [
            f"order-P: {order_check(e, 'P')}",
            f"order-Pprime: {order_check(e, 'Pprime')}",
            f"sign-condition: {sign_condition(e)}",
            f"normal-form: {satisfies_L(e)}",
        ]
        try:
            psi = parameter_of(e)
            checks.append(f"parameter: {psi}")
        except ValidationError as exc:
            checks.append(f"parameter: invalid ({exc})")
            out.flag_negative()
        out.say("; ".join(checks))


def cmd_ems_pi(ws: Workspace, args, out: _Reporter) -> None:
    objects = [pi_of_L(e) for e in ws.ems_list()]
    _emit_workspace(workspace_for(ws.group, objects), args, out)


def cmd_ems_dual(ws: Workspace, args, out: _Reporter) -> None:
    objects = [dual(e) for e in ws.ems_list()]
    _emit_workspace(workspace_for(ws.group, objects), args, out)


def cmd_l_class(ws: Workspace, args, out: _Reporter) -> None:
    members = l_class(ws.parameter())
    out.say(f"l-class: {len(members)}")
    for e in members:
        out.say(ems_line(e))


def cmd_tempered_packet(ws: Workspace, args, out: _Reporter) -> None:
    psi = ws.parameter()
    if not predicates(psi).is_tempered:
        raise ValidationError("tempered-packet needs a tempered parameter")
    members = tempered_packet(l_parameter_of(psi))
    out.say(f"members: {len(members)}")
    for member in members:
        tag = " (generic)" if is_generic_member(member) else ""
        out.say(f"  {member}{tag}")


def cmd_singleton(ws: Workspace, args, out: _Reporter) -> None:
    for t in _tempered_of_workspace(ws):
        verdict = tempered_singleton(t)
        out.say(f"singleton: {'true' if verdict else 'false'}")
        if not verdict:
            out.flag_negative()


def cmd_shahidi(ws: Workspace, args, out: _Reporter) -> None:
    verdict = has_generic_member(ws.parameter())
    out.say(f"generic-member: {'true' if verdict else 'false'}")
    if not verdict:
        out.flag_negative()


def cmd_classify_unramified(ws: Workspace, args, out: _Reporter) -> None:
    for pi in ws.ldata_list():
        result = classify_unramified(pi)
        if isinstance(result, UnramifiedRejection):
            out.say(str(result))
            out.flag_negative()
        else:
            out.say(ems_line(result))
            out.say(f"parameter: {parameter_of(result)}")


def cmd_unramified_member(ws: Workspace, args, out: _Reporter) -> None:
    member = unramified_member(ws.parameter())
    if member is None:
        out.say("none")
        out.flag_negative()
    else:
        _emit_workspace(workspace_for(ws.group, [member]), args, out)


def cmd_arthur_type(ws: Workspace, args, out: _Reporter) -> None:
    oracle = TemperedOracle() if args.oracle == "tempered" else UnramifiedOracle()
    for pi in ws.ldata_list():
        verdict = arthur_type_check(pi, oracle)
        out.say(str(verdict))
        if isinstance(verdict, NotArthurType):
            out.flag_negative()


def cmd_steinberg(args, out: _Reporter) -> None:
    group = GroupTag(Family.from_token(args.group), args.n)
    psi = steinberg_parameter(group)
    ws = workspace_for(group, [psi])
    _emit_workspace(ws, args, out)


def cmd_enumerate(args, out: _Reporter) -> None:
    group = GroupTag(Family.from_token(args.group), args.n)
    cap = census_cap(args.max_n)
    if group.N > cap:
        raise ValidationError(
            f"census capped at N <= {cap} (ARTHURKIT_MAX_N); requested N = {group.N}"
        )
    rhos = standard_rhos()[: args.rho_count]
    for psi in enumerate_good_parity(group, rhos, max_rows=args.max_rows):
        if args.kind == "param":
            out.say(json.dumps(parameter_json(psi), sort_keys=True))
        else:
            for e in enumerate_ems(psi):
                out.say(json.dumps(ems_json(e), sort_keys=True))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arthurkit",
        description="Symbolic combinatorics of local Arthur packets for Sp/SO(odd).",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    parser.add_argument("--strict", action="store_true", help="exit 2 on negative verdicts")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in _WORKSPACE_COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="read the workspace from a file instead of stdin")
        if name == "arthur-type":
            p.add_argument("--oracle", choices=("tempered", "unramified"), required=True)

    p = sub.add_parser("steinberg")
    p.add_argument("--group", choices=("Sp", "SO"), required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("enumerate")
    p.add_argument("--group", choices=("Sp", "SO"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-n", type=int, default=None, help="override the census N cap")
    p.add_argument("--max-rows", type=int, default=12)
    p.add_argument("--rho-count", type=int, default=1, help="how many census rho symbols")
    p.add_argument("--kind", choices=("param", "ems"), default="param")

    return parser


_WORKSPACE_COMMANDS = {
    "validate": cmd_validate,
    "decompose": cmd_decompose,
    "lparam": cmd_lparam,
    "dual-param": cmd_dual_param,
    "characters": cmd_characters,
    "ems-check": cmd_ems_check,
    "ems-pi": cmd_ems_pi,
    "ems-dual": cmd_ems_dual,
    "l-class": cmd_l_class,
    "tempered-packet": cmd_tempered_packet,
    "singleton": cmd_singleton,
    "shahidi": cmd_shahidi,
    "classify-unramified": cmd_classify_unramified,
    "unramified-member": cmd_unramified_member,
    "arthur-type": cmd_arthur_type,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Reporter()
    try:
        if args.command == "steinberg":
            cmd_steinberg(args, out)
        elif args.command == "enumerate":
            cmd_enumerate(args, out)
        else:
            ws = _read_workspace(args)
            _WORKSPACE_COMMANDS[args.command](ws, args, out)
    except ArthurKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for line in out.lines:
        print(line)
    if args.strict and out.negative:
        return NEGATIVE_VERDICT
    return 0


if __name__ == "__main__":
    sys.exit(main())
