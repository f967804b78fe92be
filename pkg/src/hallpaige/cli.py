"""Command-line front end.

Exit codes: 0 success, 1 no complete mapping / verification false,
2 invalid input or unsupported request, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .analysis import hall_paige_verdict
from .errors import HallPaigeError, NotCentralInvolution
from .families import builtin
from .groups import Group, Subgroup, quotient, subgroup_generated
from .lifting import compose_normal, lift_dcst, lift_z2_center
from .mapping import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    CompleteMapping,
    NotFound,
    first_violation,
    from_csv,
    search,
    to_csv,
)

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input (exit 2)."""


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cm_text(cm: CompleteMapping, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"order": cm.group.order, "phi": list(cm.phi), "psi": list(cm.psi)}) + "\n"
    return to_csv(cm)


def _read_cm(path: str, G: Group) -> CompleteMapping:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return from_csv(text, G)


def _subgroup(G: Group, text: str) -> Subgroup:
    """Subgroup generated by comma-separated element ids."""
    try:
        ids = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"subgroup must be comma-separated element ids, got {text!r}") from None
    if any(not 0 <= g < G.order for g in ids):
        raise InputError(f"element ids must lie in 0..{G.order - 1}")
    return subgroup_generated(G, ids)


def _search_or_fail(G: Group, what: str, budget: int) -> CompleteMapping:
    res = search(G, budget)
    if isinstance(res, CompleteMapping):
        return res
    raise InputError(f"{what} has no complete mapping to lift from ({res})")


# ------------------------------------------------------------------ group

def cmd_group_info(args) -> int:
    G = builtin(args.spec)
    v = hall_paige_verdict(G)
    if args.format == "json":
        print(json.dumps({"order": G.order, "sylow2_order": v.sylow2_order,
                          "sylow2_cyclic": v.sylow2_cyclic, "good": v.good}))
    else:
        print(f"order {G.order}, {v}")
    return EXIT_OK


# --------------------------------------------------------------------- cm

def cmd_cm_search(args) -> int:
    G = builtin(args.spec)
    res = search(G, args.budget, use_obstruction=not args.no_obstruction)
    if isinstance(res, NotFound):
        print(f"no complete mapping: {res.proof} ({res.nodes} nodes)", file=sys.stderr)
        return EXIT_FALSE
    if isinstance(res, BudgetExhausted):
        print(f"budget exhausted after {res.nodes} nodes", file=sys.stderr)
        return EXIT_BUDGET
    _emit(_cm_text(res, args.format), args.out)
    return EXIT_OK


def cmd_cm_verify(args) -> int:
    G = builtin(args.spec)
    cm = _read_cm(args.csv, G)
    problem = first_violation(cm)
    if problem:
        print(f"invalid: {problem}")
        return EXIT_FALSE
    print("valid")
    return EXIT_OK


def cmd_cm_lift(args) -> int:
    G = builtin(args.spec)
    if args.kind == "z2":
        if args.central is None:
            raise InputError("lift z2 needs --central X")
        x = args.central
        if not 0 <= x < G.order:
            raise InputError(f"element id {x} outside 0..{G.order - 1}")
        if x == 0 or G.table[x][x] != 0 or any(G.table[x][g] != G.table[g][x] for g in range(G.order)):
            raise NotCentralInvolution(f"{x} is not a central involution")
        Q, _ = quotient(G, Subgroup.from_ids(G, [0, x], check=False))
        cm_Q = _read_cm(args.quotient_cm, Q) if args.quotient_cm else _search_or_fail(Q, "G/<x>", args.budget)
        cm = lift_z2_center(G, x, cm_Q)
    elif args.kind == "normal":
        if not args.subgroup:
            raise InputError("lift normal needs --subgroup ids")
        N = _subgroup(G, args.subgroup)
        Q, _ = quotient(G, N)
        local = N.local[0]
        cm_N = _read_cm(args.sub_cm, local) if args.sub_cm else _search_or_fail(local, "N", args.budget)
        cm_Q = _read_cm(args.quotient_cm, Q) if args.quotient_cm else _search_or_fail(Q, "G/N", args.budget)
        cm = compose_normal(G, N, cm_N, cm_Q)
    else:
        if not args.subgroup:
            raise InputError("lift dcst needs --subgroup ids")
        H = _subgroup(G, args.subgroup)
        local = H.local[0]
        cm_H = _read_cm(args.sub_cm, local) if args.sub_cm else _search_or_fail(local, "H", args.budget)
        cm = lift_dcst(G, H, cm_H)
    _emit(_cm_text(cm, args.format), args.out)
    return EXIT_OK


def cmd_cm_psl2(args) -> int:
    from .psl2 import build_cm_psl2

    trace: dict = {}
    cm = build_cm_psl2(args.q, trace)
    _emit(_cm_text(cm, args.format), args.out)
    text = json.dumps(trace, sort_keys=True)
    if args.trace:
        Path(args.trace).write_text(text + "\n")
    else:
        print(text, file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- coxeter

def _system(args):
    from .coxeter import coxeter_system, parse_type

    kind, rank, m = parse_type(args.type, args.rank)
    if m is not None:
        return coxeter_system("I", 2, m=m)
    return coxeter_system(kind, rank, labeling=args.labeling)


def cmd_coxeter_dcosets(args) -> int:
    from .coxeter import double_coset_reps, format_word
    from .coxeter.hecke import default_drop

    system = _system(args)
    r = args.drop if args.drop is not None else default_drop(system)
    dc = double_coset_reps(system, r)
    if args.format == "json":
        print(json.dumps({"system": system.name, "drop": r, "cosets": dc.n_cosets,
                          "reps": [format_word(w, args.sep) for w in dc.class_reps],
                          "class_sizes": [len(c) for c in dc.classes]}))
    else:
        for w in dc.class_reps:
            print(format_word(w, args.sep))
    return EXIT_OK


def cmd_coxeter_verify_p2(args) -> int:
    from .coxeter import verify_p2

    system = _system(args)
    report = verify_p2(system, args.drop, args.method)
    print(json.dumps(report.as_dict(), ensure_ascii=False))
    return EXIT_OK if report.passed else EXIT_FALSE


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hallpaige", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    top = p.add_subparsers(dest="area", required=True)

    grp = top.add_parser("group", help="group queries").add_subparsers(dest="cmd", required=True)
    info = grp.add_parser("info", help="order and Sylow-2 verdict")
    info.add_argument("spec")
    info.add_argument("--format", choices=("text", "json"), default="text")
    info.set_defaults(func=cmd_group_info)

    cm = top.add_parser("cm", help="complete mappings").add_subparsers(dest="cmd", required=True)

    def output_opts(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", help="write the mapping here instead of stdout")

    s = cm.add_parser("search", help="exact-cover search")
    s.add_argument("spec")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node cap")
    s.add_argument("--no-obstruction", action="store_true",
                   help="skip the abelianisation certificate; refute by enumeration only")
    output_opts(s)
    s.set_defaults(func=cmd_cm_search)

    v = cm.add_parser("verify", help="check a mapping CSV")
    v.add_argument("spec")
    v.add_argument("csv")
    v.set_defaults(func=cmd_cm_verify)

    lift = cm.add_parser("lift", help="lift from a subgroup or quotient")
    lift.add_argument("kind", choices=("z2", "normal", "dcst"))
    lift.add_argument("spec")
    lift.add_argument("--central", type=int, help="central involution id (z2)")
    lift.add_argument("--subgroup", help="comma-separated generator ids (normal, dcst)")
    lift.add_argument("--sub-cm", help="mapping CSV of the subgroup, in its local numbering")
    lift.add_argument("--quotient-cm", help="mapping CSV of the quotient")
    lift.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                      help="node cap when a missing input mapping is searched for")
    output_opts(lift)
    lift.set_defaults(func=cmd_cm_lift)

    ps = cm.add_parser("psl2", help="construct a mapping of PSL(2,q)")
    ps.add_argument("q", type=int)
    ps.add_argument("--trace", help="write the JSON trace here (default: stderr)")
    output_opts(ps)
    ps.set_defaults(func=cmd_cm_psl2)

    cx = top.add_parser("coxeter", help="Coxeter double cosets").add_subparsers(dest="cmd", required=True)

    def system_opts(sp):
        sp.add_argument("type", help="e.g. F4, E6, B3, I2(5)")
        sp.add_argument("rank", type=int)
        sp.add_argument("--drop", type=int, help="generator left out of the parabolic")
        sp.add_argument("--labeling", choices=("chain", "bourbaki"), default="chain",
                        help="E-type node numbering")

    d = cx.add_parser("dcosets", help="minimal double-coset representatives")
    system_opts(d)
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.add_argument("--sep", default=None, help="letter separator (default: none for ranks < 10)")
    d.set_defaults(func=cmd_coxeter_dcosets)

    vp = cx.add_parser("verify-p2", help="check D^2 ⊇ D for every double coset")
    system_opts(vp)
    vp.add_argument("--method", choices=("product", "form"), default=None)
    vp.set_defaults(func=cmd_coxeter_verify_p2)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HallPaigeError, InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
