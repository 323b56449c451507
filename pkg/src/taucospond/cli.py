"""Command line interface.

Exit codes: 0 success, 1 a consistency check failed, 2 refusal (budget,
incomplete inventory, bad input).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import FIXTURES, fixture_text
from .algebra import parse_algebra
from .config import current_budget, use_budget
from .correspondence import VerifyConfig, alpha3, emit_report, verify_correspondence
from .errors import AssertionFailure, TaucospondError
from .inventory import build_inventory
from .linalg import Field
from .semibrick import enumerate_semibricks
from .tautilt import SupportTauTiltingModule, _support, cogen_class, enumerate_support_tau_tilting, is_support_tau_tilting

EXIT_OK, EXIT_FAIL, EXIT_REFUSED = 0, 1, 2


def _load(args):
    spec = args.spec
    if os.path.exists(spec):
        text = Path(spec).read_text()
    elif spec in FIXTURES:
        text = fixture_text(spec)
    else:
        raise TaucospondError(f"no such file or bundled fixture: {spec}")
    field = None
    fld = getattr(args, "field", None)
    if fld is not None:
        field = Field.rational() if fld == "rational" else Field(int(fld))
    return parse_algebra(text, field=field)


def _inventory(args, alg):
    inv = build_inventory(alg, getattr(args, "dim_bound", None), assert_complete=getattr(args, "assert_complete", False))
    return inv


def cmd_validate(args) -> int:
    alg = _load(args)
    print(alg.canonical_text(), end="")
    print(f"# dimension {alg.dim}, nilpotency {alg.nilpotency}, digest {alg.digest}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    alg = _load(args)
    inv = _inventory(args, alg)
    what = args.what
    if what == "indec":
        for i, x in enumerate(inv.items):
            print(f"{i}\t{inv.names[i]}\t{list(x.dims)}")
        if not inv.complete:
            print("# inventory not certified complete", file=sys.stderr)
    elif what == "bricks":
        for i in inv.bricks():
            print(f"{i}\t{inv.names[i]}\t{list(inv.items[i].dims)}")
    elif what == "semibricks":
        for s in enumerate_semibricks(inv):
            print(s.label())
    elif what == "stmt":
        for m in enumerate_support_tau_tilting(inv):
            print(f"{m.label()}\t{cogen_class(m, inv).label()}")
    return EXIT_OK


def _parse_ids(inv, text: str) -> frozenset[int]:
    out = set()
    for tok in text.replace("+", ",").split(","):
        tok = tok.strip()
        if not tok or tok == "0":
            continue
        out.add(int(tok) if tok.isdigit() and tok not in inv.names else inv.id_of(tok))
    return frozenset(out)


def cmd_semibrick_of(args) -> int:
    alg = _load(args)
    inv = _inventory(args, alg)
    inv.require_complete()
    ids = _parse_ids(inv, args.module)
    if not is_support_tau_tilting(ids, inv):
        print(f"{inv.label(ids)} is not support tau^- tilting", file=sys.stderr)
        return EXIT_REFUSED
    m = SupportTauTiltingModule(ids, _support(inv, ids), inv)
    print(alpha3(m).label())
    return EXIT_OK


def _verify(args, full: bool):
    alg = _load(args)
    config = VerifyConfig(full=full, dim_bound=getattr(args, "dim_bound", None),
                          assert_complete=getattr(args, "assert_complete", False))
    return verify_correspondence(alg, config)


def cmd_verify(args) -> int:
    report = _verify(args, args.full)
    print(report.summary())
    if args.json:
        Path(args.json).write_text(emit_report(report, "json"))
    return report.exit_code()


def cmd_report(args) -> int:
    report = _verify(args, args.full)
    doc = emit_report(report, args.format)
    if args.output:
        Path(args.output).write_text(doc)
    else:
        sys.stdout.write(doc)
    return report.exit_code()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS, help="prime p (or 'rational') overriding the document")
    common.add_argument("--dim-bound", type=int, default=argparse.SUPPRESS, help="use brute force up to this total dimension")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="maximum states per exhaustive search")
    common.add_argument("--assert-complete", action="store_true", default=argparse.SUPPRESS,
                        help="trust that the brute-force bound reaches every indecomposable")

    p = argparse.ArgumentParser(prog="taucospond", parents=[common], description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse and certify an algebra document")
    s.add_argument("spec")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("enumerate", parents=[common], help="list indecomposables, bricks, semibricks or modules")
    s.add_argument("spec")
    s.add_argument("what", nargs="?", default="indec", choices=["indec", "bricks", "semibricks", "stmt"])
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("semibrick-of", parents=[common], help="semibrick of a support tau^- tilting module")
    s.add_argument("spec")
    s.add_argument("--module", required=True, help="comma separated item names or ids, e.g. S2,P1")
    s.set_defaults(func=cmd_semibrick_of)

    s = sub.add_parser("verify", parents=[common], help="check the bijection and its invariants")
    s.add_argument("spec")
    s.add_argument("--full", action="store_true", help="also run the slower structural checks")
    s.add_argument("--json", metavar="PATH", help="write the JSON report here as well")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", parents=[common], help="emit a machine readable report")
    s.add_argument("spec")
    s.add_argument("--format", choices=["json", "tsv"], default="json")
    s.add_argument("--full", action="store_true")
    s.add_argument("-o", "--output", metavar="PATH")
    s.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    budget = current_budget()
    if getattr(args, "budget", None) is not None:
        budget = budget.replace(max_states=args.budget)
    try:
        with use_budget(budget):
            return args.func(args)
    except AssertionFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (TaucospondError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
