"""Command line interface: analyze, construct, verify, isoclinic, zclasses."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .catalog import BUILTIN, load_corpus, load_group_file, read_manifest, write_grp
from .centralizers import profile
from .classify import classify
from .constructors import from_spec
from .errors import CentraError, SearchBudgetExceeded
from .group import Group, abelian_invariants, quotient
from .harness import exit_status, parse_selection, render_records, render_table, run
from .isoclinism import DEFAULT_BUDGET, are_isoclinic
from .zclasses import z_partition

EXIT_OK = 0
EXIT_NOT_ISOCLINIC = 1
EXIT_LOAD = 3
EXIT_BUDGET = 4

log = logging.getLogger("centra")


def load_group(arg: str) -> Group:
    """A group file path, or a constructor spec when no such file exists."""
    path = Path(arg)
    if path.exists():
        return load_group_file(path)
    if ":" in arg or arg in ("quaternion8", "alternating4"):
        G = from_spec(arg)
        G.name = arg
        return G
    raise FileNotFoundError(f"no such group file: {arg}")


def _quotient_name(G: Group) -> str:
    Q = quotient(G, profile(G).center)
    if Q.order == 1:
        return "1"
    if Q.is_abelian:
        return " x ".join(f"C{n}" for n in abelian_invariants(Q))
    return f"non-abelian of order {Q.order}"


def analysis(G: Group) -> dict:
    """Flat key/value document: classification, centralizer and z-class summaries."""
    rep = classify(G)
    prof = profile(G)
    part = z_partition(G)
    doc: dict = {"name": G.name or ""}
    doc.update(rep.as_dict())
    doc["center_quotient"] = _quotient_name(G)
    doc["centralizer_indices"] = list(prof.indices)
    doc["centralizer_orders"] = [c.size for c in prof.proper_centralizers]
    doc["zx_quotient_orders"] = list(prof.zx_quotient_orders)
    doc["rank"] = prof.rank
    doc["zclass_sizes"] = [c.size for c in part.classes]
    return doc


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ",".join(map(str, value)) or "-"
    return str(value)


def render_document(doc: dict, fmt: str) -> str:
    if fmt == "records":
        return json.dumps(doc, sort_keys=False) + "\n"
    width = max(len(k) for k in doc)
    return "".join(f"{k.ljust(width)}  {_fmt(v)}\n" for k, v in doc.items())


def cmd_analyze(args) -> int:
    G = load_group(args.group)
    sys.stdout.write(render_document(analysis(G), args.format))
    return EXIT_OK


def cmd_construct(args) -> int:
    G = from_spec(args.spec)
    G.name = args.name or args.spec
    data = write_grp(G)
    if args.output in (None, "-"):
        sys.stdout.write(data.decode("utf-8"))
    else:
        Path(args.output).write_bytes(data)
        log.info("wrote %s (order %d)", args.output, G.order)
    return EXIT_OK


def cmd_verify(args) -> int:
    entries = read_manifest(args.corpus)
    corpus = load_corpus(entries)
    selection = parse_selection(args.theorem)
    outcomes = run(corpus, selection, budget=args.budget)
    text = render_records(outcomes) if args.format == "records" else render_table(outcomes)
    sys.stdout.write(text)
    return exit_status(outcomes)


def cmd_isoclinic(args) -> int:
    G, H = load_group(args.a), load_group(args.b)
    try:
        res = are_isoclinic(G, H, budget=args.budget)
    except SearchBudgetExceeded as exc:
        print(f"undecided: {exc}")
        return EXIT_BUDGET
    if not res:
        print(f"not isoclinic: {res.reason}")
        return EXIT_NOT_ISOCLINIC
    print("isoclinic")
    print("phi " + " ".join(f"{a}->{b}" for a, b in enumerate(res.phi)))
    print("theta " + " ".join(f"{a}->{b}" for a, b in res.theta))
    return EXIT_OK


def cmd_zclasses(args) -> int:
    G = load_group(args.group)
    part = z_partition(G)
    rows = []
    for i, c in enumerate(part.classes):
        rows.append(
            {
                "class": i,
                "size": c.size,
                "representative": c.representative,
                "normalizer_index": c.normalizer_index,
                "fprime_size": c.fprime_size,
                "members": list(c.members),
            }
        )
    if args.format == "records":
        for r in rows:
            sys.stdout.write(json.dumps(r) + "\n")
    else:
        print(f"{G.name or 'G'}: {part.zclass_count} z-classes")
        print("class  size  rep  [G:N(C(x))]  |F'x|  members")
        for r in rows:
            print(
                f"{r['class']:>5}  {r['size']:>4}  {r['representative']:>3}  "
                f"{r['normalizer_index']:>11}  {r['fprime_size']:>5}  {_fmt(r['members'])}"
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centra", description="Centralizers and z-classes of finite groups.")
    parser.add_argument("--version", action="version", version=f"centra {__version__}")
    parser.add_argument("--order-cap", type=int, help="largest group order to materialise (env CENTRA_ORDER_CAP)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classification report for one group")
    p.add_argument("group", help="GRP or PERMGRP file, or a constructor spec")
    p.add_argument("--format", choices=("records", "table"), default="table")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="write a constructed group as a GRP file")
    p.add_argument("spec")
    p.add_argument("-o", "--output", help="output path (stdout if omitted)")
    p.add_argument("--name", help="name recorded in the file (default: the spec)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run the theorem checks over a corpus")
    p.add_argument("--corpus", default=BUILTIN, help="manifest path or 'builtin'")
    p.add_argument("--theorem", help="comma separated ids or ranges, e.g. T1,T4-T6,MANIFEST")
    p.add_argument("--format", choices=("records", "table"), default="table")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="isoclinism search node budget")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("isoclinic", help="decide isoclinism of two groups")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_isoclinic)

    p = sub.add_parser("zclasses", help="list the z-classes of a group")
    p.add_argument("group")
    p.add_argument("--format", choices=("records", "table"), default="table")
    p.set_defaults(func=cmd_zclasses)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.order_cap is not None:
        os.environ["CENTRA_ORDER_CAP"] = str(args.order_cap)
    try:
        return args.func(args)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (CentraError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_LOAD


if __name__ == "__main__":
    sys.exit(main())
