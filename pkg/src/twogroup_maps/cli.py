"""Command-line interface.

Exit codes: 0 when everything requested passed, 1 on a verification
mismatch, 2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Sequence

from . import reference
from .automorphisms import aut_order, brute_force_aut, explicit_aut
from .catalog import MAX_ELL, Family, GroupInstance, feature_flags
from .charfree import is_squarefree, square_divisor_scan
from .engine import format_element
from .errors import GroupError
from .maps import MapType, classify, record_row
from .triples import Kind, enumerate_tuples, match_representatives, orbit_partition
from .verify import groups_for, run_suite

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def parse_ell_range(text: str) -> range:
    """``"3"`` or ``"2..5"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if lo < 1 or hi < lo or hi > MAX_ELL:
        raise argparse.ArgumentTypeError(f"ell range must satisfy 1 <= A <= B <= {MAX_ELL}")
    return range(lo, hi + 1)


def _family(text: str) -> Family:
    for f in Family:
        if text.lower() == f.value.lower():
            return f
    raise argparse.ArgumentTypeError(f"unknown family {text!r}; choose from {', '.join(f.value for f in Family)}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", type=_family, help="group family, e.g. Dihedral")
    common.add_argument("--ell", type=parse_ell_range, help="ell value or inclusive range A..B")
    common.add_argument("--all", action="store_true", help="every family")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--oracle", action="store_true", help="enable brute-force cross-checks")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    parser = argparse.ArgumentParser(prog="twogroup-maps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("catalog", parents=[common], help="list catalog groups")
    sub.add_parser("aut", parents=[common], help="automorphism group generators and order")
    p = sub.add_parser("triples", parents=[common], help="enumerate tuples of one kind")
    p.add_argument("--kind", type=Kind.parse, default=Kind.REVERSING)
    p = sub.add_parser("orbits", parents=[common], help="orbit partition and representative matching")
    p.add_argument("--kind", type=Kind.parse, default=Kind.REVERSING)
    p = sub.add_parser("maps", parents=[common], help="map records with chi and V/E/F")
    p.add_argument("--type", type=MapType.parse, dest="map_type")
    p.add_argument("--surviving", action="store_true", help="only rows with 4 not dividing chi")
    sub.add_parser("verify", parents=[common], help="run the verification suite")
    p = sub.add_parser("squarefree", parents=[common], help="square divisors of 2^d - 1")
    p.add_argument("--d", type=int, action="append", help="exponent d (repeatable)")
    p.add_argument("--x-max", type=int, default=1000)
    p.add_argument("--n", type=int, action="append", help="test an integer for square-freeness")
    return parser


def _groups(args) -> list[GroupInstance]:
    if args.all:
        families = list(Family)
    elif args.family is not None:
        families = [args.family]
    else:
        raise UsageError("give --family or --all")
    ells = args.ell if args.ell is not None else range(1, 5)
    if args.oracle and max(ells) > 6:
        raise UsageError("--oracle needs --ell within 1..6")
    groups = groups_for(families, ells)
    if not groups:
        raise UsageError(f"no valid group for ell in {ells.start}..{ells.stop - 1}")
    return groups


# -- commands -------------------------------------------------------------


def cmd_catalog(args) -> tuple[list[dict], bool]:
    rows = []
    for g in _groups(args):
        flags = feature_flags(g) if g.ell <= 6 else reference.expected_flags(g.descriptor)
        rows.append(
            {
                "family": g.family.value,
                "ell": g.descriptor.ell,
                "group": g.label,
                "order": g.order,
                "aut_order": aut_order(g),
                "aut_structure": reference.aut_structure(g.descriptor),
                "reversing": flags.has_reversing,
                "regular": flags.has_regular,
                "rotary": flags.has_rotary,
            }
        )
    return rows, True


def cmd_aut(args) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for g in _groups(args):
        A = explicit_aut(g)
        row = {
            "family": g.family.value,
            "ell": g.descriptor.ell,
            "group": g.label,
            "order": A.order,
            "generators": [
                f"{f.name or 'g'}: " + ",".join(format_element(g, x) for x in f.images) for f in A.generators
            ],
        }
        if args.oracle:
            bf = brute_force_aut(g)
            same = bf.elements == A.materialize().elements
            row["oracle_order"] = bf.order
            row["oracle_agrees"] = same
            ok &= same
        rows.append(row)
    return rows, ok


def cmd_triples(args) -> tuple[list[dict], bool]:
    rows = []
    for g in _groups(args):
        for t in enumerate_tuples(g, args.kind):
            rows.append({"group": g.label, "kind": args.kind.value, "tuple": list(t.words(g))})
    return rows, True


def cmd_orbits(args) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for g in _groups(args):
        p = orbit_partition(g, enumerate_tuples(g, args.kind))
        report = match_representatives(g, args.kind, p)
        ok &= report.ok
        for c in p.classes:
            rows.append(
                {
                    "group": g.label,
                    "kind": args.kind.value,
                    "representative": list(c.representative.words(g)),
                    "size": c.size,
                }
            )
        rows.append({"group": g.label, "kind": args.kind.value, "representative": [], "size": 0, "report": report.summary()})
    return rows, ok


def cmd_maps(args) -> tuple[list[dict], bool]:
    rows = []
    for g in _groups(args):
        for r in classify(g):
            if args.map_type is not None and r.map_type is not args.map_type:
                continue
            if args.surviving and not r.passes_filter:
                continue
            rows.append(record_row(g, r))
    return rows, True


def cmd_verify(args) -> tuple[list[dict], bool]:
    rows, ok = [], True
    started = time.perf_counter()
    for res in run_suite(_groups(args), args.oracle, args.seed, include_global=args.all):
        rows.append(res.as_dict())
        ok &= res.passed
    print(f"verified {len(rows)} checks in {time.perf_counter() - started:.1f}s", file=sys.stderr)
    return rows, ok


def cmd_squarefree(args) -> tuple[list[dict], bool]:
    if not args.d and not args.n:
        raise UsageError("give --d or --n")
    rows = []
    for d in args.d or []:
        w = square_divisor_scan(d, args.x_max)
        rows.append({"d": d, "x": w.x})
    for n in args.n or []:
        rows.append({"n": n, "squarefree": is_squarefree(n)})
    return rows, True


COMMANDS = {
    "catalog": cmd_catalog,
    "aut": cmd_aut,
    "triples": cmd_triples,
    "orbits": cmd_orbits,
    "maps": cmd_maps,
    "verify": cmd_verify,
    "squarefree": cmd_squarefree,
}


# -- output ---------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, list):
        return "(" + ",".join(str(x) for x in v) + ")" if v and not any(" " in str(x) for x in v) else "; ".join(map(str, v))
    if v is None:
        return "-"
    return str(v)


def render(command: str, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, "command": command, "results": rows}, indent=2) + "\n"
    if command == "verify" and fmt == "table":
        lines = []
        for r in rows:
            mark = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{mark}  {r['check']:<26} {r['group']:<14} {r['detail']}")
            lines.extend(f"      {d}" for d in r["diff"])
        return "\n".join(lines) + "\n"
    keys: list[str] = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([_cell(r.get(k)) for k in keys])
        return buf.getvalue()
    if not rows:
        return "(no rows)\n"
    table = [keys] + [[_cell(r.get(k)) for k in keys] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(keys))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, ok = COMMANDS[args.command](args)
    except (UsageError, GroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(args.command, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
