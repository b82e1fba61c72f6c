"""Command line front end.

Every command writes a deterministic report to stdout (or ``--output``).
Exit status is 0 when all requested checks pass, 1 when a check fails and
2 on input or enumeration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import io as fmt
from .builders import EXAMPLES, SPACES, build_example
from .group import DEFAULT_MAX_ORDER, GroupTooLarge, NotAGroup
from .homs import DEFAULT_BUDGET, BudgetExceeded, ClassTable, enumerate_hom_values
from .presentation import PresentationError
from .tqft import FG_matrix, BoundaryMismatch, CospanError, bbFG, bFG, compose_all
from .verify import DEFAULT_SEED, SUITES, run_suite


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max candidate assignments per enumeration")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--parallel", type=int, default=1, help="worker processes for enumeration")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="largest group order accepted")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="homcob", description="Finite-group TQFT on cospans of groupoid presentations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homs", parents=[common], help="list homs from a presentation into a group")
    p.add_argument("presentation")
    p.add_argument("--group", required=True)
    p.add_argument("--count", action="store_true", help="only report the number of homs")

    p = sub.add_parser("classes", parents=[common], help="natural-isomorphism classes of homs")
    p.add_argument("presentation")
    p.add_argument("--group", required=True)

    p = sub.add_parser("tqft", parents=[common], help="evaluate the TQFT matrix of a cospan")
    p.add_argument("cospan")
    p.add_argument("--group", required=True)
    p.add_argument("--raw", action="store_true", help="also emit the raw counting matrix")
    p.add_argument("--normalized", action="store_true", help="also emit the normalised counting matrix")

    p = sub.add_parser("compose", parents=[common], help="compose cospans left to right")
    p.add_argument("cospans", nargs="+")
    p.add_argument("--group", help="also evaluate and check the product identity")

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--group", required=True)

    p = sub.add_parser("example", parents=[common], help="emit a built-in cospan as JSON")
    p.add_argument("name", choices=sorted(EXAMPLES))
    p.add_argument("--n", type=int, default=2, help="strand / loop count")
    p.add_argument("--i", type=int, default=1, help="generator index")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--kind", choices=("band", "permutation"), default="band")
    p.add_argument("--space", choices=sorted(SPACES), default="circle")
    return parser


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_homs(args) -> int:
    G = fmt.parse_group(args.group, args.max_order)
    P = fmt.load_presentation(args.presentation)
    homs = enumerate_hom_values(P, G, args.budget, args.parallel)
    if args.format == "csv":
        rows = [["count", len(homs)]] if args.count else [list(P.generator_ids)] + [list(v) for v in homs]
        _emit(args, _csv(rows))
    else:
        report = {"group": G.name, "count": len(homs)}
        if not args.count:
            report["homs"] = [dict(zip(P.generator_ids, v)) for v in homs]
        _emit(args, fmt.dumps(report))
    return 0


def cmd_classes(args) -> int:
    G = fmt.parse_group(args.group, args.max_order)
    P = fmt.load_presentation(args.presentation)
    table = ClassTable(P, G, args.budget, args.parallel)
    if args.format == "csv":
        rows = [["size"] + list(P.generator_ids)] + [[c.size] + list(c.rep.values) for c in table.classes]
        _emit(args, _csv(rows))
    else:
        _emit(
            args,
            fmt.dumps(
                {
                    "group": G.name,
                    "homs": len(table.homs),
                    "dimension": len(table),
                    "classes": [{"rep": fmt.hom_to_json(c.rep), "size": c.size} for c in table.classes],
                }
            ),
        )
    return 0


def _matrices(c, G, args, raw: bool, normalized: bool) -> dict:
    out = {"FG": FG_matrix(c, G, args.budget, args.parallel)}
    if raw:
        out["bFG"] = bFG(c, G, args.budget, args.parallel)
    if normalized:
        out["bbFG"] = bbFG(c, G, args.budget, args.parallel)
    return out


def _render_matrices(args, G, label: str, mats: dict, extra: dict | None = None) -> str:
    if args.format == "csv":
        parts = []
        for name, A in mats.items():
            parts.append(f"# {name}\n" + fmt.matrix_to_csv(A))
        return "\n".join(parts)
    report = {"group": G.name, "cospan": label}
    report.update({name: fmt.matrix_to_json(A) for name, A in mats.items()})
    if extra:
        report.update(extra)
    return fmt.dumps(report)


def cmd_tqft(args) -> int:
    G = fmt.parse_group(args.group, args.max_order)
    c = fmt.load_cospan(args.cospan)
    _emit(args, _render_matrices(args, G, c.label, _matrices(c, G, args, args.raw, args.normalized)))
    return 0


def cmd_compose(args) -> int:
    cospans = [fmt.load_cospan(p) for p in args.cospans]
    for k in range(len(cospans) - 1):
        if cospans[k].Y != cospans[k + 1].X:
            raise BoundaryMismatch(
                f"outgoing boundary of {args.cospans[k]} does not match "
                f"incoming boundary of {args.cospans[k + 1]}"
            )
    c = compose_all(cospans)
    if not args.group:
        _emit(args, fmt.dumps(fmt.cospan_to_json(c)))
        return 0
    G = fmt.parse_group(args.group, args.max_order)
    A = FG_matrix(c, G, args.budget, args.parallel)
    prod = None
    for piece in cospans:
        B = FG_matrix(piece, G, args.budget, args.parallel)
        prod = B if prod is None else B @ prod
    ok = A == prod
    if args.format == "csv":
        _emit(args, fmt.matrix_to_csv(A) + f"# product identity: {'pass' if ok else 'fail'}\n")
    else:
        report = {
            "group": G.name,
            "cospan": fmt.cospan_to_json(c),
            "FG": fmt.matrix_to_json(A),
            "product_identity": "pass" if ok else "fail",
        }
        _emit(args, fmt.dumps(report))
    return 0 if ok else 1


def cmd_verify(args) -> int:
    G = fmt.parse_group(args.group, args.max_order)
    report = run_suite(args.suite, G, args.seed)
    if args.format == "csv":
        _emit(args, _csv([["check", "passed"]] + [[c["name"], c["passed"]] for c in report["checks"]]))
    else:
        _emit(args, fmt.dumps(report))
    return 0 if report["passed"] else 1


def cmd_example(args) -> int:
    spec = build_example(args.name, n=args.n, i=args.i, inverse=args.inverse, kind=args.kind, space=args.space)
    _emit(args, fmt.dumps(fmt.cospan_to_json(spec.cospan)))
    return 0


COMMANDS = {
    "homs": cmd_homs,
    "classes": cmd_classes,
    "tqft": cmd_tqft,
    "compose": cmd_compose,
    "verify": cmd_verify,
    "example": cmd_example,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (
        fmt.SchemaError,
        PresentationError,
        CospanError,
        BudgetExceeded,
        NotAGroup,
        GroupTooLarge,
        OSError,
        ValueError,
        KeyError,
    ) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
