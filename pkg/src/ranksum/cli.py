"""Command-line interface.

Exit codes: 0 clean or proper, 1 improper distribution found, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from ._rational import format_fraction, to_fraction
from .distributions import expected_score, load_distribution
from .errors import DegenerateOutcomeError, InvalidInputError, RanksumError, ResourceLimitError
from .kernels import HALF, auc, gini, get_kernel, is_degenerate, roc_curve, wmw_u
from .preorder import DEFAULT_CAP, induce_preorder, parse_preorder
from .propriety import check_propriety, search_counterexamples

EXIT_OK = 0
EXIT_IMPROPER = 1
EXIT_USAGE = 2


def read_submission(path):
    """Parse an ``id,prediction,outcome`` CSV into ids, exact predictions and outcomes."""
    ids, preds, ys = [], [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["id", "prediction", "outcome"]:
            raise InvalidInputError(f"{path}:1: header must be 'id,prediction,outcome'")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise InvalidInputError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            rid, pred, out = (c.strip() for c in row)
            try:
                q = to_fraction(pred)
            except InvalidInputError:
                raise InvalidInputError(f"{path}:{lineno}: bad prediction {pred!r}") from None
            if out not in ("0", "1"):
                raise InvalidInputError(f"{path}:{lineno}: outcome must be 0 or 1, got {out!r}")
            ids.append(rid)
            preds.append(q)
            ys.append(int(out))
    if not ys:
        raise InvalidInputError(f"{path}: no data rows")
    return ids, preds, ys


def _dec(x: Fraction, digits: int = 6) -> str:
    return f"{float(x):.{digits}f}"


def cmd_score(args) -> int:
    _, preds, ys = read_submission(args.submission)
    n1 = sum(ys)
    if args.known_positives is not None and n1 != args.known_positives:
        raise InvalidInputError(
            f"submission has {n1} positive outcomes, --known-positives says {args.known_positives}"
        )
    order = induce_preorder(preds)
    u = wmw_u(ys, order)
    a = auc(ys, order, args.degenerate_constant)
    g = gini(ys, order, args.degenerate_constant)
    degenerate = is_degenerate(ys)
    report = {
        "n": len(ys),
        "positives": n1,
        "u": format_fraction(u),
        "auc": format_fraction(a),
        "gini": format_fraction(g),
        "degenerate": degenerate,
    }
    if args.known_positives is not None:
        report["note"] = (
            "positive count fixed in advance: AUC is strictly proper for the weak rank functional"
        )
    if args.format == "json":
        print(json.dumps(report))
    elif args.format == "csv":
        print("n,positives,u,auc,gini,degenerate")
        print(f"{len(ys)},{n1},{report['u']},{report['auc']},{report['gini']},{int(degenerate)}")
    else:
        print(f"n={len(ys)} positives={n1}")
        for key, val in (("u", u), ("auc", a), ("gini", g)):
            print(f"{key:5s} {format_fraction(val):>12s}  ({_dec(val)})")
        if degenerate:
            print(f"warning: all outcomes equal; AUC set to the convention value "
                  f"{format_fraction(args.degenerate_constant)}")
        if "note" in report:
            print(f"note: {report['note']}")
    return EXIT_OK


def cmd_roc(args) -> int:
    _, preds, ys = read_submission(args.submission)
    if is_degenerate(ys):
        raise DegenerateOutcomeError(
            "all outcomes are equal, so no ROC curve exists; AUC convention value is "
            f"{format_fraction(args.degenerate_constant)}"
        )
    text = roc_curve(ys, induce_preorder(preds)).to_csv(decimal=args.decimal)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_expected(args) -> int:
    P = load_distribution(args.distribution)
    order = parse_preorder(args.preorder, P.n)
    k = get_kernel(args.kernel, args.degenerate_constant)
    val = expected_score(P, k, order)
    if args.format == "json":
        print(json.dumps({"kernel": k.name, "preorder": str(order),
                          "expected": format_fraction(val), "decimal": float(val)}))
    elif args.format == "csv":
        print("kernel,preorder,expected,decimal")
        print(f'{k.name},"{order}",{format_fraction(val)},{float(val)!r}')
    else:
        print(f"{format_fraction(val)}  ({_dec(val, 12)})")
    return EXIT_OK


def cmd_propriety(args) -> int:
    if args.search:
        kname, n, budget, seed = args.search
        k = get_kernel(kname, args.degenerate_constant)
        try:
            n, budget, seed = int(n), int(budget), int(seed)
        except ValueError:
            raise InvalidInputError("--search expects KERNEL N BUDGET SEED with integer N, BUDGET, SEED") from None
        certs = list(search_counterexamples(k, n, budget, seed, jobs=args.jobs, cap=args.cap))
        print(json.dumps({"kernel": k.name, "n": n, "budget": budget, "seed": seed,
                          "found": len(certs),
                          "certificates": [c.to_dict() for c in certs]}, ensure_ascii=False,
                         indent=2))
        return EXIT_IMPROPER if certs else EXIT_OK
    if not args.distribution:
        raise InvalidInputError("propriety needs a distribution file or --search")
    P = load_distribution(args.distribution)
    k = get_kernel(args.kernel, args.degenerate_constant)
    cert = check_propriety(P, k, cross_check=args.cross_check, cap=args.cap)
    print(cert.to_json(indent=2))
    return EXIT_OK if cert.proper else EXIT_IMPROPER


def cmd_reproduce(args) -> int:
    from . import reproduce

    if args.case == "sequential":
        for line in reproduce.sequence_trace(reproduce.random_sequence(args.seed)):
            print(line)
    checks = reproduce.run(args.case, seed=args.seed)
    for c in checks:
        print(c.line())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_IMPROPER


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kernel", choices=("u", "auc", "gini"), default="auc")
    common.add_argument("--degenerate-constant", type=to_fraction, default=HALF,
                        metavar="A/B", help="AUC assigned to all-equal outcomes (default 1/2)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="largest n for preorder enumeration (default %(default)s)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    parser = argparse.ArgumentParser(
        prog="ranksum", description="Exact rank-sum scores and propriety checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", parents=[common], help="u, AUC and Gini of a submission CSV")
    p.add_argument("submission")
    p.add_argument("--known-positives", type=int, metavar="K")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("roc", parents=[common], help="write the ROC curve of a submission as CSV")
    p.add_argument("submission")
    p.add_argument("-o", "--output")
    p.add_argument("--decimal", action="store_true", help="decimal instead of a/b values")
    p.set_defaults(func=cmd_roc)

    p = sub.add_parser("expected", parents=[common], help="exact expected score of a preorder")
    p.add_argument("distribution")
    p.add_argument("preorder", help='preorder text, lowest class first, e.g. "[4][3][1,2]"')
    p.set_defaults(func=cmd_expected)

    p = sub.add_parser("propriety", parents=[common], help="propriety certificate or counterexample search")
    p.add_argument("distribution", nargs="?")
    p.add_argument("--search", nargs=4, metavar=("KERNEL", "N", "BUDGET", "SEED"))
    p.add_argument("--cross-check", action="store_true",
                   help="also enumerate every preorder and compare argmax sets")
    p.set_defaults(func=cmd_propriety)

    p = sub.add_parser("reproduce", parents=[common], help="recompute a reference result")
    p.add_argument("case", choices=("example3", "example5", "theorem2", "sequential"))
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc} (cap={exc.cap})", file=sys.stderr)
        return EXIT_USAGE
    except (RanksumError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
