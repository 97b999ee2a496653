"""Command-line interface.

Subcommands: admissible | enumerate | decompose | oracle-compare | kl-selftest.
All arithmetic is exact; rationals are written "p/q" on both input and
output.  Exit codes: 0 success, 2 usage/parse error, 3 saturation not
established (and not waived), 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import combinat, oracle, params, pipeline, weights
from .pipeline import SaturationNotEstablished


def _parse_u(text: str) -> tuple[Fraction, ...]:
    return tuple(params.parse_rational(part) for part in text.split(","))


def _parse_q(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _emit(text: str, out_path: str | None, default_name: str) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    if os.path.isdir(out_path):
        out_path = os.path.join(out_path, default_name)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(out_path)


def cmd_admissible(args: argparse.Namespace) -> int:
    try:
        u = _parse_u(args.u)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if len(u) != args.k:
        print(f"error: expected {args.k} rational(s), got {len(u)}", file=sys.stderr)
        return 2
    N = args.N if args.N is not None else args.k
    series = params.omega_series(u, N)
    for a, value in enumerate(series):
        print(f"omega_{a} = {params.format_rational(value)}")
    verdict = params.simple_param_condition(u, args.k)
    print(f"simple_param_condition = {'true' if verdict else 'false'}")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    labels = combinat.enumerate_lambda(args.k, args.r)
    table = combinat.updown_count_table(args.k, args.r)
    total = 0
    for idx in labels:
        count = table.get(idx.shape, 0)
        total += count * count
        print(f"{pipeline.family_label(idx)}  walks={count}")
    expected = args.k**args.r * combinat.double_factorial(2 * args.r - 1)
    print(f"labels={len(labels)} sum_of_squares={total} expected={expected}")
    return 0 if total == expected else 1


def cmd_decompose(args: argparse.Namespace) -> int:
    try:
        u = _parse_u(args.u)
        q = _parse_q(args.q) if args.q else None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if len(u) != args.k:
        print(f"error: expected {args.k} rational(s), got {len(u)}", file=sys.stderr)
        return 2
    cfg = params.build_config(u, args.r, q=q)
    try:
        report = pipeline.decomposition_report(
            cfg,
            convention=args.convention,
            conjugate_convention=args.conjugate,
            assume_saturated=args.assume_saturated,
        )
    except SaturationNotEstablished as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    digest = hashlib.sha256(args.u.encode()).hexdigest()[:8]
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
        name = f"decomp_k{args.k}_r{args.r}_{digest}.json"
    else:
        text = pipeline.report_to_csv(report, which=args.matrix)
        name = f"decomp_k{args.k}_r{args.r}_{digest}.csv"
    _emit(text, args.out, name)
    return 0


CONVENTION_PAIRS = [
    ("direct", "identity"),
    ("direct", "transpose"),
    ("mirror", "identity"),
    ("mirror", "transpose"),
]


def cmd_oracle_compare(args: argparse.Namespace) -> int:
    if args.k != 1:
        print("error: the diagram oracle exists at k=1 only", file=sys.stderr)
        return 2
    if args.r > 4:
        print("error: oracle limited to r <= 4", file=sys.stderr)
        return 2
    try:
        delta = params.parse_rational(args.delta)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    u1 = (1 - delta) / 2
    cfg = params.build_config((u1,), args.r)
    matrix = oracle.oracle_decomposition_matrix(args.r, delta)
    passing: list[tuple[str, str]] = []
    diffs_by_pair = {}
    for kl_conv, conj_conv in CONVENTION_PAIRS:
        try:
            report = pipeline.decomposition_report(
                cfg, convention=kl_conv, conjugate_convention=conj_conv
            )
        except Exception as exc:  # a wrong convention may fail structurally
            diffs_by_pair[(kl_conv, conj_conv)] = [{"kind": "error", "detail": str(exc)}]
            continue
        diff = oracle.compare(report, matrix, conj_conv)
        diffs_by_pair[(kl_conv, conj_conv)] = diff
        if not diff:
            passing.append((kl_conv, conj_conv))
    if passing:
        for kl_conv, conj_conv in passing:
            print(f"match: kl={kl_conv} conjugate={conj_conv}")
        return 0
    print("no convention pair reconciles the oracle:", file=sys.stderr)
    for pair, diff in diffs_by_pair.items():
        print(f"  {pair}: {len(diff)} difference(s); first: {diff[0]}", file=sys.stderr)
    return 4


def cmd_kl_selftest(args: argparse.Namespace) -> int:
    """Built-in battery: bijections, content identity, peel stability."""
    battery = [
        ((Fraction(0),), 3),
        ((Fraction(1, 3),), 2),
        ((Fraction(3, 2),), 2),
        ((Fraction(1, 5), Fraction(9, 7)), 2),
    ]
    failures = 0
    for u, r in battery:
        cfg = params.build_config(u, r)
        ok = True
        family = weights.enumerate_F(r, cfg)
        for i, mu in enumerate(family):
            idx = weights.tilde(mu, cfg)
            if weights.hat(idx, cfg) != mu:
                ok = False
        if not pipeline.content_consistency_check(cfg):
            ok = False
        try:
            a = pipeline.tilting_decomposition(cfg)
            b = pipeline.tilting_decomposition(cfg, reverse_ties=True)
            if a.multiplicities != b.multiplicities:
                ok = False
        except Exception:
            ok = False
        tag = "ok" if ok else "FAIL"
        failures += 0 if ok else 1
        u_text = ",".join(params.format_rational(x) for x in u)
        print(f"{tag}: u=({u_text}) r={r} family={len(family)}")
    return 0 if failures == 0 else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="brauer-kl",
        description="Exact decomposition matrices for cyclotomic Brauer algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("admissible", help="print the omega series and the parameter condition")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--u", type=str, required=True, help='comma-separated rationals, e.g. "1/2,-3"')
    p.add_argument("--N", type=int, default=None, help="highest omega index to print")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("enumerate", help="list cell labels with walk counts")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decompose", help="write a decomposition report")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--u", type=str, required=True)
    p.add_argument("--q", type=str, default=None, help="override block sizes")
    p.add_argument(
        "--convention",
        choices=["direct", "mirror"],
        default=None,
        help="tilting index order; default: the frozen oracle pin",
    )
    p.add_argument(
        "--conjugate",
        choices=["identity", "transpose"],
        default=None,
        help="cell-label conjugation; default: the frozen oracle pin",
    )
    p.add_argument("--assume-saturated", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--matrix", choices=["level", "full"], default="level", help="csv payload")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("oracle-compare", help="pin conventions against the diagram oracle")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=str, required=True, help='loop scalar, e.g. "1" or "-2"')
    p.set_defaults(func=cmd_oracle_compare)

    p = sub.add_parser("kl-selftest", help="run the built-in consistency battery")
    p.set_defaults(func=cmd_kl_selftest)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
