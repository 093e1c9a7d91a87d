"""
Command line front end.

    parabundle check 4231
    parabundle decompose 541623 --r 3
    parabundle enumerate --n-max 10 --patterns 3412,52341,635241
    parabundle verify --theorem main --n 7
    parabundle tower 4231 --sigma 213

Exit codes: 0 success, 1 usage error, 2 internal consistency failure.
Tower orders read ``sigma`` as a removal order, ``sigma(1)`` first, which
matches ``sigma(i) = r_{k+1-i}`` for a complete BP decomposition
``v_k ... v_1``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .bp import (
    COMPLETE_STRUCTURE_PATTERNS, CriteriaDisagreement, bp_report, complete_bp,
    complete_bp_with_order, has_complete_structure_by_pattern, tower_stages,
)
from .enumeration import (
    CeilingExceeded, CountMismatch, SWEEP_CEILING, SCAN_CEILING, default_jobs,
    series, sweep_theorem_main, sweep_theorem_main2,
)
from .parabolic import parabolic_decompose
from .patterns import contains_pattern, parse_pattern
from .perm_core import (
    Permutation, left_descents, length, rank_matrix, reduced_word,
    right_descents, support,
)

SCHEMA_VERSION = 1
REPORTED_PATTERNS = COMPLETE_STRUCTURE_PATTERNS + (Permutation.parse("4231"),)

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class CheckOutput:
    w: str
    n: int
    length: int
    support: list[int]
    left_descents: list[int]
    right_descents: list[int]
    bp_positions: list[int]
    positions: list[dict]
    patterns: dict[str, dict]
    complete_structure_by_pattern: bool
    complete_bp: dict | None
    rank_matrix: list[list[int]] | None = None
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> CheckOutput:
        return cls(**data)


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_check(w: Permutation, with_rank_matrix: bool = False) -> CheckOutput:
    report = bp_report(w)
    if not report.consistent():
        bad = [v.r for v in report.verdicts if v.bp_by_descent != v.bp_by_pattern]
        raise CriteriaDisagreement(f"w={w}: criteria disagree at r={bad}")
    positions = [
        {
            "r": v.r,
            "bp_by_descent": v.bp_by_descent,
            "bp_by_pattern": v.bp_by_pattern,
            "violation": str(v.violation) if v.violation else None,
            "witness": list(v.witness) if v.witness else None,
        }
        for v in report.verdicts
    ]
    patterns = {}
    for p in REPORTED_PATTERNS:
        witness = contains_pattern(w, p)
        patterns[str(p)] = {
            "contained": witness is not None,
            "witness": list(witness) if witness else None,
        }
    found = complete_bp(w)
    complete = None
    if found is not None:
        complete = {
            "factors": [str(v) for v in found.factors],
            "reduced_words": found.reduced_words(),
            "positions": list(found.positions),
            "sigma": list(found.sigma),
        }
    return CheckOutput(
        w=str(w),
        n=w.n,
        length=length(w),
        support=sorted(support(w)),
        left_descents=sorted(left_descents(w)),
        right_descents=sorted(right_descents(w)),
        bp_positions=sorted(report.positions),
        positions=positions,
        patterns=patterns,
        complete_structure_by_pattern=has_complete_structure_by_pattern(w),
        complete_bp=complete,
        rank_matrix=rank_matrix(w).tolist() if with_rank_matrix else None,
    )


def _fmt_set(items) -> str:
    return "{" + ", ".join(map(str, sorted(items))) + "}"


def _plain_check(out: CheckOutput) -> str:
    lines = [
        f"w = {out.w}  (n={out.n}, length {out.length})",
        f"support        {_fmt_set(out.support)}",
        f"left descents  {_fmt_set(out.left_descents)}",
        f"right descents {_fmt_set(out.right_descents)}",
        f"BP positions   {_fmt_set(out.bp_positions)}",
    ]
    for pos in out.positions:
        if pos["violation"]:
            lines.append(f"  r={pos['r']}: not BP, contains {pos['violation']} at {tuple(pos['witness'])}")
        else:
            lines.append(f"  r={pos['r']}: BP")
    for name, verdict in out.patterns.items():
        state = f"contains at {tuple(verdict['witness'])}" if verdict["contained"] else "avoids"
        lines.append(f"pattern {name:<7s}{state}")
    if out.complete_bp is None:
        lines.append("complete BP    none")
    else:
        c = out.complete_bp
        words = " ".join("(" + "".join(f"s{i}" for i in word) + ")" for word in c["reduced_words"])
        lines.append(f"complete BP    {' * '.join(c['factors']) or 'e'}  =  {words or 'e'}")
        lines.append(f"  positions {c['positions']}, sigma {''.join(map(str, c['sigma']))}")
    if out.rank_matrix is not None:
        lines.append("rank matrix")
        lines.extend("  " + " ".join(f"{x:2d}" for x in row) for row in out.rank_matrix)
    return "\n".join(lines)


def cmd_check(args) -> int:
    out = build_check(_perm(args.w), args.rank_matrix)
    if args.format == "json":
        print(json.dumps(out.to_dict(), indent=2))
    else:
        print(_plain_check(out))
    return EXIT_OK


def cmd_decompose(args) -> int:
    w = _perm(args.w)
    rs = [args.r] if args.r is not None else list(range(1, w.n))
    records = []
    for r in rs:
        try:
            d = parabolic_decompose(w, r)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        records.append({
            "r": r,
            "v": str(d.v),
            "u": str(d.u),
            "support_v": sorted(support(d.v)),
            "left_descents_u": sorted(left_descents(d.u)),
            "reduced_word_v": reduced_word(d.v),
            "reduced_word_u": reduced_word(d.u),
            "bp": support(d.v) - {r} <= left_descents(d.u),
        })
    if args.format == "json":
        print(json.dumps({"schema_version": SCHEMA_VERSION, "w": str(w), "decompositions": records}, indent=2))
    else:
        for rec in records:
            verdict = "BP" if rec["bp"] else "not BP"
            print(f"r={rec['r']}: {w} = {rec['v']} * {rec['u']}  "
                  f"S(v)={_fmt_set(rec['support_v'])} D_L(u)={_fmt_set(rec['left_descents_u'])}  {verdict}")
    return EXIT_OK


def _parse_pattern_list(text: str) -> list[Permutation]:
    patterns = []
    for chunk in text.replace(";", ",").replace(" ", ",").split(","):
        if not chunk:
            continue
        try:
            p = parse_pattern(chunk)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if not isinstance(p, Permutation):
            raise UsageError(f"enumerate takes classical patterns, got {chunk!r}")
        patterns.append(p)
    return patterns


def cmd_enumerate(args) -> int:
    if args.n_max < 1:
        raise UsageError("--n-max must be positive")
    table = series(
        args.n_max,
        _parse_pattern_list(args.patterns),
        method=args.method,
        scan_ceiling=args.scan_ceiling,
        jobs=args.jobs,
    )
    if args.format == "json":
        print(table.to_json())
    elif args.format == "csv":
        sys.stdout.write(table.to_csv())
    else:
        sys.stdout.write(table.to_plain())
    return EXIT_OK


def cmd_verify(args) -> int:
    ceiling = max(args.n, SWEEP_CEILING) if args.force else SWEEP_CEILING
    sweep = sweep_theorem_main if args.theorem == "main" else sweep_theorem_main2
    try:
        report = sweep(args.n, ceiling=ceiling, jobs=args.jobs)
    except CeilingExceeded as exc:
        raise UsageError(f"{exc}; pass --force to run it anyway") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(report.to_json())
    return EXIT_OK if report.ok else EXIT_INTERNAL


def cmd_tower(args) -> int:
    w = _perm(args.w)
    sigma = _perm(args.sigma) if w.n > 1 or args.sigma else None
    order = sigma.images if sigma is not None else ()
    if len(order) != w.n - 1:
        raise UsageError(f"sigma must be a permutation of [1, {w.n - 1}]")
    stages = tower_stages(w, order)
    result = complete_bp_with_order(w, order)
    data = {
        "schema_version": SCHEMA_VERSION,
        "w": str(w),
        "sigma": "".join(map(str, order)),
        "success": result is not None,
        "stages": [
            {
                "r": s.r,
                "status": s.status,
                "remainder": str(s.remainder),
                "v": str(s.v) if s.v else None,
                "u": str(s.u) if s.u else None,
                "violation": str(s.violation) if s.violation else None,
                "witness": list(s.witness) if s.witness else None,
            }
            for s in stages
        ],
        "factors": [str(v) for v in result.factors] if result else None,
    }
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        for s in data["stages"]:
            if s["status"] == "trivial":
                print(f"r={s['r']}: trivial (s_{s['r']} not in support of {s['remainder']})")
            elif s["status"] == "bp":
                print(f"r={s['r']}: {s['remainder']} = {s['v']} * {s['u']}  BP")
            else:
                print(f"r={s['r']}: {s['remainder']} = {s['v']} * {s['u']}  not BP, "
                      f"contains {s['violation']} at {tuple(s['witness'])}")
        print("success" if result else "failure")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parabundle", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="full report for one permutation")
    p.add_argument("w")
    p.add_argument("--format", choices=("json", "plain"), default="plain")
    p.add_argument("--rank-matrix", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="parabolic decompositions w = v*u")
    p.add_argument("w")
    p.add_argument("--r", type=int)
    p.add_argument("--format", choices=("json", "plain"), default="plain")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("enumerate", help="count pattern avoiders for n = 1..n_max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--patterns", default="3412,52341,635241")
    p.add_argument("--method", choices=("pruned", "scan"), default="pruned")
    p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--scan-ceiling", type=int, default=SCAN_CEILING)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="exhaustive theorem sweep over S_n")
    p.add_argument("--theorem", choices=("main", "main2"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tower", help="peel w in the order given by sigma")
    p.add_argument("w")
    p.add_argument("--sigma", default="")
    p.add_argument("--format", choices=("json", "plain"), default="plain")
    p.set_defaults(func=cmd_tower)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"parabundle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CriteriaDisagreement, CountMismatch) as exc:
        print(f"parabundle: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
