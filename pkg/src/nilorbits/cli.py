"""Command-line front end: enumeration, counting, representatives,
identification, summand decomposition, AR sequences, and the verify suite.

Exit codes: 0 on success, 1 when verification finds failures, 2 on malformed
input (with a one-line diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys

from .correspondence import (MalformedInputError, identify, identify_parabolic,
                             parabolic_representative, pattern_to_matrix,
                             tex_matrix, tex_pattern, tex_table)
from .harness import SuiteConfig, run_suite, suite_report_json
from .linalg import (DomainError, GroupKind, ORTHOGONAL, SYMPLECTIC, SpaceSpec,
                     matrix_from_json, matrix_to_json, orbit_dimension)
from .patterns import (LinkPattern, count_borel, enumerate_patterns,
                       pattern_from_json, pattern_to_json)
from .quiver import (ar_sequences, ar_skipped, multiset_text, multiset_to_json,
                     pattern_to_summands)

_KINDS = {"sp": SYMPLECTIC, "o": ORTHOGONAL}


def _parse_blocks(text: str) -> tuple[int, ...]:
    try:
        blocks = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise DomainError(f"bad block list {text!r}; expected integers like 2,1,1")
    if not blocks or any(b < 1 for b in blocks):
        raise DomainError("blocks must be positive integers")
    return blocks


def _level(args) -> tuple[str, int, tuple[int, ...]]:
    """(kind, k, b) for the combinatorial commands."""
    kind = _KINDS[args.group]
    if args.blocks:
        b = _parse_blocks(args.blocks)
        return kind, len(b), b
    if args.rank is not None:
        return kind, args.rank, (1,) * args.rank
    if args.n is not None:
        return kind, args.n // 2, (1,) * (args.n // 2)
    raise DomainError("need --rank, --n, or --blocks")


def _group(args, b: tuple[int, ...]) -> GroupKind:
    """The matrix group for commands that produce or consume matrices."""
    if args.group == "sp":
        return GroupKind.symplectic(args.n if args.n else 2 * sum(b))
    if args.n is None:
        raise DomainError("orthogonal groups need an explicit --n "
                          "(the rank does not determine n)")
    return GroupKind.orthogonal(args.n)


def _read_in(args) -> str:
    if args.infile:
        with open(args.infile, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _emit(args, text: str):
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _matrix_text(m) -> str:
    widths = [max(len(str(m.entry(r, c))) for r in range(1, m.rows + 1))
              for c in range(1, m.cols + 1)]
    return "\n".join(" ".join(str(m.entry(r, c)).rjust(w)
                              for c, w in zip(range(1, m.cols + 1), widths))
                     for r in range(1, m.rows + 1))


def _cmd_enumerate(args) -> int:
    kind, k, b = _level(args)
    pats = enumerate_patterns(kind, k, b)
    if args.format == "json":
        _emit(args, "\n".join(pattern_to_json(p) for p in pats))
    elif args.format == "csv":
        lines = ["index,arcs"]
        lines += [f"{i},{';'.join(a.text() for a in p.arcs)}"
                  for i, p in enumerate(pats, start=1)]
        _emit(args, "\n".join(lines))
    elif args.format == "tex":
        # the tex layout pairs every pattern with its representative matrix
        g = _group(args, b)
        spec = SpaceSpec.from_blocks(g, b)
        rows = [(p, pattern_to_matrix(p, g) if p.is_borel_level and p.k == g.l
                 else parabolic_representative(p, spec)) for p in pats]
        _emit(args, tex_table(rows))
    else:
        _emit(args, "\n".join(p.text() for p in pats))
    return 0


def _cmd_count(args) -> int:
    kind, k, b = _level(args)
    if all(v == 1 for v in b):
        value, method = count_borel(kind, k), "recurrence"
    else:
        value, method = len(enumerate_patterns(kind, k, b)), "enumeration"
    if args.format == "json":
        _emit(args, json.dumps({"count": value, "method": method},
                               sort_keys=True, separators=(",", ":")))
    else:
        _emit(args, f"{value} ({method})")
    return 0


def _cmd_repr(args) -> int:
    p = pattern_from_json(_read_in(args))
    g = _group(args, p.b)
    if p.is_borel_level and p.k == g.l:
        m = pattern_to_matrix(p, g)
    else:
        m = parabolic_representative(p, SpaceSpec.from_blocks(g, p.b))
    if args.format == "json":
        _emit(args, matrix_to_json(m))
    elif args.format == "tex":
        _emit(args, tex_matrix(m))
    else:
        _emit(args, _matrix_text(m))
    return 0


def _cmd_identify(args) -> int:
    x = matrix_from_json(_read_in(args))
    if args.n is not None and args.n != x.rows:
        raise DomainError(f"--n {args.n} does not match the {x.rows}x{x.cols} input")
    g = GroupKind(_KINDS[args.group], x.rows)
    blocks = _parse_blocks(args.blocks) if args.blocks else None
    if blocks:
        spec = SpaceSpec.from_blocks(g, blocks)
        p = identify_parabolic(x, spec)
    else:
        spec = SpaceSpec.borel(g)
        p = identify(x, g)
    dim = orbit_dimension(x, spec)
    if args.format == "json":
        obj = json.loads(pattern_to_json(p))
        _emit(args, json.dumps({"pattern": obj, "orbit_dimension": dim},
                               sort_keys=True, separators=(",", ":")))
    elif args.format == "tex":
        _emit(args, f"${tex_pattern(p)}$ % orbit dimension {dim}")
    else:
        _emit(args, f"{p.text()}  orbit dimension {dim}")
    return 0


def _cmd_summands(args) -> int:
    p = pattern_from_json(_read_in(args))
    g = _group(args, p.b)
    spec = SpaceSpec.from_blocks(g, p.b)
    ms = pattern_to_summands(p, spec)
    if args.format == "json":
        _emit(args, multiset_to_json(ms, spec.k))
    else:
        _emit(args, multiset_text(ms))
    return 0


def _cmd_ar(args) -> int:
    if args.rank is None:
        raise DomainError("ar needs --rank")
    sequences = ar_sequences(args.rank)
    skipped = ar_skipped(args.rank)
    if args.format == "json":
        obj = {"rank": args.rank,
               "sequences": [{"left": s.left.text(),
                              "middles": [m.text() for m in s.middles],
                              "right": s.right.text(), "rule": s.rule}
                             for s in sequences],
               "skipped": [{"rule": s.rule, "indices": list(s.indices),
                            "reason": s.reason} for s in skipped]}
        _emit(args, json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        lines = [s.text() for s in sequences]
        lines += [f"skipped {s.rule}{s.indices}: {s.reason}" for s in skipped]
        _emit(args, "\n".join(lines))
    return 0


def _cmd_verify(args) -> int:
    kinds = ((_KINDS[args.group],) if args.group else (SYMPLECTIC, ORTHOGONAL))
    config = SuiteConfig(kinds=kinds, max_rank=args.rank if args.rank is not None else 3,
                         seed=args.seed)
    report = run_suite(config)
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(suite_report_json(report) + "\n")
    summary = report["summary"]
    print(f"verify: {summary['total'] - summary['failed']}/{summary['total']} "
          f"checks passed")
    if summary["failed"]:
        for item in report["items"]:
            if item["status"] == "fail":
                print(f"  FAIL {item['test_id']} {item['details']}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilorbits",
        description="Borel/parabolic conjugation orbits of 2-nilpotent elements "
                    "in symplectic and orthogonal Lie algebras")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "enumerate": "list all valid patterns at the given level",
        "count": "count patterns (recurrence at Borel level, else enumeration)",
        "repr": "pattern (JSON on stdin or --in) to representative matrix",
        "identify": "matrix (JSON on stdin or --in) to its orbit's pattern",
        "summands": "pattern to its Krull-Remak-Schmidt summand multiset",
        "ar": "Auslander-Reiten sequences for the given rank",
        "verify": "run the randomized verification suite",
    }
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--group", choices=("sp", "o"),
                       default="sp" if name in ("enumerate", "count", "repr",
                                                "identify", "summands") else None,
                       help="group family: sp (symplectic) or o (orthogonal)")
        p.add_argument("--n", type=int, default=None,
                       help="matrix size n")
        p.add_argument("--rank", type=int, default=None,
                       help="rank l (Borel level: n = 2l or 2l+1)")
        p.add_argument("--blocks", type=str, default=None,
                       help="comma-separated flag block sizes, e.g. 2,1,1")
        p.add_argument("--format", choices=("json", "csv", "tex", "text"),
                       default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--in", dest="infile", type=str, default=None,
                       help="input file (default: stdin)")
        p.add_argument("--out", dest="outfile", type=str, default=None,
                       help="output file (default: stdout)")
    return parser


_HANDLERS = {
    "enumerate": _cmd_enumerate,
    "count": _cmd_count,
    "repr": _cmd_repr,
    "identify": _cmd_identify,
    "summands": _cmd_summands,
    "ar": _cmd_ar,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (DomainError, MalformedInputError) as exc:
        print(f"nilorbits {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
