"""Command-line front end.

Every invocation prints exactly one JSON record on stdout: the command, a
structured echo of its inputs, the operation payload, the tool version and
the elapsed time.  `--pretty` adds a human-readable rendering on stderr.

Exit codes: 0 ok, 1 verification failed, 2 input error, 3 numerical
non-convergence, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time

from . import __version__
from .model import (
    Code,
    NAMED_CHANNELS,
    NAMED_DIGRAPHS,
    ResourceCapExceeded,
    SpecError,
    parse_channel_spec,
    parse_digraph_spec,
)
from .search import (
    SearchResult,
    exact_M,
    omega_s,
    thread_count,
)
from .capacity import (
    CharacteristicEquation,
    ConvergenceError,
    NAMED_EQUATIONS,
    NoRootError,
    empirical_rates,
    solve_characteristic,
)
from .construct import (
    FAMILIES,
    FAMILY_COUNTS,
    TRIBONACCI_SET,
    largest_block_class,
    ministring_code,
    no_run3_count,
    verify_code,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_NO_CONVERGENCE = 3
EXIT_CAP = 4


def resolve_channel(spec: str):
    """A named alias (F, G, L, Q) or an edge-list spec string."""
    if spec in NAMED_CHANNELS:
        return NAMED_CHANNELS[spec]
    return parse_channel_spec(spec)


def resolve_digraph(spec: str, k: int):
    if spec in NAMED_DIGRAPHS:
        d = NAMED_DIGRAPHS[spec]
        if d.k != k:
            raise SpecError(f"named digraph {spec} has k={d.k}, not {k}")
        return d
    return parse_digraph_spec(spec, k)


def run_record(command: str, inputs: dict, outputs: dict,
               elapsed_ms: int) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "tool_version": __version__,
        "elapsed_ms": elapsed_ms,
    }


def emit(record: dict, pretty: bool) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    if pretty:
        sys.stderr.write(json.dumps(record, indent=2, sort_keys=True) + "\n")


def parse_lengths(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise SpecError(f"malformed lengths: {text!r}") from None


def parse_tail(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise SpecError(f"tail must be start,step: {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise SpecError(f"malformed tail: {text!r}") from None


def read_word_file(path: str) -> Code:
    with open(path, "r", encoding="ascii") as fh:
        words = [line.rstrip("\n") for line in fh if line.strip()]
    if not words:
        raise SpecError(f"no words in {path}")
    n = len(words[0])
    return Code(n, set(words), provenance=path)


def write_word_file(path: str, code: Code) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for w in code.sorted_words():
            fh.write(w + "\n")


def cmd_capacity(args) -> int:
    t0 = time.perf_counter()
    eq = CharacteristicEquation(parse_lengths(args.lengths),
                                parse_tail(args.tail))
    value = solve_characteristic(eq, tol=args.tol)
    record = run_record(
        "capacity",
        {"lengths": list(eq.head), "tail": list(eq.tail) if eq.tail else None,
         "tol": args.tol},
        value.to_record(),
        int((time.perf_counter() - t0) * 1000),
    )
    emit(record, args.pretty)
    return EXIT_OK


def cmd_exact(args) -> int:
    t0 = time.perf_counter()
    G = resolve_channel(args.channel)
    res = exact_M(G, args.n, lex_min=args.deterministic)
    outputs = res.to_record(f"exact_M({G.name or G.to_spec()})", args.n)
    outputs["deterministic"] = args.deterministic
    if args.out:
        write_word_file(args.out, Code(args.n, set(res.witness)))
        outputs["witness_path"] = args.out
    record = run_record(
        "exact",
        {"channel": args.channel, "n": args.n,
         "deterministic": args.deterministic, "threads": thread_count()},
        outputs,
        int((time.perf_counter() - t0) * 1000),
    )
    emit(record, args.pretty)
    return EXIT_OK


def cmd_construct(args) -> int:
    t0 = time.perf_counter()
    if args.family not in FAMILIES:
        raise SpecError(f"unknown family {args.family!r}; choose from "
                        f"{sorted(FAMILIES)}")
    code = FAMILIES[args.family](args.n)
    outputs = {"family": args.family, "n": args.n, "count": len(code)}
    if args.out:
        write_word_file(args.out, code)
        outputs["path"] = args.out
    else:
        outputs["words"] = code.sorted_words()
    record = run_record(
        "construct",
        {"family": args.family, "n": args.n, "out": args.out},
        outputs,
        int((time.perf_counter() - t0) * 1000),
    )
    emit(record, args.pretty)
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    code = read_word_file(args.code)
    G = resolve_channel(args.channel)
    report = verify_code(code, G)
    record = run_record(
        "verify",
        {"code": args.code, "channel": args.channel, "n": code.n,
         "words": len(code)},
        report.to_record(),
        int((time.perf_counter() - t0) * 1000),
    )
    emit(record, args.pretty)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_sperner(args) -> int:
    t0 = time.perf_counter()
    D = resolve_digraph(args.digraph, args.k)
    P = resolve_digraph(args.type, args.k)
    res = omega_s(D, P, args.n, lex_min=args.deterministic)
    outputs = res.to_record(
        f"omega_s({D.name or D.to_spec()},{P.name or P.to_spec()})", args.n)
    outputs["rate_bits"] = math.log2(res.size) / args.n
    record = run_record(
        "sperner",
        {"digraph": args.digraph, "type": args.type, "k": args.k,
         "n": args.n, "deterministic": args.deterministic},
        outputs,
        int((time.perf_counter() - t0) * 1000),
    )
    emit(record, args.pretty)
    return EXIT_OK


REPORT_COLUMNS = ["theorem", "n", "lower_bound", "exact", "upper_bound",
                  "analytic_rate", "empirical_rate"]

# theorem name -> (channel, family of the lower construction, family whose
# cardinality upper-bounds M, equation); the star-01 lower bound is the
# single-edge subgraph value, not a family count
_REPORT_ROWS = {
    "triangle-00-01-10": ("F", "ministring-tribonacci", "no111",
                          "ministring-tribonacci"),
    "triangle-00-01-11": ("G", "oddrun", None, "oddrun"),
    "star-00": ("L", "no-isolated-ones", None, "no-isolated-ones"),
    "star-01": ("Q", None, "fibonacci", "fibonacci"),
}


def report_rows(n_max: int) -> list[dict]:
    rows = []
    for theorem, (chan, lower_fam, upper_fam, eq_name) in \
            _REPORT_ROWS.items():
        G = NAMED_CHANNELS[chan]
        analytic = solve_characteristic(NAMED_EQUATIONS[eq_name]).rate_bits
        for n in range(2, n_max + 1):
            if theorem == "triangle-00-01-10":
                lower = len(largest_block_class(
                    ministring_code(TRIBONACCI_SET, n), TRIBONACCI_SET,
                    "011"))
            elif lower_fam is None:
                lower = exact_M(parse_channel_spec("00-01"), n,
                                lex_min=False).size
            else:
                lower = FAMILY_COUNTS[lower_fam](n)
            exact = exact_M(G, n, lex_min=False).size
            upper = FAMILY_COUNTS[upper_fam](n) if upper_fam else ""
            rows.append({
                "theorem": theorem,
                "n": n,
                "lower_bound": lower,
                "exact": exact,
                "upper_bound": upper,
                "analytic_rate": f"{analytic:.10g}",
                "empirical_rate": f"{math.log2(exact) / n:.10g}",
            })
    return rows


def cmd_report(args) -> int:
    t0 = time.perf_counter()
    rows = report_rows(args.n_max)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS)
    writer.writeheader()
    writer.writerows(rows)
    csv_text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(csv_text)
    record = run_record(
        "report",
        {"n_max": args.n_max, "out": args.out},
        {"rows": len(rows), "path": args.out or None,
         "csv": None if args.out else csv_text},
        int((time.perf_counter() - t0) * 1000),
    )
    emit(record, args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zecap",
        description="Zero-error capacity toolkit for binary channels with "
                    "order-1 memory.")
    parser.add_argument("--pretty", action="store_true",
                        help="also print an indented record on stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("capacity", help="solve a characteristic equation")
    p.add_argument("--lengths", required=True,
                   help="comma-separated ministring lengths, e.g. 1,2,3")
    p.add_argument("--tail", default=None,
                   help="optional arithmetic tail start,step")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("exact", help="exact M(G,n) by branch and bound")
    p.add_argument("--channel", required=True,
                   help="edge spec like 00-01;00-10 or an alias F/G/L/Q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None, help="write the witness word file")
    p.add_argument("--deterministic", action=argparse.BooleanOptionalAction,
                   default=True)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("construct", help="emit a named code family")
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None, help="write the word file")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a word file against a channel")
    p.add_argument("--code", required=True, help="word file, one per line")
    p.add_argument("--channel", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sperner", help="maximum symmetric clique omega_s")
    p.add_argument("--digraph", required=True,
                   help="arc spec like 0>1 or an alias C5sym/K5/fibonacci")
    p.add_argument("--type", required=True,
                   help="walk-constraint digraph spec or alias")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deterministic", action=argparse.BooleanOptionalAction,
                   default=True)
    p.set_defaults(func=cmd_sperner)

    p = sub.add_parser("report",
                       help="run the theorem battery and emit a CSV")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SpecError, FileNotFoundError, NoRootError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ConvergenceError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NO_CONVERGENCE
    except ResourceCapExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
