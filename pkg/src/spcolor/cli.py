"""Command-line front end.

Graph files (1-based vertex ids)::

    c optional comment
    p spm <n> <m>
    e <u> <v> <mult>        (m lines)

Coloring files::

    s YES k=<k>
    e <u> <v> <mult> c <c1> ... <c_mult>

Exit codes: 0 success / YES, 1 NO or invalid coloring, 2 usage or parse
error, 3 input is not series-parallel.
"""

from __future__ import annotations

import argparse
import gc
import random
import statistics
import sys
import time
from collections.abc import Sequence
from fractions import Fraction
from typing import TextIO

from .colorer import Coloring, coloring_violation, replay_color
from .encoding import POTENTIAL_K, from_multigraph, potential
from .errors import BudgetExceeded, GraphError, ParseError, ShapeMismatch
from .multigraph import Multigraph, is_series_parallel, pair
from .oracle import Budget, chi_exact, gamma_exact, gen_sp, is_k_colorable_exact, lower_bound
from .reducer import Answer, chromatic_index, decide

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_NOT_SP = 0, 1, 2, 3


# -- file formats -------------------------------------------------------------


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_graph(text: str) -> Multigraph:
    n = m = None
    classes: list[tuple[int, int, int]] = []
    lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if n is not None:
                raise ParseError("second header line", lineno)
            if len(tokens) != 4 or tokens[1] != "spm":
                raise ParseError("header must be 'p spm <n> <m>'", lineno)
            n, m = _ints(tokens[2:], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative size in header", lineno)
        elif tokens[0] == "e":
            if n is None:
                raise ParseError("edge line before header", lineno)
            if len(tokens) != 4:
                raise ParseError("edge line must be 'e <u> <v> <mult>'", lineno)
            u, v, mult = _ints(tokens[1:], lineno)
            classes.append((u - 1, v - 1, mult))
            lines.append(lineno)
        else:
            raise ParseError(f"unknown line type {tokens[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p spm' header")
    if len(classes) != m:
        raise ParseError(f"header announces {m} edge lines, found {len(classes)}")
    try:
        return Multigraph(n, classes)
    except GraphError as exc:
        # rebuild incrementally to name the offending line
        for i in range(len(classes)):
            try:
                Multigraph(n, classes[: i + 1])
            except GraphError:
                raise ParseError(str(exc), lines[i]) from None
        raise ParseError(str(exc)) from None


def format_graph(g: Multigraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.append(f"c {comment}")
    out.append(f"p spm {g.vertex_count} {len(g.classes)}")
    out.extend(f"e {u + 1} {v + 1} {m}" for u, v, m in g.classes)
    return "\n".join(out) + "\n"


def format_coloring(g: Multigraph, k: int, col: Coloring) -> str:
    out = [f"s YES k={k}"]
    for u, v, m in g.classes:
        colors = " ".join(str(c) for c in col[pair(u, v)])
        out.append(f"e {u + 1} {v + 1} {m} c {colors}")
    return "\n".join(out) + "\n"


def parse_coloring(text: str) -> tuple[int, Coloring]:
    k = None
    col: Coloring = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "s":
            if len(tokens) != 3 or tokens[1] != "YES" or not tokens[2].startswith("k="):
                raise ParseError("status line must be 's YES k=<k>'", lineno)
            (k,) = _ints([tokens[2][2:]], lineno)
        elif tokens[0] == "e":
            if len(tokens) < 5 or tokens[4] != "c":
                raise ParseError("class line must be 'e <u> <v> <mult> c <colors>'", lineno)
            u, v, mult = _ints(tokens[1:4], lineno)
            colors = _ints(tokens[5:], lineno)
            if len(colors) != mult:
                raise ParseError(f"{len(colors)} colors for multiplicity {mult}", lineno)
            key = pair(u - 1, v - 1)
            if key in col:
                raise ParseError("class listed twice", lineno)
            col[key] = colors
        else:
            raise ParseError(f"unknown line type {tokens[0]!r}", lineno)
    if k is None:
        raise ParseError("missing 's YES k=<k>' line")
    return k, col


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str, stdout: TextIO) -> None:
    if path is None or path == "-":
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# -- subcommands ------------------------------------------------------------


def cmd_decide(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = parse_graph(_read(args.file))
    verdict = decide(g, args.k)
    print(verdict.describe(), file=out)
    return {Answer.YES: EXIT_OK, Answer.NO: EXIT_NO, Answer.NOT_SERIES_PARALLEL: EXIT_NOT_SP}[verdict.answer]


def cmd_color(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = parse_graph(_read(args.file))
    verdict = decide(g, args.k, trace=True)
    if verdict.answer is not Answer.YES:
        print(verdict.describe(), file=out)
        return EXIT_NO if verdict.answer is Answer.NO else EXIT_NOT_SP
    assert verdict.frames is not None
    col = replay_color(g, args.k, verdict.frames)
    _write(args.output, format_coloring(g, args.k, col), out)
    if args.output not in (None, "-"):
        print("YES", file=out)
    return EXIT_OK


def cmd_chi(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = parse_graph(_read(args.file))
    if is_series_parallel(g):
        print(chromatic_index(g), file=out)
        print("path: reducer", file=err)
        return EXIT_OK
    try:
        value = chi_exact(g, Budget(args.max_vertices, args.max_edges))
    except BudgetExceeded as exc:
        print(f"not series-parallel and too large for the exact oracle: {exc}", file=err)
        return EXIT_NOT_SP
    print(value, file=out)
    print("path: oracle (not series-parallel)", file=err)
    return EXIT_OK


def cmd_gamma(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = parse_graph(_read(args.file))
    report = gamma_exact(g, pruned=args.pruned)
    members = ",".join(str(v + 1) for v in report.U)
    print(f"{_fraction(report.density)} U={{{members}}}", file=out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = parse_graph(_read(args.graph))
    k, col = parse_coloring(_read(args.coloring))
    try:
        problem = coloring_violation(g, k, col)
    except ShapeMismatch as exc:
        problem = str(exc)
    if problem is None:
        print("VALID", file=out)
        return EXIT_OK
    print(f"INVALID {problem}", file=out)
    return EXIT_NO


def cmd_gen(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    g = gen_sp(args.n, args.max_mult, args.seed)
    comment = f"series-parallel n={args.n} max-mult={args.max_mult} seed={args.seed}"
    _write(args.output, format_graph(g, comment), out)
    return EXIT_OK


def selftest(instances: int, max_vertices: int, seed: int, max_mult: int = 4, log: TextIO | None = None) -> int:
    """Oracle equivalence over a seeded corpus; returns the number of mismatches."""
    rng = random.Random(seed)
    budget = Budget(max(max_vertices, 2), 10**6)
    mismatches = 0
    checks = 0
    for _ in range(instances):
        n = rng.randint(2, max(2, max_vertices))
        g = gen_sp(n, max_mult, rng.randrange(2**32))
        delta = g.max_degree
        for k in range(max(0, delta - 1), -(-3 * delta // 2) + 2):
            verdict = decide(g, k, trace=True)
            expected = is_k_colorable_exact(g, k, budget)
            checks += 1
            if bool(verdict) != expected:
                mismatches += 1
                if log:
                    print(f"decide mismatch k={k}: {g!r}", file=log)
            if verdict:
                col = replay_color(g, k, verdict.frames or [])
                if coloring_violation(g, k, col) is not None:
                    mismatches += 1
                    if log:
                        print(f"bad coloring k={k}: {g!r}", file=log)
        chi = chromatic_index(g)
        if not chi == chi_exact(g, budget) == lower_bound(g):
            mismatches += 1
            if log:
                print(f"chromatic index mismatch: {g!r}", file=log)
    if log:
        print(f"selftest: {instances} graphs, {checks} decisions, {mismatches} mismatches", file=log)
    return mismatches


def cmd_selftest(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    bad = selftest(args.instances, args.max_vertices, args.seed, log=out)
    return EXIT_OK if bad == 0 else EXIT_NO


def bench_one(n: int, seed: int = 0, max_mult: int = 4, repeats: int = 1) -> dict[str, float]:
    g = gen_sp(n, max_mult, seed)
    k = 3 * g.max_degree // 2
    phis = [potential(from_multigraph(g), POTENTIAL_K), 0]

    def observe(state, event, frame) -> None:  # noqa: ANN001
        phis[1] = potential(state, POTENTIAL_K)

    verdict = decide(g, k, observer=observe)
    times = []
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repeats):
            t0 = time.perf_counter()
            decide(g, k)
            times.append(time.perf_counter() - t0)
    finally:
        if gc_was_enabled:
            gc.enable()
    return {
        "n": n,
        "classes": len(g.classes),
        "seconds": statistics.median(times),
        "iterations": verdict.iterations,
        "initial_potential": phis[0],
        "final_potential": phis[1],
    }


def cmd_bench(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    print("n classes seconds iterations initial_potential final_potential", file=out)
    for n in sizes:
        r = bench_one(n, seed=args.seed, repeats=args.repeats)
        print(
            f"{r['n']} {r['classes']} {r['seconds']:.4f} {r['iterations']}"
            f" {r['initial_potential']} {r['final_potential']}",
            file=out,
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spcolor", description="Edge-coloring of series-parallel multigraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide whether chi'(G) <= k")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("color", help="write a k-edge-coloring")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-o", "--output")
    p.add_argument("file")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("chi", help="print the chromatic index")
    p.add_argument("--max-vertices", type=int, default=10)
    p.add_argument("--max-edges", type=int, default=32)
    p.add_argument("file")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("gamma", help="print the odd-set density and a witness (small graphs)")
    p.add_argument("--pruned", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("verify", help="check a coloring file against a graph")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random series-parallel multigraph")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--max-mult", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="compare against the brute-force oracle")
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("bench", help="time decide on generated instances")
    p.add_argument("--sizes", default="10000,20000,40000")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
