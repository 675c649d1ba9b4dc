"""Command line entry point.

Exit codes: 0 Yes / success, 1 No / failed check, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .dp import optimize, solve_klcp
from .graph import LCPError
from .instances import FAMILIES, ResultRecord, canonical_labels, emit_graph, generate, parse_graph
from .kernel import kernelize
from .oracle import DEFAULT_CAP, brute_force_mu
from .treedecomp import bounded_width_or_coloring, emit_td, parse_td, validate, width

EXIT_YES, EXIT_NO, EXIT_USAGE = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load(args):
    g = parse_graph(_read(args.input))
    td = parse_td(_read(args.td)) if getattr(args, "td", None) else None
    return g, td


def _print_record(rec: ResultRecord, fmt: str) -> None:
    sys.stdout.write(rec.to_kv() if fmt == "kv" else rec.to_text())


def cmd_solve(args) -> int:
    g, td = _load(args)
    t0 = time.perf_counter()
    res = solve_klcp(g, args.k, want_witness=args.witness, td=td)
    stats = {"seconds": f"{time.perf_counter() - t0:.6f}"}
    for key in ("kernel_n", "kernel_m", "nice_nodes", "width", "table_entries", "entry_budget"):
        if key in res.stats:
            stats[key] = res.stats[key]
    rec = ResultRecord.build(g, res.witness, verdict=res.verdict, k=args.k, decided_by=res.decided_by, stats=stats)
    _print_record(rec, args.format)
    return EXIT_YES if res.verdict else EXIT_NO


def cmd_optimize(args) -> int:
    g, td = _load(args)
    mu, f = optimize(g, td=td)
    rec = ResultRecord.build(g, f if args.witness else None, mu=mu, decided_by="dp" if td else "pipeline")
    _print_record(rec, args.format)
    return EXIT_YES


def cmd_kernel(args) -> int:
    g, _ = _load(args)
    kern, trace = kernelize(g, args.k)
    labels = canonical_labels(kern)
    out = [f"c kernel k={args.k} input n={g.n} m={g.m}"]
    out += [f"c {line}" for line in trace.to_lines()]
    out += [f"c map {new} {old}" for old, new in sorted(labels.items(), key=lambda kv: kv[1])]
    sys.stdout.write("\n".join(out) + "\n" + emit_graph(kern.relabel(labels)))
    return EXIT_YES


def cmd_tw_bound(args) -> int:
    g, _ = _load(args)
    out = bounded_width_or_coloring(g, args.k)
    if out.coloring is not None:
        rec = ResultRecord.build(g, out.coloring, verdict=True, k=args.k, decided_by="width-lemma-coloring")
        _print_record(rec, args.format)
    else:
        sys.stdout.write(f"c width {width(out.decomposition)} <= 2k = {2 * args.k}\n")
        sys.stdout.write(emit_td(out.decomposition, n=g.n))
    return EXIT_YES


def cmd_oracle(args) -> int:
    g, _ = _load(args)
    mu, f = brute_force_mu(g, cap=args.cap)
    rec = ResultRecord.build(g, f if args.witness else None, mu=mu, decided_by="oracle")
    _print_record(rec, args.format)
    return EXIT_YES


def cmd_validate_td(args) -> int:
    g, td = _load(args)
    if td is None:
        raise LCPError("validate-td needs --td")
    report = validate(g, td)
    if report.ok:
        print(f"valid width {width(td)}")
        return EXIT_YES
    for v in report.violations:
        print(f"violation {v}")
    return EXIT_NO


def cmd_gen(args) -> int:
    sys.stdout.write(emit_graph(generate(args.family, *args.params, seed=args.seed)))
    return EXIT_YES


def cmd_accept(args) -> int:
    from .acceptance import MUTANTS, AcceptanceConfig, run_acceptance

    config = AcceptanceConfig(seed=args.seed)
    if args.quick:
        config.exhaustive_n = 5
        config.random_samples = 100
        config.width_samples = 100
        config.nice_samples = 50
    if args.mutant:
        config.join = MUTANTS[args.mutant]
    only = set(args.only) if args.only else None
    results = run_acceptance(config, only=only, echo=print)
    return EXIT_YES if all(r.passed for r in results) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loadcolor", description="Exact solver for k-Load Coloring.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k=False, k_required=False, td=False):
        p.add_argument("--input", default="-", help="graph file in 'p lcp' format ('-' for stdin)")
        p.add_argument("--format", choices=("text", "kv"), default="text")
        p.add_argument("--witness", action="store_true", help="include a witness coloring")
        p.add_argument("--seed", type=int, default=0)
        if k:
            p.add_argument("--k", type=int, required=k_required, default=None if k_required else 1)
        if td:
            p.add_argument("--td", help="tree decomposition of the input ('s td' format)")

    common(sub.add_parser("solve", help="decide mu(G) >= k"), k=True, k_required=True, td=True)
    common(sub.add_parser("optimize", help="compute mu(G)"), td=True)
    common(sub.add_parser("kernel", help="emit the reduced instance and trace"), k=True, k_required=True)
    common(sub.add_parser("tw-bound", help="coloring or width-2k decomposition"), k=True, k_required=True)
    p = sub.add_parser("oracle", help="brute-force mu(G)")
    common(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    common(sub.add_parser("validate-td", help="check a tree decomposition"), td=True)

    p = sub.add_parser("gen", help="emit a generated instance")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", type=int, nargs="*")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("accept", help="run the acceptance criteria")
    p.add_argument("--seed", type=int, default=20240611)
    p.add_argument("--quick", action="store_true", help="smaller sweeps")
    p.add_argument("--only", type=int, nargs="*", choices=range(1, 9))
    p.add_argument("--mutant", choices=("join-no-offset",), help="run against a broken join")
    return parser


COMMANDS = {
    "solve": cmd_solve,
    "optimize": cmd_optimize,
    "kernel": cmd_kernel,
    "tw-bound": cmd_tw_bound,
    "oracle": cmd_oracle,
    "validate-td": cmd_validate_td,
    "gen": cmd_gen,
    "accept": cmd_accept,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    try:
        return COMMANDS[args.command](args)
    except (LCPError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
