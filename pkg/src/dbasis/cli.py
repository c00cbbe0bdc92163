"""Command line front end.

Subcommands: ``run`` (the basis pipeline), ``dualize`` (raw hypergraph
dualization), ``arrows`` (render the arrow table of the reduced
context), and ``concepts`` (enumerate closed sets; small tables only).

Rules go to stdout, the run summary and timing to stderr, so piping
the rules somewhere keeps them clean.  Exit codes: 0 success, 2 bad
input or bad option values, 3 unknown target attribute, 4 input too
large for an exact enumeration subcommand.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .basis import (BASIS_KINDS, RuleQuery, compute_basis, format_rule_jsonl,
                    format_rule_text, leave_k_out_rules)
from .context import ParseError, parse_context, reduce_context
from .dualization import dualize, format_edge_list, parse_edge_list
from .lattice import compute_arrows, render_arrow_table
from .oracle import OracleSizeError, enumerate_concepts


@dataclass(frozen=True)
class RunConfig:
    """Everything the ``run`` subcommand needs, as plain data."""

    input_path: str
    input_format: str = "dense-csv"
    target: str | None = None
    basis_kind: str = "d-basis"
    min_support: int = 0
    leave_out_k: int = 0
    output_format: str = "text"
    worker_count: int = 1
    full_binary: bool = False
    seed: int | None = None  # reserved for test generators; the pipeline is exact


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    started = time.perf_counter()
    ctx = parse_context(_read(cfg.input_path), cfg.input_format)
    query = RuleQuery(target=cfg.target, min_support=cfg.min_support,
                      basis_kind=cfg.basis_kind)
    if cfg.leave_out_k:
        rules = leave_k_out_rules(ctx, cfg.leave_out_k, query)
        result = None
    else:
        result = compute_basis(ctx, query, worker_count=cfg.worker_count,
                               full_binary=cfg.full_binary)
        rules = result.rules
    fmt = format_rule_jsonl if cfg.output_format == "jsonl" else format_rule_text
    aidx = ctx.attribute_index
    for rule in rules:
        print(fmt(rule, aidx), file=out)
    if result is not None:
        for line in result.summary_lines():
            print(line, file=err)
    else:
        print(f"table: {len(ctx.objects)} objects x "
              f"{len(ctx.attributes)} attributes", file=err)
        print(f"rules emitted: {len(rules)} "
              f"(leave-{cfg.leave_out_k}-out)", file=err)
    print(f"elapsed: {time.perf_counter() - started:.3f}s", file=err)
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = RunConfig(input_path=args.table, input_format=args.format,
                    target=args.target, basis_kind=args.basis,
                    min_support=args.min_support, leave_out_k=args.leave_out,
                    output_format=args.output, worker_count=args.workers,
                    full_binary=args.full_binary, seed=args.seed)
    return run(cfg)


def _cmd_dualize(args: argparse.Namespace) -> int:
    h = parse_edge_list(_read(args.edges))
    sys.stdout.write(format_edge_list(dualize(h)))
    return 0


def _cmd_arrows(args: argparse.Namespace) -> int:
    ctx = parse_context(_read(args.table), args.format)
    reduced, _ = reduce_context(ctx)
    print(render_arrow_table(reduced, compute_arrows(reduced)))
    return 0


def _cmd_concepts(args: argparse.Namespace) -> int:
    ctx = parse_context(_read(args.table), args.format)
    for concept in enumerate_concepts(ctx):
        extent = " ".join(sorted(concept.extent, key=ctx.object_index.__getitem__))
        intent = " ".join(sorted(concept.intent, key=ctx.attribute_index.__getitem__))
        print(f"{{{extent}}}\t{{{intent}}}")
    return 0


def _add_table_args(p: argparse.ArgumentParser):
    p.add_argument("table", help="input table path, or - for stdin")
    p.add_argument("--format", choices=("dense-csv", "fimi-transactions", "fimi"),
                   default="dense-csv", help="input format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dbasis",
        description="implication bases of a binary table via dualization")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="extract a rule basis from a table")
    _add_table_args(p)
    p.add_argument("--target", default=None,
                   help="only rules concluding this attribute")
    p.add_argument("--basis", choices=BASIS_KINDS, default="d-basis",
                   help="which rule set to emit")
    p.add_argument("--min-support", type=int, default=0,
                   help="drop rules below this support")
    p.add_argument("--leave-out", type=int, default=0, metavar="K",
                   help="leave-K-out high-confidence mode (K <= 3)")
    p.add_argument("--output", choices=("text", "jsonl"), default="text",
                   help="rule output format")
    p.add_argument("--workers", type=int, default=1,
                   help="sector dualization processes (0 = cpu count)")
    p.add_argument("--full-binary", action="store_true",
                   help="emit all binary order pairs, not just covers")
    p.add_argument("--seed", type=int, default=None,
                   help="reserved for generators; the pipeline itself is exact")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("dualize", help="minimal transversals of an edge list")
    p.add_argument("edges", help="edge list path, or - for stdin")
    p.set_defaults(func=_cmd_dualize)

    p = sub.add_parser("arrows", help="arrow table of the reduced context")
    _add_table_args(p)
    p.set_defaults(func=_cmd_arrows)

    p = sub.add_parser("concepts", help="closed sets of a small table")
    _add_table_args(p)
    p.set_defaults(func=_cmd_concepts)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"dbasis: {exc}", file=sys.stderr)
        return 2
    except OracleSizeError as exc:
        print(f"dbasis: {exc}", file=sys.stderr)
        return 4
    except KeyError as exc:
        print(f"dbasis: {exc.args[0]}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"dbasis: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
