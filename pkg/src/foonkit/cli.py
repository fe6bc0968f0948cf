"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse/input error, 3 retrieval failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import jsonschema

from . import corpus
from .core import UniversalFOON, graph_stats
from .export import from_json, to_dot, to_json
from .formats import ParseError, parse_kitchen, parse_motion_rates, parse_subgraph, serialize_subgraph
from .retrieval import (
    AmbiguousGoal,
    GBFS_H1,
    RetrievalError,
    RetrievalRequest,
    resolve_goal,
    retrieve,
    validate_task_tree,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_RETRIEVAL = 0, 1, 2, 3

TABLE_GOALS = ("sweet potato", "ice", "whipped cream", "macaroni", "greek salad")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_units(path: str):
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse_subgraph(text, source=path)


def load_foon(paths: Sequence[str]) -> UniversalFOON:
    foon = UniversalFOON()
    for path in paths:
        foon.add(read_units(path))
    return foon.freeze()


def _default_rate(args) -> float:
    if args.default_rate is not None:
        return args.default_rate
    env = os.environ.get("FOON_DEFAULT_RATE")
    if env is None:
        return 0.0
    try:
        value = float(env)
    except ValueError:
        raise UsageError(f"FOON_DEFAULT_RATE must be a number, got {env!r}") from None
    if not 0.0 <= value <= 1.0:
        raise UsageError(f"FOON_DEFAULT_RATE must lie in [0, 1], got {value}")
    return value


def _load_rates(args):
    if not args.rates:
        return None
    text = Path(args.rates).read_text(encoding="utf-8")
    return parse_motion_rates(text, _default_rate(args), source=args.rates)


def _write(payload: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def _print_stats(foon: UniversalFOON) -> None:
    stats = graph_stats(foon)
    print(f"units: {stats.units}")
    print(f"object nodes: {stats.object_nodes}")
    print(f"motions: {stats.motions}")


def cmd_merge(args) -> int:
    foon = load_foon(args.inputs)
    _write(serialize_subgraph(foon.units), args.output)
    if args.output:
        _print_stats(foon)
    else:
        sys.stderr.write("".join(f"{k}: {v}\n" for k, v in graph_stats(foon)._asdict().items()))
    return EXIT_OK


def cmd_stats(args) -> int:
    _print_stats(load_foon(args.inputs))
    return EXIT_OK


def cmd_export(args) -> int:
    units = read_units(args.input)
    if args.format == "dot":
        payload = to_dot(units, name=Path(args.input).stem)
    elif args.format == "json":
        payload = to_json(units)
    else:
        payload = serialize_subgraph(units)
    _write(payload, args.output)
    return EXIT_OK


def cmd_retrieve(args) -> int:
    if args.algo in ("h1", GBFS_H1) and not args.rates:
        raise UsageError("--algo h1 needs --rates")
    if args.depth_limit < 1:
        raise UsageError("--depth-limit must be at least 1")
    foon = load_foon([args.foon])
    kitchen = parse_kitchen(Path(args.kitchen).read_text(encoding="utf-8"), source=args.kitchen)
    rates = _load_rates(args)
    goal = resolve_goal(foon, args.goal_name, args.goal_state, kitchen)
    request = RetrievalRequest(goal, kitchen, args.algo, args.depth_limit, rates)
    tree = retrieve(foon, request)
    if args.format == "dot":
        payload = to_dot(tree.steps, name="task tree")
    elif args.format == "json":
        payload = to_json(tree.steps, goal=tree.goal)
    else:
        payload = serialize_subgraph(tree.steps)
    _write(payload, args.output)
    sys.stderr.write(f"task tree size: {len(tree.steps)}\n")
    if tree.bound is not None:
        sys.stderr.write(f"depth bound: {tree.bound}\n")
    return EXIT_OK


def cmd_compare(args) -> int:
    """Functional-unit counts per goal for all three algorithms; nothing is asserted."""
    foon = load_foon([args.foon])
    kitchen = parse_kitchen(Path(args.kitchen).read_text(encoding="utf-8"), source=args.kitchen)
    rates = _load_rates(args)
    goals = args.goal or list(TABLE_GOALS)
    algorithms = ["ids", "gbfs-h1", "gbfs-h2"]
    print("goal\t" + "\t".join(algorithms))
    for name in goals:
        cells = []
        try:
            goal = _dish_goal(foon, name, kitchen)
        except RetrievalError as exc:
            print(f"{name}\t" + "\t".join([type(exc).__name__] * 3))
            continue
        for algo in algorithms:
            try:
                tree = retrieve(foon, RetrievalRequest(goal, kitchen, algo, args.depth_limit, rates))
            except RetrievalError as exc:
                cells.append(type(exc).__name__)
                continue
            mark = "" if validate_task_tree(tree) else "!"
            cells.append(f"{len(tree.steps)}{mark}")
        print(f"{name}\t" + "\t".join(cells))
    return EXIT_OK


def _dish_goal(foon: UniversalFOON, name: str, kitchen):
    # a bare dish name usually matches raw ingredients too; keep nodes nothing consumes
    try:
        return resolve_goal(foon, name, (), kitchen)
    except AmbiguousGoal as exc:
        finals = [n for n in exc.candidates if n.key in foon.produced_by and n.key not in foon.consumed_by]
        if len(finals) == 1:
            return finals[0]
        raise


def cmd_corpus(args) -> int:
    if args.extract:
        for path in corpus.extract(args.extract):
            print(path)
    else:
        for filename in corpus.corpus_files():
            print(filename)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="foonkit", description="Merge FOON subgraphs and retrieve task trees.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("merge", help="merge subgraph files into a universal FOON")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("stats", help="print unit, object-node and motion counts")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", help="convert a FOON or task-tree file to DOT, JSON or FOON text")
    p.add_argument("input")
    p.add_argument("--format", choices=("dot", "json", "foon"), default="dot")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    def retrieval_flags(p):
        p.add_argument("foon")
        p.add_argument("kitchen")
        p.add_argument("--depth-limit", type=int, default=50)
        p.add_argument("--rates", help="motion success-rate file")
        p.add_argument("--default-rate", type=float, help="rate for motions missing from --rates")

    p = sub.add_parser("retrieve", help="retrieve a task tree for a goal node")
    retrieval_flags(p)
    p.add_argument("--goal-name", required=True)
    p.add_argument("--goal-state", action="append", default=[],
                   help="state of the goal, S-line syntax, e.g. 'contains {a, b}'; repeatable")
    p.add_argument("--algo", choices=("ids", "h1", "h2", "gbfs-h1", "gbfs-h2"), default="ids")
    p.add_argument("--format", choices=("foon", "json", "dot"), default="foon")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("compare", help="tree sizes per goal for every algorithm")
    retrieval_flags(p)
    p.add_argument("--goal", action="append", help="goal object name; repeatable")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("corpus", help="list or extract the bundled synthetic corpus")
    p.add_argument("--extract", metavar="DIR")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"foonkit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"foonkit: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError, jsonschema.ValidationError) as exc:
        print(f"foonkit: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except RetrievalError as exc:
        print(f"foonkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RETRIEVAL


if __name__ == "__main__":
    sys.exit(main())
