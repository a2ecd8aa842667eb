"""Command line surface: analyze, graph, entropy, simulate, gshift.

Machines come either from the built-in corpus (``--machine NAME``) or from a
description file (``--file PATH``).  Reports are deterministic for fixed
inputs, flags and seed: no timestamps, stable key order, seeds echoed back.
Exit codes: 0 success, 1 analysis failure (oracle mismatch, conjugacy
failure, exhausted budget), 2 usage or machine-format errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import builtin_machine, corpus_names, _CORPUS
from .gshift import compile_gshift, gshift_to_json_dict, verify_conjugacy
from .machine import (
    HALTING_MODES,
    MachineError,
    TuringMachine,
    format_config,
    make_config,
    parse_machine,
    run,
    step,
)
from .regularity import certificate_to_json_dict, entropy_lower_bound
from .shift_analysis import ShiftGraph, graph_to_dot, shift_graph, shift_table_rows
from .words import (
    DEFAULT_NODE_BUDGET,
    BudgetExceededError,
    count_words_oracle,
    entropy_estimates,
    report_to_csv,
    report_to_json_dict,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmdyn",
        description="Analyze Turing machines as dynamical systems.",
    )
    parser.add_argument("--version", action="version", version=f"tmdyn {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--machine", metavar="NAME", help=f"built-in machine ({', '.join(corpus_names())})")
    source.add_argument("--file", metavar="PATH", help="machine description file")
    common.add_argument("--halting-mode", choices=HALTING_MODES, default="fixpoint")
    common.add_argument("--json", action="store_true", help="emit JSON where the default is text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (echoed in reports)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report: shift table, graphs, certificate")
    p.add_argument("--n-max", type=int, help="also append word counts for n = 1..N")
    p.add_argument("--conjugacy-samples", type=int, default=200)
    p.add_argument("--out", metavar="PATH", help="write the JSON report to a file instead of stdout")

    p = sub.add_parser("graph", parents=[common], help="per-direction shift graph as dot text")
    p.add_argument("--eps", required=True, choices=("+1", "-1"), help="shift direction")
    p.add_argument("--format", choices=("dot",), default="dot")

    p = sub.add_parser("entropy", parents=[common], help="word counts and entropy estimates")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check small n against the brute-force oracle")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument(
        "--initial-only",
        action="store_true",
        help="exploratory: count only orbits started in the initial state",
    )

    p = sub.add_parser("simulate", parents=[common], help="run the machine step by step")
    p.add_argument("--state", help="starting state (default: the initial state)")
    p.add_argument("--tape", default="", help="symbols to place on the tape")
    p.add_argument("--offset", type=int, default=0, help="cell index of the first tape symbol")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="print every configuration along the run")

    p = sub.add_parser("gshift", parents=[common], help="compiled generalized shift")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--verify", type=int, metavar="SAMPLES", help="check the conjugacy on random configurations")
    mode.add_argument("--dump", action="store_true", help="dump the compiled tables as JSON")

    return parser


def _load_machine(args) -> tuple[TuringMachine, dict]:
    if args.machine is not None:
        if args.machine not in _CORPUS:
            raise MachineError(
                f"unknown corpus machine {args.machine!r}; known: {', '.join(corpus_names())}"
            )
        text = _CORPUS[args.machine]
        machine = builtin_machine(args.machine, halting_mode=args.halting_mode)
        source = {"name": args.machine}
    else:
        text = Path(args.file).read_text(encoding="utf-8")
        machine = parse_machine(text, halting_mode=args.halting_mode)
        source = {"file": args.file}
    source["sha256"] = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return machine, source


def _machine_json(machine: TuringMachine, source: dict) -> dict:
    return {
        **source,
        "states": [q.name for q in machine.states],
        "alphabet": [s.name for s in machine.alphabet],
        "blank": machine.blank.name,
        "initial": machine.initial.name,
        "halting": machine.halting.name,
        "halting_mode": machine.halting_mode,
    }


def _graph_json(graph: ShiftGraph) -> dict:
    return {
        "direction": graph.direction,
        "vertices": [v.name for v in graph.vertices],
        "edges": [
            {"from": e.src.name, "to": e.dst.name, "label": e.label.name}
            for e in graph.edges
        ],
    }


def _dump(data: dict, stream=None) -> None:
    print(json.dumps(data, indent=2), file=stream or sys.stdout)


def cmd_analyze(machine: TuringMachine, source: dict, args) -> int:
    report = {
        "tool": {"name": "tmdyn", "version": __version__},
        "machine": _machine_json(machine, source),
        "seed": args.seed,
        "shift_table": shift_table_rows(machine),
        "graphs": {
            "+1": _graph_json(shift_graph(machine, 1)),
            "-1": _graph_json(shift_graph(machine, -1)),
        },
        "certificate": certificate_to_json_dict(entropy_lower_bound(machine)),
    }
    conj = verify_conjugacy(machine, samples=args.conjugacy_samples, seed=args.seed)
    report["conjugacy"] = {
        "samples": conj.samples,
        "passes": conj.passes,
        "failures": conj.failures,
        "seed": conj.seed,
    }
    if args.n_max is not None:
        if args.n_max < 1:
            print("error: --n-max must be >= 1", file=sys.stderr)
            return 2
        report["word_counts"] = report_to_json_dict(entropy_estimates(machine, args.n_max))
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 1 if conj.failures else 0


def cmd_graph(machine: TuringMachine, source: dict, args) -> int:
    direction = 1 if args.eps == "+1" else -1
    sys.stdout.write(graph_to_dot(shift_graph(machine, direction)))
    return 0


def cmd_entropy(machine: TuringMachine, source: dict, args) -> int:
    if args.n_max < 1:
        print("error: --n-max must be >= 1", file=sys.stderr)
        return 2
    report = entropy_estimates(
        machine, args.n_max, node_budget=args.node_budget, initial_only=args.initial_only
    )
    if args.oracle:
        for row in report.rows:
            if row.n > 4:
                continue
            expected = count_words_oracle(machine, row.n, initial_only=args.initial_only)
            if expected != row.count:
                print(
                    f"error: oracle mismatch at n={row.n}: "
                    f"count_words={row.count}, oracle={expected}",
                    file=sys.stderr,
                )
                return 1
    if args.json:
        _dump(report_to_json_dict(report))
    else:
        sys.stdout.write(report_to_csv(report))
    if report.budget_error:
        print(f"error: {report.budget_error}", file=sys.stderr)
        return 1
    return 0


def cmd_simulate(machine: TuringMachine, source: dict, args) -> int:
    if args.steps < 0:
        print("error: --steps must be >= 0", file=sys.stderr)
        return 2
    state = machine.state_named(args.state) if args.state else machine.initial
    config = make_config(machine, state, args.tape, args.offset)
    trail = [config]
    current = config
    for _ in range(args.steps):
        if current.state == machine.halting:
            break
        current = step(machine, current)
        trail.append(current)
    result = run(machine, config, args.steps)
    if args.json:
        def config_json(c):
            return {"state": c.state.name, "tape": {str(i): s.name for i, s in sorted(c.tape.items())}}
        _dump(
            {
                "initial": config_json(config),
                "trace": [config_json(c) for c in trail] if args.trace else None,
                "final": config_json(result.final),
                "steps_taken": result.steps_taken,
                "halted": result.halted,
                "halting_time": result.halting_time,
            }
        )
        return 0
    if args.trace:
        for i, c in enumerate(trail):
            print(f"{i:4d}  {format_config(machine, c)}")
    else:
        print(f"{0:4d}  {format_config(machine, config)}")
        if args.steps:
            print(f"{result.steps_taken:4d}  {format_config(machine, result.final)}")
    if result.halted:
        print(f"halted at time {result.halting_time}")
    else:
        print(f"did not halt within {args.steps} steps")
    return 0


def cmd_gshift(machine: TuringMachine, source: dict, args) -> int:
    if args.dump:
        _dump(gshift_to_json_dict(compile_gshift(machine)))
        return 0
    if args.verify < 1:
        print("error: --verify needs at least one sample", file=sys.stderr)
        return 2
    report = verify_conjugacy(machine, samples=args.verify, seed=args.seed)
    if args.json:
        _dump(
            {
                "samples": report.samples,
                "passes": report.passes,
                "failures": report.failures,
                "seed": report.seed,
            }
        )
    else:
        print(f"conjugacy check: {report.passes}/{report.samples} passed (seed {report.seed})")
        if report.first_counterexample is not None:
            print(f"first counterexample: {format_config(machine, report.first_counterexample)}")
    return 1 if report.failures else 0


_COMMANDS = {
    "analyze": cmd_analyze,
    "graph": cmd_graph,
    "entropy": cmd_entropy,
    "simulate": cmd_simulate,
    "gshift": cmd_gshift,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    try:
        machine, source = _load_machine(args)
    except (MachineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](machine, args=args, source=source)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MachineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
