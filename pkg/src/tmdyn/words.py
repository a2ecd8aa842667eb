"""Exact counting of the (state, head symbol) trace words of length n.

The n-words of a machine are the sequences ((q_0, s_0), ..., (q_{n-1},
s_{n-1})) realized by some configuration: entry i is the state and the
symbol under the head after i steps.  Their counts grow submultiplicatively,
so log(count)/n decreases toward the machine's topological entropy; together
with a certificate from :mod:`tmdyn.regularity` each report row brackets the
entropy from above and below.

Two independent enumerators are provided.  The oracle fixes every tape cell
the head could possibly visit and simulates outright; it is exponentially
expensive and exists as ground truth.  The production counter assigns tape
cells lazily on first read, which only branches where the trace can actually
differ.  Starting states deliberately range over *all* states, halting one
included (its traces follow the configured halting extension); pass
``initial_only=True`` to explore the restriction to the initial state.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass

from .machine import Configuration, State, Symbol, TuringMachine, step
from .regularity import EntropyCertificate, certificate_to_json_dict, entropy_lower_bound

#: One n-word: ((state, symbol), ...) of length n.
TraceWord = tuple[tuple[State, Symbol], ...]

DEFAULT_NODE_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """The lazy enumerator visited more nodes than allowed; nothing was counted."""


def count_words_oracle(
    machine: TuringMachine, n: int, max_n: int = 5, initial_only: bool = False
) -> int:
    """Brute-force |S(n)|: enumerate every window assignment and simulate.

    In n - 1 steps the head cannot leave cells [-(n-1), n-1], so symbols
    outside that window never influence the trace and enumerating the
    |alphabet| ** (2n - 1) window assignments (times every starting state) is
    exhaustive.  Capped at ``max_n`` because of that cost.
    """
    if not 1 <= n <= max_n:
        raise ValueError(f"n must be in 1..{max_n} for the oracle (got {n})")
    cells = range(-(n - 1), n)
    traces: set[TraceWord] = set()
    starts = (machine.initial,) if initial_only else machine.states
    for q in starts:
        for window in itertools.product(machine.alphabet, repeat=2 * n - 1):
            config = Configuration(
                q, {i: s for i, s in zip(cells, window) if s != machine.blank}
            )
            trace = []
            for _ in range(n - 1):
                trace.append((config.state, config.tape.get(0, machine.blank)))
                config = step(machine, config)
            trace.append((config.state, config.tape.get(0, machine.blank)))
            traces.add(tuple(trace))
    return len(traces)


def _trace_set(
    machine: TuringMachine,
    n: int,
    node_budget: int,
    initial_only: bool,
) -> set[TraceWord]:
    if n < 1:
        raise ValueError("n must be >= 1")
    traces: set[TraceWord] = set()
    alphabet = machine.alphabet
    transition = machine.transition
    remaining = node_budget

    def explore(state: State, head: int, tape: dict[int, Symbol], trace: TraceWord) -> None:
        nonlocal remaining
        remaining -= 1
        if remaining < 0:
            raise BudgetExceededError(
                f"word enumeration for n={n} exceeded the node budget of {node_budget}"
            )
        symbol = tape.get(head)
        if symbol is None:
            # First read of this cell: branch over every assignment.
            for s in alphabet:
                tape[head] = s
                explore(state, head, tape, trace)
            del tape[head]
            return
        trace = trace + ((state, symbol),)
        if len(trace) == n:
            traces.add(trace)
            return
        tr = transition(state, symbol)
        tape[head] = tr.write
        explore(tr.next_state, head + tr.move, tape, trace)
        tape[head] = symbol

    starts = (machine.initial,) if initial_only else machine.states
    for q in starts:
        explore(q, 0, {}, ())
    return traces


def count_words(
    machine: TuringMachine,
    n: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    initial_only: bool = False,
) -> int:
    """Exact |S(n)| via lazy tape assignment; agrees with the oracle.

    Distinct window assignments can realize identical traces, so traces are
    materialized in a set, never counted as leaves.  Raises
    :class:`BudgetExceededError` when more than ``node_budget`` search nodes
    are visited; there is no silent truncation.
    """
    return len(_trace_set(machine, n, node_budget, initial_only))


def word_set(
    machine: TuringMachine,
    n: int,
    max_n: int = 4,
    node_budget: int = DEFAULT_NODE_BUDGET,
    initial_only: bool = False,
) -> set[TraceWord]:
    """The actual n-word set, for tests and inspection; capped at ``max_n``."""
    if not 1 <= n <= max_n:
        raise ValueError(f"n must be in 1..{max_n} for word_set (got {n})")
    return _trace_set(machine, n, node_budget, initial_only)


@dataclass(frozen=True)
class WordCountRow:
    n: int
    count: int
    estimate: float  # log(count) / n, an upper bound on the entropy


@dataclass(frozen=True)
class WordCountReport:
    """Per-n counts plus the certificate bound, bracketing the entropy.

    Every ``estimate`` is an upper bound (subadditivity of log counts) and
    the certificate bound, when present, is a lower bound.  If a row hit the
    node budget, ``budget_error`` explains it and the completed rows are
    still reported.
    """

    rows: tuple[WordCountRow, ...]
    certificate: EntropyCertificate
    budget_error: str | None = None


def entropy_estimates(
    machine: TuringMachine,
    n_max: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    initial_only: bool = False,
) -> WordCountReport:
    """Count words for n = 1..n_max and attach the certified lower bound.

    With ``initial_only`` the counts cover only orbits started in the initial
    state; that restriction is exploratory and the bracketing guarantee
    (every estimate >= certificate bound) applies to the full counts only.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rows = []
    budget_error = None
    for n in range(1, n_max + 1):
        try:
            count = count_words(machine, n, node_budget, initial_only)
        except BudgetExceededError as exc:
            budget_error = str(exc)
            break
        rows.append(WordCountRow(n, count, math.log(count) / n))
    return WordCountReport(tuple(rows), entropy_lower_bound(machine), budget_error)


def report_to_csv(report: WordCountReport) -> str:
    """CSV with columns n, count, e_n, min_e_n (estimates at 20 significant digits)."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["n", "count", "e_n", "min_e_n"])
    running = math.inf
    for row in report.rows:
        running = min(running, row.estimate)
        writer.writerow([row.n, row.count, f"{row.estimate:.20g}", f"{running:.20g}"])
    return out.getvalue()


def report_to_json_dict(report: WordCountReport) -> dict:
    running = math.inf
    rows = []
    for row in report.rows:
        running = min(running, row.estimate)
        rows.append({"n": row.n, "count": row.count, "e_n": row.estimate, "min_e_n": running})
    return {
        "rows": rows,
        "certificate": certificate_to_json_dict(report.certificate),
        "budget_error": report.budget_error,
    }
