"""Turing machines as dynamical systems on the space of configurations.

A machine acts on configurations (state, bi-infinite tape) with the head
pinned at cell 0: each step writes at cell 0 and then re-indexes the whole
tape by the move, so "the head moved right" is realized as "the tape shifted
left".  Tapes are stored sparsely and blank cells are never stored, which
keeps configurations canonical: two configurations are equal iff their
fields are equal.

Machines are immutable after construction and every operation here is a pure
function of its inputs, so everything is safe to share across threads.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

MOVE_LEFT = -1
MOVE_NONE = 0
MOVE_RIGHT = 1

MOVES = (MOVE_LEFT, MOVE_NONE, MOVE_RIGHT)

#: File-format move letters.  L and R name the head motion; on the pinned-head
#: tape, R (move = +1) shifts the tape one cell to the left and L (move = -1)
#: shifts it one cell to the right.
MOVE_LETTERS = {"L": MOVE_LEFT, "N": MOVE_NONE, "R": MOVE_RIGHT}
LETTER_OF_MOVE = {v: k for k, v in MOVE_LETTERS.items()}

#: How the one-step map treats a halting-state configuration:
#: "fixpoint" leaves it unchanged, "restart" jumps back to the initial state
#: with the tape untouched.
HALTING_MODES = ("fixpoint", "restart")


class MachineError(ValueError):
    """Base class for machine construction and parsing failures."""


class MachineValidationError(MachineError):
    """A structurally invalid machine (bad table, bad alphabet, ...)."""


class MachineFormatError(MachineError):
    """A malformed machine description document."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Symbol:
    """One tape symbol; ``id`` indexes the machine's alphabet."""

    id: int
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class State:
    """One machine state; ``id`` indexes the machine's state list."""

    id: int
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Transition:
    """Right-hand side of one table entry: next state, written symbol, move."""

    next_state: State
    write: Symbol
    move: int

    def __post_init__(self) -> None:
        if self.move not in MOVES:
            raise MachineValidationError(f"move must be -1, 0 or +1, got {self.move!r}")


@dataclass(frozen=True)
class TuringMachine:
    """A deterministic machine with a total table on (states \\ halting) x alphabet.

    ``rules`` maps (state, symbol) pairs to transitions; the halting state has
    no table entries of its own.  Use :meth:`transition` rather than ``rules``
    to look up a step: it extends the table to halting configurations per
    ``halting_mode``, which makes the one-step dynamics total.
    """

    states: tuple[State, ...]
    alphabet: tuple[Symbol, ...]
    blank: Symbol
    initial: State
    halting: State
    rules: dict[tuple[State, Symbol], Transition]
    halting_mode: str = "fixpoint"

    def __post_init__(self) -> None:
        if len(self.alphabet) < 2:
            raise MachineValidationError("alphabet must have >= 2 symbols")
        for seq, kind in ((self.states, "state"), (self.alphabet, "symbol")):
            names = [item.name for item in seq]
            if len(set(names)) != len(names):
                raise MachineValidationError(f"duplicate {kind} names")
            if [item.id for item in seq] != list(range(len(seq))):
                raise MachineValidationError(f"{kind} ids must be 0..{len(seq) - 1}")
        if self.blank not in self.alphabet:
            raise MachineValidationError("blank symbol is not in the alphabet")
        for q in (self.initial, self.halting):
            if q not in self.states:
                raise MachineValidationError(f"state {q.name!r} is not in the state list")
        if self.halting_mode not in HALTING_MODES:
            raise MachineValidationError(f"unknown halting mode {self.halting_mode!r}")
        expected = {(q, s) for q in self.states if q != self.halting for s in self.alphabet}
        for q, s in expected - set(self.rules):
            raise MachineValidationError(f"missing rule for ({q.name}, {s.name})")
        for q, s in set(self.rules) - expected:
            raise MachineValidationError(f"unexpected rule for ({q.name}, {s.name})")
        for (q, s), tr in self.rules.items():
            if tr.next_state not in self.states or tr.write not in self.alphabet:
                raise MachineValidationError(
                    f"rule for ({q.name}, {s.name}) references an unknown state or symbol"
                )

    def transition(self, state: State, symbol: Symbol) -> Transition:
        """Table lookup, extended to the halting state by ``halting_mode``."""
        if state == self.halting:
            if self.halting_mode == "fixpoint":
                return Transition(self.halting, symbol, MOVE_NONE)
            return Transition(self.initial, symbol, MOVE_NONE)
        return self.rules[(state, symbol)]

    def non_halting_states(self) -> tuple[State, ...]:
        return tuple(q for q in self.states if q != self.halting)

    def state_named(self, name: str) -> State:
        for q in self.states:
            if q.name == name:
                return q
        raise MachineError(f"unknown state {name!r}")

    def symbol_named(self, name: str) -> Symbol:
        for s in self.alphabet:
            if s.name == name:
                return s
        raise MachineError(f"unknown symbol {name!r}")

    def with_halting_mode(self, mode: str) -> "TuringMachine":
        return dataclasses.replace(self, halting_mode=mode)


@dataclass(frozen=True)
class Configuration:
    """Machine state plus sparse tape; the head always reads cell 0.

    Canonical form: the tape dict never stores the blank symbol, so dataclass
    equality is configuration equality.  The constructors in this module
    (:func:`make_config`, :func:`step`) always produce canonical tapes.
    """

    state: State
    tape: dict[int, Symbol]

    def head_symbol(self, blank: Symbol) -> Symbol:
        return self.tape.get(0, blank)


@dataclass(frozen=True)
class RunResult:
    """Outcome of a bounded run: where it stopped and whether it halted."""

    halted: bool
    steps_taken: int
    final: Configuration
    halting_time: int | None


def make_config(
    machine: TuringMachine,
    state: State,
    window: Union[str, Sequence[Union[str, Symbol]]] = "",
    offset: int = 0,
) -> Configuration:
    """Build a canonical configuration whose tape holds ``window`` from ``offset``.

    ``window`` may be a sequence of symbols or symbol names, a whitespace
    separated string of names, or (when every character is itself a symbol
    name) a plain string like ``"bgg"``.  Blank cells are not stored.
    """
    symbols = _resolve_window(machine, window)
    tape = {
        offset + i: s for i, s in enumerate(symbols) if s != machine.blank
    }
    if state not in machine.states:
        raise MachineError(f"state {state.name!r} is not a state of this machine")
    return Configuration(state, tape)


def _resolve_window(machine, window) -> list[Symbol]:
    if isinstance(window, str):
        if not window:
            return []
        tokens = window.split()
        names = {s.name for s in machine.alphabet}
        if all(t in names for t in tokens):
            return [machine.symbol_named(t) for t in tokens]
        if all(c in names for c in window):
            return [machine.symbol_named(c) for c in window]
        bad = next(t for t in tokens if t not in names)
        raise MachineError(f"unknown symbol {bad!r}")
    out = []
    for item in window:
        if isinstance(item, Symbol):
            if item not in machine.alphabet:
                raise MachineError(f"symbol {item.name!r} is not in the alphabet")
            out.append(item)
        else:
            out.append(machine.symbol_named(item))
    return out


def step(machine: TuringMachine, config: Configuration) -> Configuration:
    """One application of the global one-step map; total on all configurations.

    Writes at cell 0, then re-indexes the tape so the head is again at cell 0:
    move +1 decreases every stored index by one, move -1 increases it.
    """
    read = config.tape.get(0, machine.blank)
    tr = machine.transition(config.state, read)
    tape = dict(config.tape)
    if tr.write == machine.blank:
        tape.pop(0, None)
    else:
        tape[0] = tr.write
    if tr.move != MOVE_NONE:
        tape = {i - tr.move: s for i, s in tape.items()}
    return Configuration(tr.next_state, tape)


def run(machine: TuringMachine, config: Configuration, max_steps: int) -> RunResult:
    """Iterate :func:`step` until the halting state is reached or the budget runs out.

    Halting is undecidable, so the budget is mandatory; a run that does not
    halt within ``max_steps`` comes back with ``halted=False``, never an
    exception.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    current = config
    steps = 0
    while current.state != machine.halting and steps < max_steps:
        current = step(machine, current)
        steps += 1
    halted = current.state == machine.halting
    return RunResult(halted, steps, current, steps if halted else None)


def iterate(machine: TuringMachine, config: Configuration, steps: int) -> Iterator[Configuration]:
    """Yield the orbit segment config, step(config), ... of length ``steps + 1``."""
    current = config
    yield current
    for _ in range(steps):
        current = step(machine, current)
        yield current


def distance(x: Configuration, y: Configuration) -> Fraction:
    """Exact configuration metric: 1 on state mismatch, else 2**-(agreement radius).

    The radius is the largest k such that the tapes agree on every cell with
    |i| < k; it is finite whenever the (canonical, finitely supported) tapes
    differ.  Configurations of different machines simply compare unequal cell
    by cell; there is no cross-machine check here.
    """
    if x.state != y.state:
        return Fraction(1)
    if x.tape == y.tape:
        return Fraction(0)
    disagree = min(abs(i) for i in set(x.tape) | set(y.tape) if x.tape.get(i) != y.tape.get(i))
    return Fraction(1, 2**disagree)


def format_config(machine: TuringMachine, config: Configuration, radius: int | None = None) -> str:
    """Render a configuration as ``state | ... a b . c d ...`` with cell 0 after the dot."""
    if radius is None:
        radius = max((abs(i) for i in config.tape), default=0) + 1
    names = [config.tape.get(i, machine.blank).name for i in range(-radius, radius + 1)]
    left = " ".join(names[:radius])
    right = " ".join(names[radius:])
    return f"{config.state.name} | …{left} . {right}…"


# --- machine description documents ------------------------------------------

_HEADERS = ("states", "alphabet", "blank", "initial", "halting")


def parse_machine(text: str, halting_mode: str = "fixpoint") -> TuringMachine:
    """Parse the line-oriented machine format into a validated machine.

    Format: ``#`` starts a comment; the five headers ``states:``,
    ``alphabet:``, ``blank:``, ``initial:`` and ``halting:`` come first in
    any order; then one rule per line, ``state symbol -> state symbol move``
    with move one of L, R, N, or the shorthand ``state symbol -> HALT`` for
    "enter the halting state, keep the symbol, do not move".  Exactly one
    rule per (non-halting state, symbol) pair.

    All failures raise :class:`MachineFormatError` carrying the line number.
    """
    headers: dict[str, tuple[list[str], int]] = {}
    rule_lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            rule_lines.append((lineno, line.split()))
            continue
        if ":" in line:
            key, _, rest = line.partition(":")
            key = key.strip()
            if key not in _HEADERS:
                raise MachineFormatError(f"unknown header {key!r}", lineno)
            if rule_lines:
                raise MachineFormatError(f"header {key!r} appears after the first rule", lineno)
            if key in headers:
                raise MachineFormatError(f"duplicate header {key!r}", lineno)
            headers[key] = (rest.split(), lineno)
            continue
        raise MachineFormatError(f"cannot parse {line!r} (not a header or a rule)", lineno)

    missing = [h for h in _HEADERS if h not in headers]
    if missing:
        raise MachineFormatError(f"missing header line(s): {', '.join(missing)}")

    state_names, states_line = headers["states"]
    symbol_names, alpha_line = headers["alphabet"]
    for names, line, kind in ((state_names, states_line, "state"), (symbol_names, alpha_line, "symbol")):
        dup = _first_duplicate(names)
        if dup is not None:
            raise MachineFormatError(f"duplicate {kind} name {dup!r}", line)
        if not names:
            raise MachineFormatError(f"empty {kind} list", line)
    if len(symbol_names) < 2:
        raise MachineFormatError("alphabet must have >= 2 symbols", alpha_line)

    states = tuple(State(i, n) for i, n in enumerate(state_names))
    alphabet = tuple(Symbol(i, n) for i, n in enumerate(symbol_names))
    state_by_name = {q.name: q for q in states}
    symbol_by_name = {s.name: s for s in alphabet}

    def one_name(key: str, table: Mapping[str, object], what: str):
        names, line = headers[key]
        if len(names) != 1:
            raise MachineFormatError(f"header {key!r} needs exactly one name", line)
        if names[0] not in table:
            raise MachineFormatError(f"{key}: unknown {what} {names[0]!r}", line)
        return table[names[0]]

    blank = one_name("blank", symbol_by_name, "symbol")
    initial = one_name("initial", state_by_name, "state")
    halting = one_name("halting", state_by_name, "state")

    rules: dict[tuple[State, Symbol], Transition] = {}
    for lineno, tokens in rule_lines:
        if len(tokens) < 4 or tokens[2] != "->":
            raise MachineFormatError("rule must look like 'state symbol -> state symbol move'", lineno)
        if tokens[0] not in state_by_name:
            raise MachineFormatError(f"unknown state {tokens[0]!r}", lineno)
        if tokens[1] not in symbol_by_name:
            raise MachineFormatError(f"unknown symbol {tokens[1]!r}", lineno)
        q, s = state_by_name[tokens[0]], symbol_by_name[tokens[1]]
        if q == halting:
            raise MachineFormatError(f"rule for the halting state {q.name!r}", lineno)
        if tokens[3] == "HALT":
            if len(tokens) != 4:
                raise MachineFormatError("'-> HALT' takes no further tokens", lineno)
            tr = Transition(halting, s, MOVE_NONE)
        else:
            if len(tokens) != 6:
                raise MachineFormatError("rule must look like 'state symbol -> state symbol move'", lineno)
            if tokens[3] not in state_by_name:
                raise MachineFormatError(f"unknown state {tokens[3]!r}", lineno)
            if tokens[4] not in symbol_by_name:
                raise MachineFormatError(f"unknown symbol {tokens[4]!r}", lineno)
            if tokens[5] not in MOVE_LETTERS:
                raise MachineFormatError(f"unknown move {tokens[5]!r} (expected L, R or N)", lineno)
            tr = Transition(state_by_name[tokens[3]], symbol_by_name[tokens[4]], MOVE_LETTERS[tokens[5]])
        if (q, s) in rules:
            raise MachineFormatError(f"duplicate rule for ({q.name}, {s.name})", lineno)
        rules[(q, s)] = tr

    for q in states:
        if q == halting:
            continue
        for s in alphabet:
            if (q, s) not in rules:
                raise MachineFormatError(f"missing rule for ({q.name}, {s.name})")

    try:
        return TuringMachine(states, alphabet, blank, initial, halting, rules, halting_mode)
    except MachineValidationError as exc:  # pragma: no cover - parse checks mirror validation
        raise MachineFormatError(str(exc)) from exc


def _first_duplicate(names: Sequence[str]) -> str | None:
    seen = set()
    for n in names:
        if n in seen:
            return n
        seen.add(n)
    return None
