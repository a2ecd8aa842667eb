"""Generalized shifts, machine compilation, and Cantor-set coordinates.

A generalized shift acts on bi-infinite sequences over a finite alphabet: it
reads the window at cells [-r, r], substitutes a replacement window for it,
and then shifts the whole sequence by an amount that also depends on the
window.  Every machine compiles to a radius-1 shift over the disjoint union
A = states + tape symbols: embedding a configuration as

    ... t(-2) t(-1) [state] t(0) t(1) ...      (state at cell 0)

turns one machine step into one shift step, cell for cell.  The compiled
tables are not taken on faith; :func:`verify_conjugacy` replays random
configurations through both routes and compares.

For coordinates, a sequence is block-encoded into bits and the bits are read
as base-3 digits in {0, 2}, one coordinate per tape side, which lands every
sequence on the square ternary Cantor set.  All Cantor arithmetic is exact
(:class:`fractions.Fraction`); no floats are involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping

from .machine import Configuration, State, Symbol, TuringMachine, step

Token = Hashable
Window = tuple


@dataclass(frozen=True)
class ASequence:
    """Sparse bi-infinite sequence over a finite alphabet with a default fill.

    Cells holding the default are never stored, so equality of the dataclass
    fields is equality of sequences.  The constructor canonicalizes and
    validates, so any ASequence in hand is well formed.
    """

    alphabet: tuple[Token, ...]
    default: Token
    cells: dict[int, Token]

    def __post_init__(self) -> None:
        if self.default not in self.alphabet:
            raise ValueError("default symbol must be in the alphabet")
        known = set(self.alphabet)
        clean = {}
        for i, v in self.cells.items():
            if v not in known:
                raise ValueError(f"cell {i} holds {v!r}, which is not in the alphabet")
            if v != self.default:
                clean[i] = v
        object.__setattr__(self, "cells", clean)

    def at(self, i: int) -> Token:
        return self.cells.get(i, self.default)

    def window(self, lo: int, hi: int) -> Window:
        return tuple(self.at(i) for i in range(lo, hi + 1))


@dataclass(frozen=True)
class GeneralizedShift:
    """Radius, plus sparse tables window -> replacement window and shift amount.

    Windows absent from ``rules`` substitute to themselves and shift by 0,
    so only behavior different from the identity is stored.
    """

    radius: int
    rules: dict[Window, tuple[Window, int]]

    def __post_init__(self) -> None:
        width = 2 * self.radius + 1
        for window, (replacement, _) in self.rules.items():
            if len(window) != width or len(replacement) != width:
                raise ValueError(f"windows must have length {width}")

    def apply_window(self, window: Window) -> tuple[Window, int]:
        return self.rules.get(window, (window, 0))


def gshift_step(shift: GeneralizedShift, seq: ASequence) -> ASequence:
    """One application: substitute at [-r, r], then shift the whole sequence.

    The shift is the left shift raised to the window's amount F: result cell
    i holds what the substituted sequence held at cell i + F.
    """
    r = shift.radius
    replacement, amount = shift.apply_window(seq.window(-r, r))
    cells = dict(seq.cells)
    for offset, value in zip(range(-r, r + 1), replacement):
        if value == seq.default:
            cells.pop(offset, None)
        else:
            cells[offset] = value
    if amount != 0:
        cells = {i - amount: v for i, v in cells.items()}
    return ASequence(seq.alphabet, seq.default, cells)


def sequence_alphabet(machine: TuringMachine) -> tuple[Token, ...]:
    """The compiled alphabet: blank first (it is the default), then the rest."""
    rest = tuple(s for s in machine.alphabet if s != machine.blank)
    return (machine.blank,) + rest + tuple(machine.states)


def embed(machine: TuringMachine, config: Configuration) -> ASequence:
    """Configuration -> sequence: state at cell 0, tape split around it.

    Cell i holds tape cell i - 1 for i >= 1 and tape cell i for i <= -1, so
    the head symbol sits immediately to the right of the state.
    """
    cells: dict[int, Token] = {0: config.state}
    for i, s in config.tape.items():
        cells[i + 1 if i >= 0 else i] = s
    return ASequence(sequence_alphabet(machine), machine.blank, cells)


class NotInImageError(ValueError):
    """The sequence is not the embedding of any configuration."""


def unembed(machine: TuringMachine, seq: ASequence) -> Configuration:
    """Inverse of :func:`embed` on its image; raises :class:`NotInImageError` off it."""
    state = seq.at(0)
    if not isinstance(state, State) or state not in machine.states:
        raise NotInImageError("cell 0 does not hold a state")
    tape = {}
    for i, v in seq.cells.items():
        if i == 0:
            continue
        if not isinstance(v, Symbol):
            raise NotInImageError(f"cell {i} holds a state symbol")
        tape[i - 1 if i >= 1 else i] = v
    return Configuration(state, tape)


def compile_gshift(machine: TuringMachine) -> GeneralizedShift:
    """Compile the machine into its radius-1 generalized shift.

    Only windows of shape (tape symbol, state, tape symbol) do anything; for
    a transition (q', w, move) read from the middle state and the right
    symbol, the replacement rotates the written symbol and the new state so
    that the subsequent global shift by ``move`` re-centers the state:

        move +1:  (a, q, b) -> (a, w, q'), shift +1
        move -1:  (a, q, b) -> (q', a, w), shift -1
        move  0:  (a, q, b) -> (a, q', w), shift  0

    Halting states follow the machine's halting mode, so the compiled map is
    total and in fixpoint mode halting windows are identities (not stored).
    Everything off the image of :func:`embed` is the identity, which is
    harmless because the image is forward invariant.
    """
    rules: dict[Window, tuple[Window, int]] = {}
    for q in machine.states:
        for left in machine.alphabet:
            for right in machine.alphabet:
                tr = machine.transition(q, right)
                q2, w = tr.next_state, tr.write
                if tr.move == 1:
                    replacement: Window = (left, w, q2)
                elif tr.move == -1:
                    replacement = (q2, left, w)
                else:
                    replacement = (left, q2, w)
                window: Window = (left, q, right)
                if replacement != window or tr.move != 0:
                    rules[window] = (replacement, tr.move)
    return GeneralizedShift(1, rules)


@dataclass(frozen=True)
class ConjugacyReport:
    samples: int
    passes: int
    failures: int
    seed: int
    first_counterexample: Configuration | None


def verify_conjugacy(
    machine: TuringMachine,
    samples: int = 1000,
    seed: int = 0,
    shift: GeneralizedShift | None = None,
) -> ConjugacyReport:
    """Replay random configurations through both routes and compare cell by cell.

    For each sample the check is: compiled shift applied to the embedding
    equals the embedding of the machine step.  Failures are counted, not
    raised; the first failing configuration is reported for debugging.  Pass
    ``shift`` to check a table other than the freshly compiled one.
    """
    if shift is None:
        shift = compile_gshift(machine)
    rng = random.Random(seed)
    passes = failures = 0
    first = None
    for _ in range(samples):
        state = rng.choice(machine.states)
        width = rng.randint(0, 6)
        offset = rng.randint(-4, 2)
        tape = {}
        for i in range(width):
            s = rng.choice(machine.alphabet)
            if s != machine.blank:
                tape[offset + i] = s
        config = Configuration(state, tape)
        via_shift = gshift_step(shift, embed(machine, config))
        via_machine = embed(machine, step(machine, config))
        if via_shift == via_machine:
            passes += 1
        else:
            failures += 1
            if first is None:
                first = config
    return ConjugacyReport(samples, passes, failures, seed, first)


# --- binary coding and Cantor coordinates ------------------------------------


def block_encode(seq: ASequence) -> dict[int, int]:
    """Fixed-width binary coding of a sequence; only 1-bits are stored.

    Each symbol takes w = ceil(log2 |alphabet|) bits; the symbol at cell i
    occupies bit cells [i*w, (i+1)*w), most significant bit first.  Indices
    are assigned with the default symbol at 0, so it encodes to all zeroes
    and finite support is preserved.
    """
    ordering = [seq.default] + [a for a in seq.alphabet if a != seq.default]
    index = {token: k for k, token in enumerate(ordering)}
    width = max(1, (len(ordering) - 1).bit_length())
    bits: dict[int, int] = {}
    for i, token in seq.cells.items():
        code = index[token]
        for j in range(width):
            bit = (code >> (width - 1 - j)) & 1
            if bit:
                bits[i * width + j] = 1
    return bits


@dataclass(frozen=True)
class CantorPoint:
    """A point of the square ternary Cantor set, held as exact rationals."""

    x: Fraction
    y: Fraction


def cantor_encode(bits: Mapping[int, int]) -> CantorPoint:
    """Map a finitely supported binary sequence onto the square Cantor set.

    The left half-sequence gives x = sum over k >= 1 of bit(-k) * 2 / 3**k
    and the right half gives y = sum over k >= 1 of bit(k-1) * 2 / 3**k, so
    both coordinates have ternary expansions using digits {0, 2} only, which
    makes the coding injective on finitely supported sequences.
    """
    x = Fraction(0)
    y = Fraction(0)
    for i, bit in bits.items():
        if bit not in (0, 1):
            raise ValueError(f"bit at {i} is {bit!r}, expected 0 or 1")
        if not bit:
            continue
        if i < 0:
            x += Fraction(2, 3 ** (-i))
        else:
            y += Fraction(2, 3 ** (i + 1))
    return CantorPoint(x, y)


def cantor_point_of_config(machine: TuringMachine, config: Configuration) -> CantorPoint:
    """Convenience composition: embed, block-encode, Cantor-encode."""
    return cantor_encode(block_encode(embed(machine, config)))


def format_sequence(seq: ASequence, radius: int | None = None) -> str:
    """Render as ``… a b . c d …`` with cell 0 right after the dot."""
    if radius is None:
        radius = max((abs(i) for i in seq.cells), default=0) + 1
    def name(token: Token) -> str:
        return token.name if isinstance(token, (State, Symbol)) else str(token)
    left = " ".join(name(seq.at(i)) for i in range(-radius, 0))
    right = " ".join(name(seq.at(i)) for i in range(0, radius + 1))
    return f"… {left} . {right} …"


def _token_json(token: Token) -> dict:
    if isinstance(token, State):
        return {"state": token.name}
    if isinstance(token, Symbol):
        return {"symbol": token.name}
    return {"value": str(token)}


def gshift_to_json_dict(shift: GeneralizedShift) -> dict:
    """JSON dump of the compiled tables (windows in deterministic order)."""
    def window_key(window: Window):
        return tuple(
            (0, t.id) if isinstance(t, Symbol) else (1, t.id) if isinstance(t, State) else (2, str(t))
            for t in window
        )
    rules = []
    for window in sorted(shift.rules, key=window_key):
        replacement, amount = shift.rules[window]
        rules.append(
            {
                "window": [_token_json(t) for t in window],
                "replacement": [_token_json(t) for t in replacement],
                "shift": amount,
            }
        )
    return {
        "radius": shift.radius,
        "default_rule": {"replacement": "identity", "shift": 0},
        "rules": rules,
    }
