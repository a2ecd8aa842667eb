import random

import pytest
from hypothesis import strategies as st

from tmdyn import builtin_machine, parse_machine, random_machine
from tmdyn.machine import Configuration


@pytest.fixture(scope="session")
def utm():
    return builtin_machine("utm_6_4")


@pytest.fixture(scope="session")
def wutm():
    return builtin_machine("wutm_6_2")


SINGLE_HALT_TEXT = """\
states: q0 halt
alphabet: 0 1
blank: 0
initial: q0
halting: halt
q0 0 -> halt 0 N
q0 1 -> halt 1 N
"""

RIGHT_RUNNER_TEXT = """\
states: q halt
alphabet: 0 1
blank: 0
initial: q
halting: halt
q 0 -> q 0 R
q 1 -> q 1 R
"""

NO_SHIFT_LOOP_TEXT = """\
states: q halt
alphabet: 0 1
blank: 0
initial: q
halting: halt
q 0 -> q 0 N
q 1 -> q 1 N
"""

# Every transition shifts, but each per-direction graph is a one-way street
# (q1 -> q2 going right, q2 -> q1 going left), so neither direction has a cycle.
ALTERNATOR_TEXT = """\
states: q1 q2 halt
alphabet: 0 1
blank: 0
initial: q1
halting: halt
q1 0 -> q2 0 R
q1 1 -> q2 1 R
q2 0 -> q1 0 L
q2 1 -> q1 1 L
"""


@pytest.fixture(scope="session")
def single_halt():
    return parse_machine(SINGLE_HALT_TEXT)


@pytest.fixture(scope="session")
def right_runner():
    return parse_machine(RIGHT_RUNNER_TEXT)


@pytest.fixture(scope="session")
def no_shift_loop():
    return parse_machine(NO_SHIFT_LOOP_TEXT)


@pytest.fixture(scope="session")
def alternator():
    return parse_machine(ALTERNATOR_TEXT)


def machines(max_states=4, max_symbols=3, halt_prob=0.15):
    """Strategy producing seeded random machines."""
    return st.builds(
        lambda seed: random_machine(random.Random(seed), max_states, max_symbols, halt_prob),
        st.integers(0, 2**32 - 1),
    )


@st.composite
def machine_configs(draw, **kwargs):
    """Strategy producing (machine, canonical configuration) pairs."""
    machine = draw(machines(**kwargs))
    state = draw(st.sampled_from(machine.states))
    cells = draw(
        st.dictionaries(st.integers(-6, 6), st.sampled_from(machine.alphabet), max_size=8)
    )
    tape = {i: s for i, s in cells.items() if s != machine.blank}
    return machine, Configuration(state, tape)
