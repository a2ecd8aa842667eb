import math
import random
from collections import deque

import pytest
from hypothesis import given, settings

from tmdyn import (
    RegularWitness,
    StrongWitness,
    certificate_to_json_dict,
    check_regularity,
    check_strong_regularity,
    count_words,
    entropy_lower_bound,
    random_machine,
    shift_graph,
    verify_witness,
)
from tmdyn.regularity import NO_WITNESS, REGULAR, STRONGLY_REGULAR

from conftest import machines


def brute_force_regular(machine):
    """Ground truth: two closed walks from a common vertex with different first edges.

    A closed walk from v exists through an out-edge e exactly when v is
    reachable from e's endpoint within 2 * |edges| further steps, so the pair
    search reduces to bounded reachability per out-edge.
    """
    for direction in (1, -1):
        graph = shift_graph(machine, direction)
        bound = 2 * len(graph.edges)
        for v in graph.vertices:
            closing = [
                e for e in graph.out_edges(v) if _reachable(graph, e.dst, v, bound - 1)
            ]
            if len(closing) >= 2:
                return True
    return False


def _reachable(graph, src, dst, bound):
    if bound < 0:
        return False
    if src == dst:
        return True
    seen = {src}
    frontier = deque([(src, 0)])
    while frontier:
        v, depth = frontier.popleft()
        if depth == bound:
            continue
        for e in graph.out_edges(v):
            if e.dst == dst:
                return True
            if e.dst not in seen:
                seen.add(e.dst)
                frontier.append((e.dst, depth + 1))
    return False


# --- strong regularity ----------------------------------------------------------


def test_utm_strong_witness(utm):
    w = check_strong_regularity(utm)
    assert w is not None
    assert w.direction == 1
    assert {s.name for s in w.symbols} == {"b", "d"}
    assert utm.state_named("u2") in w.states
    assert {q.name for q in w.states} == {"u2", "u4"}  # the greatest block
    assert verify_witness(utm, w)


def test_wutm_not_strongly_regular(wutm):
    assert check_strong_regularity(wutm) is None


def test_full_table_block(right_runner):
    w = check_strong_regularity(right_runner)
    assert w is not None
    assert w.states == frozenset({right_runner.state_named("q")})
    assert w.symbols == frozenset(right_runner.alphabet)


def test_verify_rejects_broken_block(utm):
    w = check_strong_regularity(utm)
    bad = StrongWitness(
        w.direction, w.states, frozenset({utm.symbol_named("b"), utm.symbol_named("g")})
    )
    assert not verify_witness(utm, bad)  # (u2, g) exits the block
    assert not verify_witness(utm, StrongWitness(w.direction, frozenset(), w.symbols))
    assert not verify_witness(utm, StrongWitness(0, w.states, w.symbols))


def test_alphabet_cap():
    with pytest.raises(ValueError, match="cap"):
        check_strong_regularity(
            random_machine(random.Random(0), max_states=2, max_symbols=2), max_alphabet=1
        )


# --- regularity -----------------------------------------------------------------


def test_wutm_regular_witness(wutm):
    w = check_regularity(wutm)
    assert w is not None
    assert w.direction == 1
    assert w.base.name == "u4"
    names = lambda walk: [(q.name, s.name) for q, s in walk]
    assert {tuple(names(w.walk_a)), tuple(names(w.walk_b))} == {
        (("u4", "g"), ("u5", "b")),
        (("u4", "b"), ("u6", "b")),
    }
    assert (w.cost_a, w.cost_b) == (3, 3)
    assert verify_witness(wutm, w)


def test_utm_regular_too(utm):
    w = check_regularity(utm)
    assert w is not None
    assert verify_witness(utm, w)


def test_alternator_not_regular(alternator):
    assert check_regularity(alternator) is None
    assert not brute_force_regular(alternator)


def test_verify_rejects_identical_walks(wutm):
    w = check_regularity(wutm)
    assert not verify_witness(
        wutm, RegularWitness(w.direction, w.base, w.walk_a, w.walk_a, w.cost_a, w.cost_a)
    )


def test_verify_rejects_wrong_cost(wutm):
    w = check_regularity(wutm)
    assert not verify_witness(
        wutm, RegularWitness(w.direction, w.base, w.walk_a, w.walk_b, w.cost_a + 1, w.cost_b)
    )


def test_self_loop_doubling():
    # one state whose two symbols both loop right: two doubled self-loop walks
    from tmdyn import parse_machine

    m = parse_machine(
        "states: q halt\nalphabet: a b\nblank: a\ninitial: q\nhalting: halt\n"
        "q a -> q b R\nq b -> q a R\n"
    )
    w = check_regularity(m)
    assert w is not None
    assert len(w.walk_a) == 2 and len(w.walk_b) == 2
    assert w.walk_a[0] == w.walk_a[1]
    assert verify_witness(m, w)
    assert (w.cost_a, w.cost_b) == (3, 3)


@given(machines())
@settings(max_examples=150, deadline=None)
def test_scc_criterion_matches_brute_force(machine):
    assert (check_regularity(machine) is not None) == brute_force_regular(machine)


@given(machines())
@settings(max_examples=100, deadline=None)
def test_search_results_verify(machine):
    strong = check_strong_regularity(machine)
    if strong is not None:
        assert verify_witness(machine, strong)
    regular = check_regularity(machine)
    if regular is not None:
        assert verify_witness(machine, regular)


@given(machines())
@settings(max_examples=100, deadline=None)
def test_strongly_regular_implies_regular(machine):
    if check_strong_regularity(machine) is not None:
        assert check_regularity(machine) is not None


# --- certificates ----------------------------------------------------------------


def test_utm_certificate_is_log2(utm):
    cert = entropy_lower_bound(utm)
    assert cert.verdict == STRONGLY_REGULAR
    assert (cert.log_of, cert.over) == (2, 1)
    assert cert.bound_float() == pytest.approx(math.log(2))
    assert cert.bound_text() == "log 2"


def test_wutm_certificate_is_log2_over_3(wutm):
    cert = entropy_lower_bound(wutm)
    assert cert.verdict == REGULAR
    assert (cert.log_of, cert.over) == (2, 3)
    assert cert.bound_text() == "log 2 / 3"


def test_no_witness_certificate(alternator):
    cert = entropy_lower_bound(alternator)
    assert cert.verdict == NO_WITNESS
    assert cert.log_of is None and cert.over is None and cert.witness is None
    assert cert.bound_float() is None
    doc = certificate_to_json_dict(cert)
    assert doc["bound"] is None and doc["witness"] is None


def test_certificate_json_round(wutm):
    doc = certificate_to_json_dict(entropy_lower_bound(wutm))
    assert doc["verdict"] == "regular"
    assert doc["bound"] == {"log_of": 2, "over": 3, "decimal": pytest.approx(math.log(2) / 3)}
    assert doc["witness"]["base"] == "u4"


@given(machines(max_states=3, max_symbols=2))
@settings(max_examples=40, deadline=None)
def test_bound_is_consistent_with_word_counts(machine):
    cert = entropy_lower_bound(machine)
    if cert.verdict == STRONGLY_REGULAR:
        for n in (1, 2, 3):
            assert count_words(machine, n) >= cert.log_of**n
    elif cert.verdict == REGULAR and cert.over <= 5:
        assert count_words(machine, cert.over) >= 2
