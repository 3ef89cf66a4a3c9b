import random

import pytest

from conftest import random_core_formula
from tracelogic import oracle
from tracelogic.afa import translate_afa
from tracelogic.errors import BudgetError
from tracelogic.fa import (
    build_dfa,
    complement,
    dealternate,
    determinize,
    dfa_accepts,
    enumerate_accepted,
    equivalent,
    is_empty,
    minimize,
    nfa_accepts,
)
from tracelogic.formula import nnf, to_dynamic_core
from tracelogic.parser import parse_formula, parse_trace
from tracelogic.trace import Trace, enumerate_traces, format_trace

AP = ("a", "b")


def _afa(src, ap=None):
    return translate_afa(to_dynamic_core(nnf(parse_formula(src))), ap)


def test_dealternate_accepts():
    nfa = dealternate(_afa("a"))
    assert nfa_accepts(nfa, parse_trace("{a};{}")) is True
    assert nfa_accepts(nfa, parse_trace("{}")) is False
    assert nfa.states[0] == frozenset({0})


def test_dealternate_empty_set_state():
    nfa = dealternate(_afa("<tt> tt"))
    # after the step fires, the remaining obligation is empty and accepting
    t = parse_trace("{}")
    assert nfa_accepts(nfa, t) is True
    assert frozenset() in nfa.states
    empty_idx = nfa.states.index(frozenset())
    assert nfa.accepting[empty_idx]


def test_nfa_accepting_matches_final_values():
    automaton = _afa("[tt*] a & <tt> b")
    nfa = dealternate(automaton)
    for idx, members in enumerate(nfa.states):
        assert nfa.accepting[idx] == all(automaton.final[q] for q in members)


def test_determinize_keeps_deterministic_count():
    # dealternation of `tt` yields a complete deterministic NFA; the subset
    # construction then adds no states at all
    nfa = dealternate(_afa("tt"))
    assert all(len(ts) == 1 for ts in nfa.transitions.values())
    dfa = determinize(nfa)
    assert dfa.n_states == len(nfa.states)
    # incomplete deterministic NFAs gain at most the rejecting sink
    nfa = dealternate(_afa("a"))
    assert all(len(ts) <= 1 for ts in nfa.transitions.values())
    assert determinize(nfa).n_states <= len(nfa.states) + 1


def test_eventually_two_states():
    dfa = minimize(determinize(dealternate(_afa("F a"))))
    assert dfa.n_states == 2


def test_minimize_idempotent_and_examples():
    dfa = build_dfa(parse_formula("G a"))
    assert dfa.n_states == 2
    assert minimize(dfa) == dfa
    trivial = build_dfa(parse_formula("tt"))
    assert trivial.n_states == 1
    assert trivial.accepting == (True,)


def test_minimize_seed_independent():
    rng = random.Random(47)
    for _ in range(40):
        f = random_core_formula(rng, rng.randint(1, 9))
        dfa = determinize(dealternate(translate_afa(f, AP)))
        baseline = minimize(dfa)
        for seed in (0, 1, 99):
            assert minimize(dfa, seed=seed) == baseline


def test_minimize_language_preserving():
    rng = random.Random(53)
    traces = list(enumerate_traces(AP, 3))
    for _ in range(40):
        f = random_core_formula(rng, rng.randint(1, 9))
        dfa = determinize(dealternate(translate_afa(f, AP)))
        small = minimize(dfa)
        assert small.n_states <= dfa.n_states
        for t in traces:
            assert dfa_accepts(small, t) == dfa_accepts(dfa, t)


def test_accept_examples():
    assert dfa_accepts(build_dfa(parse_formula("tt")), parse_trace("eps")) is True
    assert dfa_accepts(build_dfa(parse_formula("a")), parse_trace("{}")) is False


def test_equivalences():
    assert equivalent(parse_formula("F a"), parse_formula("<tt*> a")) == (True, None)
    assert equivalent(parse_formula("a U b"), parse_formula("<(a? ; tt)*> b")) == (True, None)
    same, cex = equivalent(parse_formula("X a"), parse_formula("WX a"))
    assert same is False
    assert cex == Trace(())


def test_equivalent_reflexive_symmetric():
    rng = random.Random(59)
    for _ in range(15):
        f = random_core_formula(rng, rng.randint(1, 8))
        g = random_core_formula(rng, rng.randint(1, 8))
        assert equivalent(f, f)[0] is True
        assert equivalent(f, g)[0] == equivalent(g, f)[0]


def test_is_empty():
    empty, witness = is_empty(build_dfa(parse_formula("ff")))
    assert empty is True and witness is None
    empty, witness = is_empty(build_dfa(parse_formula("a & !a")))
    assert empty is True
    empty, witness = is_empty(build_dfa(parse_formula("<tt> a")))
    assert empty is False
    assert len(witness) == 2
    assert oracle.holds(parse_formula("<tt> a"), witness)


def test_enumerate_accepted():
    dfa = build_dfa(parse_formula("a"), ("a",))
    accepted = [format_trace(t) for t in enumerate_accepted(dfa, 2)]
    assert accepted == ["{a}", "{a};{}", "{a};{a}"]
    assert list(enumerate_accepted(build_dfa(parse_formula("ff"), ("a",)), 3)) == []
    everything = [format_trace(t) for t in enumerate_accepted(build_dfa(parse_formula("tt"), ("a",)), 1)]
    assert everything == ["eps", "{}", "{a}"]


def test_complement_partitions():
    rng = random.Random(61)
    total = len(list(enumerate_traces(AP, 3)))
    for _ in range(20):
        f = random_core_formula(rng, rng.randint(1, 8))
        dfa = build_dfa(f, AP)
        kept = sum(1 for _ in enumerate_accepted(dfa, 3))
        dropped = sum(1 for _ in enumerate_accepted(complement(dfa), 3))
        assert kept + dropped == total


def test_budget_error():
    with pytest.raises(BudgetError):
        dealternate(_afa("[tt*] (a | <tt> b)"), max_states=1)
    with pytest.raises(BudgetError):
        determinize(dealternate(_afa("F a & F b")), max_states=1)


def test_four_way_agreement_sampled():
    rng = random.Random(67)
    traces = list(enumerate_traces(AP, 3))
    for _ in range(60):
        f = random_core_formula(rng, rng.randint(1, 9))
        automaton = translate_afa(f, AP)
        nfa = dealternate(automaton)
        dfa = determinize(nfa)
        small = minimize(dfa)
        for t in traces:
            expected = oracle.holds(f, t)
            assert automaton.accepts(t) == expected
            assert nfa_accepts(nfa, t) == expected
            assert dfa_accepts(dfa, t) == expected
            assert dfa_accepts(small, t) == expected
