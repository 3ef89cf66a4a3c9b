"""Dealternation, determinization, minimization, and language queries.

The NFA states are antichain-pruned sets of AFA states; the DFA comes from
the usual subset construction with an explicit rejecting sink so that its
transition function is total.  Minimization is partition refinement
followed by a breadth-first renumbering, which makes minimal automata
canonical: two DFAs are isomorphic exactly when their minimized forms are
equal.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from . import formula as fm
from .afa import AFA, minimal_sets, translate_afa
from .errors import AlphabetMismatchError, BudgetError
from .trace import Trace, enumerate_traces, letters_over

DEFAULT_BUDGET = 2**20


@dataclass
class NFA:
    ap: tuple[str, ...]
    letters: tuple[frozenset, ...]
    states: list[frozenset]  # sets of AFA ordinals
    transitions: dict  # (state index, letter) -> tuple of successor indices
    accepting: tuple[bool, ...]
    initial: int = 0


@dataclass(frozen=True)
class DFA:
    ap: tuple[str, ...]
    letters: tuple[frozenset, ...]
    transitions: tuple[tuple[int, ...], ...]  # [state][letter index]
    accepting: tuple[bool, ...]
    initial: int = 0

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def letter_index(self, letter) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise AlphabetMismatchError(f"letter {sorted(letter)} outside alphabet {list(self.ap)}") from None


def _conjunction_successors(automaton: AFA, members, letter) -> list[frozenset]:
    """Minimal satisfying sets of the conjoined transition images of `members`."""
    current: list[frozenset] = [frozenset()]
    for q in sorted(members):
        q_sets = minimal_sets(automaton.delta(q, letter))
        if not q_sets:
            return []
        merged = {a | b for a in current for b in q_sets}
        current = [s for s in merged if not any(t < s for t in merged)]
    return sorted(current, key=lambda s: (len(s), sorted(s)))


def dealternate(automaton: AFA, max_states: int = DEFAULT_BUDGET) -> NFA:
    """Language-preserving conversion of an AFA into an NFA over state sets."""
    letters = tuple(letters_over(automaton.ap))
    start = frozenset((automaton.initial,))
    states: list[frozenset] = [start]
    index: dict = {start: 0}
    transitions: dict = {}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for letter in letters:
            successors = _conjunction_successors(automaton, states[s], letter)
            targets = []
            for succ in successors:
                t = index.get(succ)
                if t is None:
                    if len(states) >= max_states:
                        raise BudgetError(f"dealternation exceeded {max_states} states")
                    t = len(states)
                    states.append(succ)
                    index[succ] = t
                    queue.append(t)
                targets.append(t)
            transitions[(s, letter)] = tuple(targets)
    accepting = tuple(all(automaton.final[q] for q in s) for s in states)
    return NFA(automaton.ap, letters, states, transitions, accepting)


def nfa_accepts(nfa: NFA, t: Trace) -> bool:
    alphabet = set(nfa.ap)
    current = {nfa.initial}
    for letter in t.letters:
        if not letter <= alphabet:
            raise AlphabetMismatchError(f"letter {sorted(letter)} outside alphabet {list(nfa.ap)}")
        current = {t2 for s in current for t2 in nfa.transitions[(s, letter)]}
        if not current:
            return False
    return any(nfa.accepting[s] for s in current)


def determinize(nfa: NFA, max_states: int = DEFAULT_BUDGET) -> DFA:
    """Subset construction; the empty macro-state acts as the rejecting sink."""
    letters = nfa.letters
    start = frozenset((nfa.initial,))
    macro_states: list[frozenset] = [start]
    index: dict = {start: 0}
    rows: list[list[int]] = []
    queue = deque([0])
    while queue:
        s = queue.popleft()
        while len(rows) <= s:
            rows.append([])
        row = []
        for letter in letters:
            target = frozenset(t for member in macro_states[s] for t in nfa.transitions[(member, letter)])
            t_idx = index.get(target)
            if t_idx is None:
                if len(macro_states) >= max_states:
                    raise BudgetError(f"determinization exceeded {max_states} states")
                t_idx = len(macro_states)
                macro_states.append(target)
                index[target] = t_idx
                queue.append(t_idx)
            row.append(t_idx)
        rows[s] = row
    accepting = tuple(any(nfa.accepting[m] for m in s) for s in macro_states)
    return DFA(nfa.ap, letters, tuple(tuple(r) for r in rows), accepting)


def dfa_accepts(dfa: DFA, t: Trace) -> bool:
    state = dfa.initial
    for letter in t.letters:
        state = dfa.transitions[state][dfa.letter_index(letter)]
    return dfa.accepting[state]


def _reachable(dfa: DFA) -> list[int]:
    seen = [dfa.initial]
    index = {dfa.initial}
    for s in seen:
        for target in dfa.transitions[s]:
            if target not in index:
                index.add(target)
                seen.append(target)
    return seen


def _renumber(dfa: DFA) -> DFA:
    """Canonical breadth-first renumbering from the initial state."""
    order = _reachable(dfa)
    new_id = {old: new for new, old in enumerate(order)}
    transitions = tuple(
        tuple(new_id[dfa.transitions[old][a]] for a in range(len(dfa.letters))) for old in order
    )
    accepting = tuple(dfa.accepting[old] for old in order)
    return DFA(dfa.ap, dfa.letters, transitions, accepting)


def minimize(dfa: DFA, seed: int | None = None) -> DFA:
    """Unique minimal DFA for the same language.

    Unreachable states are dropped first, then blocks are refined until
    stable.  `seed` shuffles the refinement processing order; the final
    breadth-first renumbering makes the result independent of it.
    """
    dfa = _renumber(dfa)
    n = dfa.n_states
    order = list(range(n))
    if seed is not None:
        random.Random(seed).shuffle(order)
    block = [1 if dfa.accepting[s] else 0 for s in range(n)]
    while True:
        signatures: dict = {}
        new_block = [0] * n
        for s in order:
            sig = (block[s], tuple(block[t] for t in dfa.transitions[s]))
            assigned = signatures.get(sig)
            if assigned is None:
                assigned = len(signatures)
                signatures[sig] = assigned
            new_block[s] = assigned
        if len(signatures) == len(set(block)):
            break
        block = new_block
    representative: dict[int, int] = {}
    for s in range(n):
        representative.setdefault(block[s], s)
    blocks = sorted(representative)
    block_id = {b: i for i, b in enumerate(blocks)}
    transitions = tuple(
        tuple(block_id[block[dfa.transitions[representative[b]][a]]] for a in range(len(dfa.letters)))
        for b in blocks
    )
    accepting = tuple(dfa.accepting[representative[b]] for b in blocks)
    quotient = DFA(dfa.ap, dfa.letters, transitions, accepting, initial=block_id[block[dfa.initial]])
    return _renumber(quotient)


def complement(dfa: DFA) -> DFA:
    """Accept exactly the rejected traces; the transition function is already total."""
    return DFA(dfa.ap, dfa.letters, dfa.transitions, tuple(not a for a in dfa.accepting), dfa.initial)


def build_dfa(f: fm.Formula, ap=None, max_states: int = DEFAULT_BUDGET, minimized: bool = True) -> DFA:
    """Full pipeline: normalize, translate, dealternate, determinize, minimize."""
    core = fm.to_dynamic_core(fm.nnf(f))
    dfa = determinize(dealternate(translate_afa(core, ap), max_states), max_states)
    return minimize(dfa) if minimized else dfa


def equivalent(f: fm.Formula, g: fm.Formula, max_states: int = DEFAULT_BUDGET):
    """(True, None) if the languages agree, else (False, shortest distinguishing trace)."""
    ap = sorted(fm.atoms(f) | fm.atoms(g))
    left = build_dfa(f, ap, max_states)
    right = build_dfa(g, ap, max_states)
    if left == right:
        return True, None
    queue = deque([(left.initial, right.initial, ())])
    seen = {(left.initial, right.initial)}
    while queue:
        s1, s2, path = queue.popleft()
        if left.accepting[s1] != right.accepting[s2]:
            return False, Trace(path)
        for a, letter in enumerate(left.letters):
            pair = (left.transitions[s1][a], right.transitions[s2][a])
            if pair not in seen:
                seen.add(pair)
                queue.append((*pair, path + (letter,)))
    return True, None


def is_empty(dfa: DFA):
    """(True, None) when no trace is accepted, else (False, a shortest witness)."""
    queue = deque([(dfa.initial, ())])
    seen = {dfa.initial}
    while queue:
        s, path = queue.popleft()
        if dfa.accepting[s]:
            return False, Trace(path)
        for a, letter in enumerate(dfa.letters):
            target = dfa.transitions[s][a]
            if target not in seen:
                seen.add(target)
                queue.append((target, path + (letter,)))
    return True, None


def enumerate_accepted(dfa: DFA, max_len: int) -> Iterator[Trace]:
    """Accepted traces of length <= max_len in enumeration order."""
    for t in enumerate_traces(dfa.ap, max_len):
        if dfa_accepts(dfa, t):
            yield t
