"""Graphviz DOT emission for all four automaton kinds.

Output is deterministic for a fixed input: states are walked in ordinal
order and letters in canonical order.  Alternating transitions whose
image needs several successor states at once are routed through a small
conjunction node.
"""

from __future__ import annotations

from . import formula as fm
from .afa import AFA, AndNode, FalseLeaf, OrNode, PBF, StateRef, TrueLeaf
from .fa import DFA, NFA
from .twafa import BEGIN, END, MoveRef, TwoAFA, Weak, _Marker
from .trace import format_letter


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _state_label(state) -> str:
    if isinstance(state, Weak):
        return f"weak({fm.format_formula(state.formula)})"
    return fm.format_formula(state)


def _marked_label(m) -> str:
    if isinstance(m, _Marker):
        return m.name.upper()
    return format_letter(m)


def _dnf(pbf: PBF) -> list[tuple]:
    """Disjuncts of leaf sets; each set is one hyper-edge."""
    match pbf:
        case TrueLeaf():
            return [()]
        case FalseLeaf():
            return []
        case StateRef() | MoveRef():
            return [(pbf,)]
        case OrNode(l, r):
            out = _dnf(l)
            for leaves in _dnf(r):
                if leaves not in out:
                    out.append(leaves)
            return out
        case AndNode(l, r):
            return [a + b for a in _dnf(l) for b in _dnf(r)]
    raise TypeError(f"not a transition formula: {pbf!r}")


def _leaf_target(leaf) -> tuple[int, str]:
    if isinstance(leaf, MoveRef):
        return leaf.state, leaf.move.name
    return leaf.state, ""


def _alternating_edges(lines, q, label, pbf, edge_id):
    accept_all = False
    for d, leaves in enumerate(_dnf(pbf)):
        if not leaves:
            accept_all = True
            continue
        if len(leaves) == 1:
            target, move = _leaf_target(leaves[0])
            text = f"{label} {move}".strip()
            lines.append(f'  q{q} -> q{target} [label={_quote(text)}];')
        else:
            conj = f"c{edge_id}_{d}"
            lines.append(f'  {conj} [shape=point label=""];')
            lines.append(f'  q{q} -> {conj} [label={_quote(label)} arrowhead=none];')
            for leaf in leaves:
                target, move = _leaf_target(leaf)
                lines.append(f'  {conj} -> q{target} [label={_quote(move)}];' if move
                             else f'  {conj} -> q{target};')
    if accept_all:
        lines.append(f'  q{q} -> accept_all [label={_quote(label)}];')
    return accept_all


def _alternating_dot(name, states, final, image_items) -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point label=""];']
    for q, state in enumerate(states):
        shape = "doublecircle" if final[q] else "circle"
        lines.append(f"  q{q} [shape={shape} label={_quote(_state_label(state))}];")
    lines.append("  init -> q0;")
    used_accept_all = False
    edge_id = 0
    for q, label, pbf in image_items:
        used_accept_all |= _alternating_edges(lines, q, label, pbf, edge_id)
        edge_id += 1
    if used_accept_all:
        lines.append('  accept_all [shape=doublecircle label="tt"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _afa_dot(automaton: AFA) -> str:
    from .trace import letters_over

    letters = letters_over(automaton.ap)
    items = [
        (q, format_letter(letter), automaton.delta(q, letter))
        for q in range(len(automaton.states))
        for letter in letters
    ]
    return _alternating_dot("afa", list(automaton.states), automaton.final, items)


def _twafa_dot(automaton: TwoAFA) -> str:
    marked = (BEGIN, END) + automaton.letters
    items = [
        (q, _marked_label(m), automaton.transitions[(q, m)])
        for q in range(len(automaton.states))
        for m in marked
    ]
    final = [False] * len(automaton.states)
    return _alternating_dot("twafa", list(automaton.states), final, items)


def _nfa_dot(nfa: NFA) -> str:
    lines = ["digraph nfa {", "  rankdir=LR;", '  init [shape=point label=""];']
    for s in range(len(nfa.states)):
        shape = "doublecircle" if nfa.accepting[s] else "circle"
        lines.append(f"  q{s} [shape={shape} label={_quote(str(s))}];")
    lines.append(f"  init -> q{nfa.initial};")
    for s in range(len(nfa.states)):
        for letter in nfa.letters:
            for target in nfa.transitions[(s, letter)]:
                lines.append(f"  q{s} -> q{target} [label={_quote(format_letter(letter))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dfa_dot(dfa: DFA) -> str:
    lines = ["digraph dfa {", "  rankdir=LR;", '  init [shape=point label=""];']
    for s in range(dfa.n_states):
        shape = "doublecircle" if dfa.accepting[s] else "circle"
        lines.append(f"  q{s} [shape={shape} label={_quote(str(s))}];")
    lines.append(f"  init -> q{dfa.initial};")
    for s in range(dfa.n_states):
        for a, letter in enumerate(dfa.letters):
            lines.append(f"  q{s} -> q{dfa.transitions[s][a]} [label={_quote(format_letter(letter))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(automaton) -> str:
    """Render any of the four automaton kinds as a DOT digraph."""
    if isinstance(automaton, AFA):
        return _afa_dot(automaton)
    if isinstance(automaton, TwoAFA):
        return _twafa_dot(automaton)
    if isinstance(automaton, NFA):
        return _nfa_dot(automaton)
    if isinstance(automaton, DFA):
        return _dfa_dot(automaton)
    raise TypeError(f"cannot render {type(automaton).__name__} as DOT")
