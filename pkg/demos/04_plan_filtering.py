"""Filtering candidate plans through temporal constraints.

A plan is a finite trace of action/fluent sets.  Compiling a constraint
into a DFA and running every candidate through it keeps exactly the
plans the constraint admits; complementing the DFA inverts the filter,
which is how integrity constraints reject traces.
"""

from tracelogic import (
    build_dfa,
    complement,
    dfa_accepts,
    enumerate_accepted,
    format_trace,
    parse_formula,
    parse_trace,
)

candidates = [
    "{load};{drive};{unload}",
    "{drive};{load};{unload}",
    "{load};{drive};{drive};{unload}",
    "{load};{unload}",
    "{drive}",
]

# Plans must never drive before loading and must eventually unload.
constraint = parse_formula("(!drive U load) & F unload")
ap = ("drive", "load", "unload")
dfa = build_dfa(constraint, ap)

print("constraint:", "(!drive U load) & F unload")
print("\nkept plans:")
kept = []
for text in candidates:
    t = parse_trace(text)
    if dfa_accepts(dfa, t):
        kept.append(text)
        print("  ", text)

print("\nrejected plans (via the complement automaton):")
rejector = complement(dfa)
for text in candidates:
    t = parse_trace(text)
    if dfa_accepts(rejector, t):
        print("  ", text)

# ---------------------------------------------------------------------------
# Enumerating the accepted language up to a bounded length amounts to
# filtering the set of all candidate traces.

short = build_dfa(parse_formula("G !crash & F goal"), ("crash", "goal"))
print("\nall crash-free goal-reaching traces of length <= 2:")
for t in enumerate_accepted(short, 2):
    print("  ", format_trace(t))
