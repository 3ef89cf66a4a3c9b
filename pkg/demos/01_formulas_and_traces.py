"""Parsing, printing, and evaluating formulas over finite traces.

Walks through the surface syntax, the normal forms, and the direct
semantic evaluation that the automata backends are checked against.
"""

from tracelogic import (
    evaluate,
    format_formula,
    holds,
    nnf,
    parse_formula,
    parse_trace,
    to_dynamic_core,
)

# ---------------------------------------------------------------------------
# Formulas are plain text: temporal operators (X, F, G, U, R), their past
# mirrors (Y, WY, S, T), and dynamic path modalities <p> f and [p] f.

requests = parse_formula("G (request -> F grant)")
print("formula:   ", format_formula(requests))

# Negation normal form pushes negation down to atoms.
denied = parse_formula("!(request U grant)")
print("nnf:       ", format_formula(nnf(denied)))

# The temporal sugar rewrites into the dynamic core used by the automata.
print("core of F a:  ", format_formula(to_dynamic_core(nnf(parse_formula("F a")))))
print("core of a U b:", format_formula(to_dynamic_core(nnf(parse_formula("a U b")))))

# ---------------------------------------------------------------------------
# Traces list the atoms true at each step; `eps` is the empty trace.

trace = parse_trace("{request};{};{request,grant};{grant}")
print("\ntrace has", len(trace), "steps")

print("G (request -> F grant) holds:", holds(requests, trace))
print("request U grant holds:       ", holds(parse_formula("request U grant"), trace))

# Positions run from 0 to the trace length; the final position is a
# letterless end point, which is what makes G vacuous on the empty trace.
print("\nG a on eps:", holds(parse_formula("G a"), parse_trace("eps")))
print("F a on eps:", holds(parse_formula("F a"), parse_trace("eps")))

# Past operators look backwards from the evaluation position.
came_from = parse_formula("grant & Y request")
print("\ngrant & Y request at position 3:", evaluate(came_from, trace, 3))
print("grant & Y request at position 2:", evaluate(came_from, trace, 2))

# Metric next constrains the delay to the successor step of a timed trace.
timed = parse_trace("{drive}@0;{school}@25")
print("\nX[20,40) school on", "{drive}@0;{school}@25:", holds(parse_formula("X[20,40) school"), timed))
late = parse_trace("{drive}@0;{school}@45")
print("X[20,40) school when arriving at 45:", holds(parse_formula("X[20,40) school"), late))
