"""Metric logic programs: durations as difference constraints.

Rules hold at every step; a head `X[l,u) a` additionally constrains the
delay to the next step.  Checking a timed trace verifies delays directly;
an untimed trace yields a difference-constraint system whose minimal
solution derives timestamps, with an inconsistent cycle as the
infeasibility certificate.
"""

from tracelogic import (
    Infeasible,
    TimedTrace,
    Witness,
    check_program,
    enumerate_models,
    extract_constraints,
    feasible,
    format_trace,
    parse_program,
    parse_trace,
)
from tracelogic.metric import UntimedViolationError

program = parse_program(
    """
    % if I start driving, school comes next within [20..40) minutes
    X[20,40) school :- drive.
    % never drive without a license
    :- drive, not licensed.
    """
)

print("checking timed traces:")
for text in (
    "{drive,licensed}@0;{school}@25",
    "{drive,licensed}@0;{school}@45",
    "{drive}@0;{school}@25",
):
    violations = check_program(program, parse_trace(text))
    verdict = "ok" if not violations else f"violations {violations}"
    print(f"  {text:42} {verdict}")

# ---------------------------------------------------------------------------
# Deriving timestamps: the untimed part is checked first, then the metric
# heads become difference constraints over per-step timestamp variables.

plan = parse_trace("{drive,licensed};{school}")
system = extract_constraints(program, plan)
print("\nconstraints for", format_trace(plan))
for c in system.constraints:
    upper = "inf" if c.hi is None else c.hi
    print(f"  {c.lo} <= t_{c.j} - t_{c.i} <= {upper}")

solution = feasible(system)
assert isinstance(solution, Witness)
print("minimal timestamps:", format_trace(TimedTrace(plan.letters, solution.times)))

# Conflicting intervals produce a certificate instead of timestamps.
conflicted = parse_program("X[5,10) b :- a.\nX[20,30) b :- a.")
outcome = feasible(extract_constraints(conflicted, parse_trace("{a};{b}")))
assert isinstance(outcome, Infeasible)
print("\nconflicting program is infeasible; contradictory constraints:", outcome.cycle)

# Timestamps cannot repair missing atoms.
try:
    extract_constraints(program, parse_trace("{drive,licensed};{}"))
except UntimedViolationError as exc:
    print("untimed violation:", exc)

# ---------------------------------------------------------------------------
# Bounded-horizon model enumeration: every atom assignment of the fixed
# length that admits timestamps, paired with its minimal witness.

print("\nmodels at horizon 2 over {drive, school, licensed} containing a drive:")
for model in enumerate_models(program, ("drive", "school", "licensed"), 2):
    if "drive" in model.letters[0]:
        print("  ", format_trace(model))
