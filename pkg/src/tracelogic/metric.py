"""Metric logic programs over the metric-next fragment.

Rules are universal: every rule must hold at every letter position of a
trace.  Heads may carry a metric next interval; checking a timed trace
verifies the delays directly, while an untimed trace yields a system of
difference constraints whose minimal solution (if any) derives timestamps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import TraceLogicError
from .trace import TimedTrace, Trace, enumerate_traces


@dataclass(frozen=True)
class PlainHead:
    atom: str


@dataclass(frozen=True)
class MetricHead:
    lo: int
    hi: int | None  # None is an unbounded interval
    atom: str

    def __post_init__(self):
        if self.lo < 0 or (self.hi is not None and self.lo >= self.hi):
            raise ValueError(f"empty metric interval [{self.lo},{self.hi})")


@dataclass(frozen=True)
class MetricRule:
    """`head :- body`; head None makes it an integrity constraint."""

    head: PlainHead | MetricHead | None
    body: tuple[tuple[str, bool], ...]  # (atom, positive)


@dataclass(frozen=True)
class MetricProgram:
    rules: tuple[MetricRule, ...]

    def universe(self) -> set[str]:
        names: set[str] = set()
        for rule in self.rules:
            if rule.head is not None:
                names.add(rule.head.atom)
            names.update(atom for atom, _ in rule.body)
        return names


@dataclass(frozen=True)
class DiffConstraint:
    """lo <= t_j - t_i <= hi over timestamp variables (hi None is unbounded)."""

    i: int
    j: int
    lo: int
    hi: int | None

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("difference constraint needs two distinct variables")
        if self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty bound [{self.lo},{self.hi}]")

    def satisfied(self, times) -> bool:
        delta = times[self.j] - times[self.i]
        return self.lo <= delta and (self.hi is None or delta <= self.hi)


@dataclass(frozen=True)
class ConstraintSystem:
    """Difference constraints over per-position timestamp variables, anchored at t_0 = 0."""

    n_vars: int
    constraints: tuple[DiffConstraint, ...]

    def __post_init__(self):
        for c in self.constraints:
            if not (0 <= c.i < self.n_vars and 0 <= c.j < self.n_vars):
                raise ValueError(f"constraint {c} references a missing variable")


@dataclass(frozen=True)
class Witness:
    times: tuple[int, ...]


@dataclass(frozen=True)
class Infeasible:
    cycle: tuple[int, ...]  # indices of constraints forming a contradictory loop


class UntimedViolationError(TraceLogicError):
    """The untimed part of a program already fails; no timestamps can repair it."""

    def __init__(self, rule_index: int, position: int):
        self.rule_index = rule_index
        self.position = position
        super().__init__(f"rule {rule_index} violated at step {position} regardless of timestamps")


def _body_holds(rule: MetricRule, letter) -> bool:
    return all((atom in letter) == positive for atom, positive in rule.body)


def _head_holds(head, t: TimedTrace, i: int, check_time: bool) -> bool:
    match head:
        case None:
            return False
        case PlainHead(atom):
            return atom in t.letters[i]
        case MetricHead(lo, hi, atom):
            if i + 1 >= len(t):
                return False
            if atom not in t.letters[i + 1]:
                return False
            if not check_time:
                return True
            delta = t.times[i + 1] - t.times[i]
            return lo <= delta and (hi is None or delta < hi)
    raise TypeError(f"not a rule head: {head!r}")


def check_program(program: MetricProgram, t: TimedTrace) -> list[tuple[int, int]]:
    """All (rule index, position) pairs where a rule fires but its head fails."""
    violations = []
    for r, rule in enumerate(program.rules):
        for i, letter in enumerate(t.letters):
            if _body_holds(rule, letter) and not _head_holds(rule.head, t, i, check_time=True):
                violations.append((r, i))
    return violations


def extract_constraints(program: MetricProgram, t: Trace, strict: bool = False) -> ConstraintSystem:
    """Difference constraints that timestamps for t must satisfy.

    The untimed part is verified first (metric intervals ignored); if it
    already fails, UntimedViolationError reports the rule and position.
    With strict=True consecutive timestamps must increase by at least 1.
    """
    dummy = TimedTrace(t.letters, tuple(0 for _ in t.letters))
    constraints = []
    for r, rule in enumerate(program.rules):
        for i, letter in enumerate(t.letters):
            if not _body_holds(rule, letter):
                continue
            if not _head_holds(rule.head, dummy, i, check_time=False):
                raise UntimedViolationError(r, i)
            if isinstance(rule.head, MetricHead):
                hi = None if rule.head.hi is None else rule.head.hi - 1
                constraints.append(DiffConstraint(i, i + 1, rule.head.lo, hi))
    minimum_gap = 1 if strict else 0
    for i in range(len(t) - 1):
        constraints.append(DiffConstraint(i, i + 1, minimum_gap, None))
    return ConstraintSystem(len(t), tuple(constraints))


def feasible(system: ConstraintSystem) -> Witness | Infeasible:
    """Minimal non-negative integer solution, or a contradictory constraint cycle.

    Solved as a longest-path problem from the anchor t_0 = 0: each lower
    bound contributes an edge i -> j of weight lo, each finite upper bound
    an edge j -> i of weight -hi, and every variable gets a zero-weight
    edge from the anchor (non-negativity).  A positive cycle certifies
    infeasibility.
    """
    n = system.n_vars
    if n == 0:
        return Witness(())
    edges: list[tuple[int, int, int, int | None]] = []  # (src, dst, weight, constraint idx)
    for idx, c in enumerate(system.constraints):
        edges.append((c.i, c.j, c.lo, idx))
        if c.hi is not None:
            edges.append((c.j, c.i, -c.hi, idx))
    for v in range(1, n):
        edges.append((0, v, 0, None))

    neg_inf = float("-inf")
    dist: list = [neg_inf] * n
    dist[0] = 0
    pred: list[tuple[int, int | None] | None] = [None] * n
    exhausted = True
    for _ in range(n - 1):
        changed = False
        for src, dst, weight, idx in edges:
            if dist[src] != neg_inf and dist[src] + weight > dist[dst]:
                dist[dst] = dist[src] + weight
                pred[dst] = (src, idx)
                changed = True
        if not changed:
            exhausted = False
            break
    if exhausted:
        for src, dst, weight, idx in edges:
            if dist[src] != neg_inf and dist[src] + weight > dist[dst]:
                pred[dst] = (src, idx)
                return Infeasible(_trace_cycle(pred, dst))

    times = tuple(int(d) for d in dist)
    for c in system.constraints:
        if not c.satisfied(times):
            raise TraceLogicError(f"solver produced an invalid witness for {c}")
    return Witness(times)


def _trace_cycle(pred, start: int) -> tuple[int, ...]:
    # Follow predecessor links until a node repeats; the repeated suffix is the cycle.
    seen: dict[int, int] = {}
    chain: list[int | None] = []
    node = start
    while node not in seen:
        seen[node] = len(chain)
        entry = pred[node]
        if entry is None:
            break
        chain.append(entry[1])
        node = entry[0]
    begin = seen.get(node, 0)
    indices = []
    for idx in chain[begin:]:
        if idx is not None and idx not in indices:
            indices.append(idx)
    return tuple(reversed(indices))


def enumerate_models(program: MetricProgram, ap, horizon: int) -> Iterator[TimedTrace]:
    """Every length-`horizon` trace admitting timestamps, with its minimal witness."""
    for t in enumerate_traces(ap, horizon):
        if len(t) != horizon:
            continue
        try:
            system = extract_constraints(program, t)
        except UntimedViolationError:
            continue
        solution = feasible(system)
        if isinstance(solution, Witness):
            yield TimedTrace(t.letters, solution.times)
