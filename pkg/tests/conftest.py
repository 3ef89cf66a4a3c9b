"""Shared formula/trace generators for the test suite."""

import random
from functools import lru_cache

from tracelogic.formula import (
    FALSE,
    TRUE,
    Alt,
    And,
    Atom,
    Box,
    Diamond,
    Eventually,
    Always,
    Implies,
    MetricNext,
    Next,
    Not,
    Or,
    Prev,
    Release,
    Seq,
    Since,
    Star,
    Step,
    Test,
    Trigger,
    Until,
    WeakMetricNext,
    WeakNext,
    WeakPrev,
)

NAMES = ("a", "b")
_LEAVES = tuple(Atom(n) for n in NAMES) + (TRUE, FALSE)
_LITERALS = _LEAVES + tuple(Not(Atom(n)) for n in NAMES)


@lru_cache(maxsize=None)
def _props(size: int) -> tuple:
    out = []
    if size == 1:
        out += list(_LEAVES)
    if size == 2:
        out += [Not(Atom(n)) for n in NAMES]
    if size >= 3:
        for ls in range(1, size - 1):
            for l in _props(ls):
                for r in _props(size - 1 - ls):
                    out += [And(l, r), Or(l, r)]
    return tuple(out)


@lru_cache(maxsize=None)
def _paths(size: int) -> tuple:
    out = []
    if size >= 2:
        out += [Step(g) for g in _props(size - 1)]
        out += [Test(f) for f in _core_formulas(size - 1)]
        out += [Star(p) for p in _paths(size - 1)]
    if size >= 5:
        for ls in range(2, size - 2):
            for l in _paths(ls):
                for r in _paths(size - 1 - ls):
                    out += [Seq(l, r), Alt(l, r)]
    return tuple(out)


@lru_cache(maxsize=None)
def _core_formulas(size: int) -> tuple:
    out = []
    if size == 1:
        out += list(_LEAVES)
    if size == 2:
        out += [Not(Atom(n)) for n in NAMES]
    if size >= 3:
        for ls in range(1, size - 1):
            for l in _core_formulas(ls):
                for r in _core_formulas(size - 1 - ls):
                    out += [And(l, r), Or(l, r)]
        for ps in range(2, size - 1):
            for p in _paths(ps):
                for f in _core_formulas(size - 1 - ps):
                    out += [Diamond(p, f), Box(p, f)]
    return tuple(out)


def exhaustive_core_formulas(max_size: int) -> list:
    """All NNF dynamic-core formulas of AST size <= max_size over atoms a, b."""
    return [f for size in range(1, max_size + 1) for f in _core_formulas(size)]


def random_prop(rng: random.Random, size: int):
    if size <= 1:
        return rng.choice(_LEAVES)
    if size == 2 or rng.random() < 0.2:
        return Not(Atom(rng.choice(NAMES)))
    left = rng.randint(1, size - 2)
    op = rng.choice((And, Or))
    return op(random_prop(rng, left), random_prop(rng, size - 1 - left))


def random_path(rng: random.Random, size: int, make_formula):
    if size <= 2:
        if rng.random() < 0.5:
            return Step(random_prop(rng, 1))
        return Test(make_formula(rng, max(size - 1, 1)))
    kind = rng.choice(("step", "test", "star", "seq", "alt"))
    if kind == "step":
        return Step(random_prop(rng, size - 1))
    if kind == "test":
        return Test(make_formula(rng, size - 1))
    if kind == "star":
        return Star(random_path(rng, size - 1, make_formula))
    left = rng.randint(1, size - 2)
    op = Seq if kind == "seq" else Alt
    return op(random_path(rng, left, make_formula), random_path(rng, size - 1 - left, make_formula))


def random_core_formula(rng: random.Random, size: int, past: bool = False):
    """Random NNF dynamic-core formula (optionally with past primitives)."""

    def build(rng, size):
        return random_core_formula(rng, size, past)

    if size <= 1:
        return rng.choice(_LEAVES)
    ops = ["not", "and", "or", "dia", "box"]
    if past:
        ops += ["prev", "wprev", "since", "trigger"]
    kind = rng.choice(ops)
    if kind == "not" or size == 2:
        return Not(Atom(rng.choice(NAMES)))
    if kind in ("and", "or"):
        left = rng.randint(1, size - 2)
        op = And if kind == "and" else Or
        return op(build(rng, left), build(rng, size - 1 - left))
    if kind in ("dia", "box"):
        path_size = rng.randint(1, size - 2) if size > 3 else 1
        op = Diamond if kind == "dia" else Box
        return op(random_path(rng, max(path_size, 1), build), build(rng, size - 1 - path_size))
    if kind == "prev":
        return Prev(build(rng, size - 1))
    if kind == "wprev":
        return WeakPrev(build(rng, size - 1))
    left = rng.randint(1, size - 2)
    op = Since if kind == "since" else Trigger
    return op(build(rng, left), build(rng, size - 1 - left))


def random_any_formula(rng: random.Random, size: int):
    """Random formula over the full surface syntax (sugar, past, metric, negation)."""
    if size <= 1:
        return rng.choice(_LEAVES)
    unary = ("not", "next", "wnext", "even", "always", "prev", "wprev", "metric", "wmetric")
    binary = ("and", "or", "implies", "until", "release", "since", "trigger")
    modal = ("dia", "box")
    kind = rng.choice(unary + binary + modal)
    if kind in binary:
        left = rng.randint(1, size - 2) if size > 2 else 1
        op = {
            "and": And, "or": Or, "implies": Implies, "until": Until,
            "release": Release, "since": Since, "trigger": Trigger,
        }[kind]
        return op(random_any_formula(rng, left), random_any_formula(rng, size - 1 - left))
    if kind in modal:
        path_size = rng.randint(1, size - 2) if size > 3 else 1
        op = Diamond if kind == "dia" else Box
        return op(random_path(rng, max(path_size, 1), random_any_formula), random_any_formula(rng, size - 1 - path_size))
    arg = random_any_formula(rng, size - 1)
    if kind in ("metric", "wmetric"):
        lo = rng.randint(0, 20)
        hi = None if rng.random() < 0.3 else lo + rng.randint(1, 30)
        return (MetricNext if kind == "metric" else WeakMetricNext)(lo, hi, arg)
    return {
        "not": Not, "next": Next, "wnext": WeakNext, "even": Eventually,
        "always": Always, "prev": Prev, "wprev": WeakPrev,
    }[kind](arg)


def random_trace(rng: random.Random, max_len: int = 5, timed: bool = False):
    from tracelogic.trace import TimedTrace, Trace

    length = rng.randint(0, max_len)
    letters = tuple(frozenset(n for n in NAMES if rng.random() < 0.5) for _ in range(length))
    if not timed or length == 0:
        return Trace(letters)
    times = []
    clock = 0
    for _ in range(length):
        clock += rng.randint(0, 30)
        times.append(clock)
    return TimedTrace(letters, tuple(times))
