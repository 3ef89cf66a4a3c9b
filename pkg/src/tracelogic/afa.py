"""Translation of dynamic-core formulas to alternating finite automata.

States are the closure formulas; transition images are positive boolean
formulas (PBFs) over successor states, so universal and existential
branching share one representation.  A per-call visited set cuts the
unfolding of stars that make no progress within a single letter, which is
what keeps the construction total on formulas like `<(tt?)*> a`.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formula as fm
from . import oracle
from .errors import AlphabetMismatchError, UnsupportedOperatorError
from .trace import Trace


class PBF:
    """Positive boolean formula over state ordinals."""

    __slots__ = ()


@dataclass(frozen=True)
class TrueLeaf(PBF):
    pass


@dataclass(frozen=True)
class FalseLeaf(PBF):
    pass


@dataclass(frozen=True)
class StateRef(PBF):
    state: int


@dataclass(frozen=True)
class AndNode(PBF):
    left: PBF
    right: PBF


@dataclass(frozen=True)
class OrNode(PBF):
    left: PBF
    right: PBF


PBF_TRUE = TrueLeaf()
PBF_FALSE = FalseLeaf()


def pbf_and(left: PBF, right: PBF) -> PBF:
    if isinstance(left, FalseLeaf) or isinstance(right, FalseLeaf):
        return PBF_FALSE
    if isinstance(left, TrueLeaf):
        return right
    if isinstance(right, TrueLeaf):
        return left
    return AndNode(left, right)


def pbf_or(left: PBF, right: PBF) -> PBF:
    if isinstance(left, TrueLeaf) or isinstance(right, TrueLeaf):
        return PBF_TRUE
    if isinstance(left, FalseLeaf):
        return right
    if isinstance(right, FalseLeaf):
        return left
    return OrNode(left, right)


def pbf_eval(pbf: PBF, assignment) -> bool:
    """Evaluate with StateRef(r) read from assignment[r]."""
    match pbf:
        case TrueLeaf():
            return True
        case FalseLeaf():
            return False
        case StateRef(state):
            return assignment[state]
        case AndNode(l, r):
            return pbf_eval(l, assignment) and pbf_eval(r, assignment)
        case OrNode(l, r):
            return pbf_eval(l, assignment) or pbf_eval(r, assignment)
    raise TypeError(f"not a PBF: {pbf!r}")


def minimal_sets(pbf: PBF) -> tuple[frozenset, ...]:
    """The antichain of minimal satisfying state sets, canonically ordered."""
    return tuple(sorted(_minsets(pbf), key=lambda s: (len(s), sorted(s))))


def _minsets(pbf: PBF) -> list[frozenset]:
    match pbf:
        case TrueLeaf():
            return [frozenset()]
        case FalseLeaf():
            return []
        case StateRef(state):
            return [frozenset((state,))]
        case OrNode(l, r):
            return _antichain(_minsets(l) + _minsets(r))
        case AndNode(l, r):
            return _antichain([a | b for a in _minsets(l) for b in _minsets(r)])
    raise TypeError(f"not a PBF: {pbf!r}")


def _antichain(sets: list[frozenset]) -> list[frozenset]:
    unique = set(sets)
    return [s for s in unique if not any(t < s for t in unique)]


_SUGAR = (fm.Next, fm.WeakNext, fm.Until, fm.Release, fm.Eventually, fm.Always, fm.Implies)
_PAST = (fm.Prev, fm.WeakPrev, fm.Since, fm.Trigger)
_METRIC = (fm.MetricNext, fm.WeakMetricNext)


def _check_supported(f: fm.Formula) -> None:
    if isinstance(f, _PAST):
        raise UnsupportedOperatorError(
            f"past operator {type(f).__name__} needs the two-way backend"
        )
    if isinstance(f, _METRIC):
        raise UnsupportedOperatorError(
            f"metric operator {type(f).__name__} needs the metric backend"
        )
    if isinstance(f, _SUGAR):
        raise UnsupportedOperatorError(
            f"{type(f).__name__} must be rewritten into the dynamic core first"
        )
    match f:
        case fm.Atom() | fm.TrueFormula() | fm.FalseFormula() | fm.Not(fm.Atom()):
            pass
        case fm.Not(_):
            raise UnsupportedOperatorError("negation must be pushed to atoms first")
        case fm.And(l, r) | fm.Or(l, r):
            _check_supported(l)
            _check_supported(r)
        case fm.Diamond(p, g) | fm.Box(p, g):
            _check_path_supported(p)
            _check_supported(g)
        case _:
            raise TypeError(f"not a formula: {f!r}")


def _check_path_supported(p: fm.PathExpr) -> None:
    match p:
        case fm.Step(_):
            pass
        case fm.Test(g):
            _check_supported(g)
        case fm.Seq(l, r) | fm.Alt(l, r):
            _check_path_supported(l)
            _check_path_supported(r)
        case fm.Star(q):
            _check_path_supported(q)


def weak_state(f: fm.Formula) -> fm.Formula:
    """State whose end acceptance is the weak value of f, letter behaviour unchanged.

    Patches in `f | [tt] ff` when f holds weakly but not outright at the
    end point; the extra disjunct only fires there.
    """
    strong = oracle.end_value(f)
    weak = not oracle.end_value(fm.nnf_not(f))
    if strong == weak:
        return f
    return fm.Or(f, fm.AT_MARKER)


class AFA:
    """Alternating automaton over letters drawn from subsets of `ap`."""

    def __init__(self, root: fm.Formula, ap=None):
        _check_supported(root)
        names = fm.atoms(root)
        if ap is None:
            ap = names
        elif not names <= set(ap):
            raise AlphabetMismatchError(f"alphabet {sorted(ap)} misses atoms {sorted(names - set(ap))}")
        self.ap: tuple[str, ...] = tuple(sorted(ap))
        self.states: fm.StateSet = fm.closure(root, box_continuation=weak_state)
        self.initial: int = 0
        self.final: tuple[bool, ...] = tuple(oracle.end_value(q) for q in self.states)
        self._delta_memo: dict = {}

    def __len__(self) -> int:
        return len(self.states)

    def delta(self, q: int, letter) -> PBF:
        key = (q, letter)
        cached = self._delta_memo.get(key)
        if cached is None:
            cached = self._image(self.states[q], letter, frozenset())
            self._delta_memo[key] = cached
        return cached

    def _ref(self, h: fm.Formula) -> PBF:
        if isinstance(h, fm.TrueFormula):
            return PBF_TRUE
        if isinstance(h, fm.FalseFormula):
            return PBF_FALSE
        return StateRef(self.states.ordinal(h))

    def _image(self, f: fm.Formula, letter, visiting: frozenset) -> PBF:
        match f:
            case fm.TrueFormula():
                return PBF_TRUE
            case fm.FalseFormula():
                return PBF_FALSE
            case fm.Atom(name):
                return PBF_TRUE if name in letter else PBF_FALSE
            case fm.Not(fm.Atom(name)):
                return PBF_FALSE if name in letter else PBF_TRUE
            case fm.And(l, r):
                return pbf_and(self._image(l, letter, visiting), self._image(r, letter, visiting))
            case fm.Or(l, r):
                return pbf_or(self._image(l, letter, visiting), self._image(r, letter, visiting))
            case fm.Diamond(p, g):
                return self._diamond(p, g, f, letter, visiting)
            case fm.Box(p, g):
                return self._box(p, g, f, letter, visiting)
            case _:
                raise UnsupportedOperatorError(f"cannot build transitions for {type(f).__name__}")

    def _diamond(self, p, g, node, letter, visiting) -> PBF:
        match p:
            case fm.Step(guard):
                return self._ref(g) if oracle.prop_sat(guard, letter) else PBF_FALSE
            case fm.Test(e):
                return pbf_and(self._image(e, letter, visiting), self._image(g, letter, visiting))
            case fm.Seq(q, r):
                return self._image(fm.Diamond(q, fm.Diamond(r, g)), letter, visiting)
            case fm.Alt(q, r):
                return pbf_or(
                    self._image(fm.Diamond(q, g), letter, visiting),
                    self._image(fm.Diamond(r, g), letter, visiting),
                )
            case fm.Star(q):
                if node in visiting:
                    return PBF_FALSE
                inner = visiting | {node}
                return pbf_or(
                    self._image(g, letter, inner),
                    self._image(fm.Diamond(q, node), letter, inner),
                )
        raise TypeError(f"not a path expression: {p!r}")

    def _box(self, p, g, node, letter, visiting) -> PBF:
        match p:
            case fm.Step(guard):
                return self._ref(weak_state(g)) if oracle.prop_sat(guard, letter) else PBF_TRUE
            case fm.Test(e):
                return pbf_or(self._image(fm.nnf_not(e), letter, visiting), self._image(g, letter, visiting))
            case fm.Seq(q, r):
                return self._image(fm.Box(q, fm.Box(r, g)), letter, visiting)
            case fm.Alt(q, r):
                return pbf_and(
                    self._image(fm.Box(q, g), letter, visiting),
                    self._image(fm.Box(r, g), letter, visiting),
                )
            case fm.Star(q):
                if node in visiting:
                    return PBF_TRUE
                inner = visiting | {node}
                return pbf_and(
                    self._image(g, letter, inner),
                    self._image(fm.Box(q, node), letter, inner),
                )
        raise TypeError(f"not a path expression: {p!r}")

    def check_letters(self, t: Trace) -> None:
        alphabet = set(self.ap)
        for letter in t.letters:
            if not letter <= alphabet:
                raise AlphabetMismatchError(f"letter {sorted(letter)} outside alphabet {list(self.ap)}")

    def accepts(self, t: Trace) -> bool:
        self.check_letters(t)
        values = list(self.final)
        for letter in reversed(t.letters):
            values = [pbf_eval(self.delta(q, letter), values) for q in range(len(self.states))]
        return values[self.initial]


def translate_afa(f: fm.Formula, ap=None) -> AFA:
    """Build the alternating automaton for an NNF dynamic-core formula."""
    return AFA(f, ap)


def delta(automaton: AFA, q: int, letter) -> PBF:
    return automaton.delta(q, letter)


def finalval(automaton: AFA, q: int) -> bool:
    """Acceptance of state q at the end of the trace."""
    return automaton.final[q]


def afa_accepts(automaton: AFA, t: Trace) -> bool:
    return automaton.accepts(t)
