import random

import pytest

from conftest import random_any_formula, random_trace
from tracelogic.errors import ParseError
from tracelogic.formula import (
    Atom,
    Diamond,
    MetricNext,
    Seq,
    Star,
    Step,
    Test,
    TrueFormula,
    format_formula,
)
from tracelogic.metric import MetricHead, PlainHead
from tracelogic.parser import parse_formula, parse_program, parse_trace
from tracelogic.trace import TimedTrace, Trace, format_trace


def test_metric_next_formula():
    assert parse_formula("X[20,40) school") == MetricNext(20, 40, Atom("school"))


def test_dynamic_path_formula():
    f = parse_formula("<(a? ; tt)*> b")
    assert f == Diamond(Star(Seq(Test(Atom("a")), Step(TrueFormula()))), Atom("b"))


def test_incomplete_input_position():
    with pytest.raises(ParseError) as excinfo:
        parse_formula("a U")
    assert (excinfo.value.line, excinfo.value.column) == (1, 4)
    assert "formula" in excinfo.value.expected


def test_precedences():
    assert parse_formula("a -> b -> c") == parse_formula("a -> (b -> c)")
    assert parse_formula("a | b & c") == parse_formula("a | (b & c)")
    assert parse_formula("a & b U c") == parse_formula("a & (b U c)")
    assert parse_formula("a U b U c") == parse_formula("a U (b U c)")
    assert parse_formula("!a U b") == parse_formula("(!a) U b")
    assert parse_formula("X a & b") == parse_formula("(X a) & b")


def test_comments_and_whitespace():
    assert parse_formula("a &  % trailing comment\n b") == parse_formula("a & b")


def test_interval_errors():
    with pytest.raises(ParseError):
        parse_formula("X[5,5) a")
    with pytest.raises(ParseError):
        parse_formula("X[9,2) a")
    assert parse_formula("X[3,inf) a") == MetricNext(3, None, Atom("a"))


def test_temporal_step_guard_rejected():
    with pytest.raises(ParseError):
        parse_formula("<F a> b")
    with pytest.raises(ParseError):
        parse_formula("<(X a)> b")
    # but a temporal test is fine
    parse_formula("<(F a)?> b")


def test_path_grammar_shapes():
    assert parse_formula("<a + b> c") == parse_formula("<(a) + (b)> c")
    assert parse_formula("<a ; b*> c") != parse_formula("<(a ; b)*> c")
    assert parse_formula("<tt*> a") == parse_formula("<(tt)*> a")
    with pytest.raises(ParseError):
        parse_formula("<a*?> b")


def test_error_position_bounded():
    bad_inputs = ["a U", "<a", "X[", "{", "a &&& b", "(((", "a @"]
    for text in bad_inputs:
        with pytest.raises(ParseError) as excinfo:
            parse_formula(text)
        err = excinfo.value
        assert 1 <= err.column <= len(text) + 1


def test_parse_trace_timed():
    t = parse_trace("{drive}@0;{school}@25")
    assert t == TimedTrace((frozenset({"drive"}), frozenset({"school"})), (0, 25))


def test_parse_trace_eps_and_empty_letters():
    assert parse_trace("eps") == Trace(())
    assert parse_trace("{}") == Trace((frozenset(),))
    assert parse_trace("{a,b};{}") == Trace((frozenset({"a", "b"}), frozenset()))


def test_parse_trace_errors():
    with pytest.raises(ParseError):
        parse_trace("{a}@5;{b}@3")  # decreasing timestamps
    with pytest.raises(ParseError):
        parse_trace("{a}@1;{b}")  # mixed timed/untimed
    with pytest.raises(ParseError):
        parse_trace("{a};{b}@1")
    with pytest.raises(ParseError):
        parse_trace("{a}; $")


def test_parse_program_metric_rule():
    program = parse_program("X[20,40) school :- drive.")
    assert len(program.rules) == 1
    rule = program.rules[0]
    assert rule.head == MetricHead(20, 40, "school")
    assert rule.body == (("drive", True),)


def test_parse_program_forms():
    program = parse_program(
        """
        % facts and constraints
        licensed.
        :- drive, not licensed.
        school :- drive.
        """
    )
    heads = [rule.head for rule in program.rules]
    assert heads == [PlainHead("licensed"), None, PlainHead("school")]
    assert program.rules[1].body == (("drive", True), ("licensed", False))


def test_parse_program_rejects_metric_bodies():
    with pytest.raises(ParseError):
        parse_program("school :- X[1,2) drive.")


def test_formula_round_trip_random():
    rng = random.Random(23)
    for _ in range(400):
        f = random_any_formula(rng, rng.randint(1, 14))
        text = format_formula(f)
        assert parse_formula(text) == f
        assert format_formula(parse_formula(text)) == text


def test_trace_round_trip_random():
    rng = random.Random(29)
    for _ in range(200):
        t = random_trace(rng, max_len=6, timed=rng.random() < 0.5)
        assert parse_trace(format_trace(t)) == t
