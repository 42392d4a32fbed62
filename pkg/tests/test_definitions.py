import pytest

from fsmkit.ctm import apply_ctm
from fsmkit.definitions import (
    DefinitionError,
    RegexpDefinition,
    parse_definition,
    read_sexprs,
    render_definition,
)
from fsmkit.library import ASTAR_BAB_STAR, SOL1_BUGGY, SOL1_CORRECT
from fsmkit.machines import TmConfig, apply_sm
from fsmkit.regexp import EmptyRegexp, SymbolRegexp, UnionRegexp

from conftest import FIXTURES

FIXTURE_NAMES = sorted(p.name for p in FIXTURES.iterdir() if not p.name.startswith("."))

CORRECT_TEXT = ("(dfa (states q0 q1 q2 ds) (sigma a b) (start q0) (finals q1) "
                "(rules (q0 a q1) (q0 b ds) (q1 a q1) (q1 b q2) (q2 a q1) (q2 b q2) (ds a ds) (ds b ds)))")


def test_correct_machine_listing():
    assert parse_definition(CORRECT_TEXT) == SOL1_CORRECT


def test_regexp_definition():
    d = parse_definition('(regexp (sigma a b) "(a ∪ ε)")')
    assert isinstance(d, RegexpDefinition)
    assert d.regexp == UnionRegexp(SymbolRegexp("a"), EmptyRegexp())
    assert d.sigma == ("a", "b")


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_roundtrip(name):
    text = (FIXTURES / name).read_text(encoding="utf-8")
    value = parse_definition(text)
    assert render_definition(value) == text
    assert parse_definition(render_definition(value)) == value


def test_fixture_goldens():
    def load(name):
        return parse_definition((FIXTURES / name).read_text(encoding="utf-8"))

    buggy, correct = load("buggy.fsm"), load("correct.fsm")
    assert buggy == SOL1_BUGGY and correct == SOL1_CORRECT
    assert apply_sm(buggy, ["a"]) == "reject"
    assert apply_sm(buggy, "a b b a") == "accept"
    assert apply_sm(correct, ["a"]) == "accept"
    assert load("a-star-bab-star.fsm") == ASTAR_BAB_STAR
    tape = "add1 _ I I I I _".split()
    assert apply_ctm(load("addorsub-draft.ctm"), tape, 6) == TmConfig("h", 2, tuple("add1 I I I I I _".split()))
    assert apply_ctm(load("addorsub.ctm"), tape, 6) == TmConfig("h", 7, tuple("add1 _ I I I I I _".split()))
    sub = "sub1 _ I I I I I I I _".split()
    assert apply_ctm(load("addorsub.ctm"), sub, 9) == TmConfig("h", 8, tuple("sub1 _ I I I I I I _ _".split()))
    assert apply_sm(load("anbn.pda"), "a a b b") == "accept"


def test_comments_and_aliases():
    text = """; a one-state acceptor of a*
    (ndfa (states q) (sigma a) (start q) (finals q)
      (rules (q a q) (q @ q)))  ; trailing comment
    """
    m = parse_definition(text)
    assert m.kind == "ndfa" and ("q", "ε", "q") in m.rules


def test_ctm_with_inline_tm():
    text = """(ctm (sigma x)
      (tm STEP (states s h) (sigma x) (start s) (finals h) (rules ((s x) (h R)) ((s _) (h R))))
      (program STEP STEP))"""
    c = parse_definition(text)
    assert apply_ctm(c, ["x", "x"], 0).head == 2
    assert parse_definition(render_definition(c)) == c


@pytest.mark.parametrize("text, where", [
    ("(dfa (states q0)", "line 1, column 1"),
    ("(dfa)\n)", "line 2, column 1"),
    ('(regexp (sigma a) "a', "line 1, column 19"),
    ("(dfa (states q0) (sigma a)\n  (start q0) (finals q0) (rules (q0 a q0)) (bogus))", "line 2"),
    ("(zzz)", "line 1, column 1"),
    ("(dfa (states q0) (sigma a) (start q1) (finals) (rules (q0 a q0)))", "bad designation"),
    ("(dfa (states q0 q1) (sigma a) (start q0) (finals) (rules (q0 a q1)))", "partial dfa"),
    ("(cfg (nonterminals S) (sigma a) (start S) (rules (S a)))", "expected (lhs"),
])
def test_errors_carry_position(text, where):
    with pytest.raises(DefinitionError, match=r"line \d+, column \d+") as info:
        parse_definition(text)
    assert where in str(info.value)


def test_reader_positions():
    docs = read_sexprs("(a\n  (b c))")
    inner = docs[0][1]
    assert (inner.line, inner.col) == (2, 3)
    assert (inner[1].line, inner[1].col) == (2, 6)
