import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fsmkit.core import EMP, FsmError, Rng, random_word
from fsmkit.grammars import deriv, make_cfg, make_csg, make_rg
from fsmkit.library import ASTAR_BAB_STAR, RI
from fsmkit.machines import apply_sm, make_dfa, make_ndfa
from fsmkit.regexp import concat_regexp, parse_regexp, printable_regexp
from fsmkit.testers import test_equiv_sm
from fsmkit.transforms import (
    complement_sm,
    concat_sm,
    fsa_to_regexp,
    grammar_to_sm,
    intersection_sm,
    kleenestar_sm,
    ndfa_to_dfa,
    regexp_to_fsa,
    rename_states_sm,
    reverse_fsa,
    sm_to_grammar,
    union_sm,
)

from oracles import (
    grammar_language,
    nfa_accepts,
    random_cfg_parts,
    random_dfa_parts,
    random_ndfa_parts,
    regexp_matches,
    words_upto,
)

AB = ["a", "b"]
A_ONLY = make_dfa(["s", "f", "d"], AB, "s", ["f"],
                  [("s", "a", "f"), ("s", "b", "d"), ("f", "a", "d"), ("f", "b", "d"), ("d", "a", "d"), ("d", "b", "d")])
B_ONLY = make_dfa(["s", "f", "d"], AB, "s", ["f"],
                  [("s", "b", "f"), ("s", "a", "d"), ("f", "a", "d"), ("f", "b", "d"), ("d", "a", "d"), ("d", "b", "d")])
ENDS_IN_B = make_dfa(["p", "q"], AB, "p", ["q"], [("p", "a", "p"), ("p", "b", "q"), ("q", "a", "p"), ("q", "b", "q")])
ANBN = make_cfg(["S", "a", "b"], AB, [("S", "a S b"), ("S", "ε")], "S")
A_B2 = make_cfg(["S", "a", "b"], AB, [("S", "a S b b"), ("S", "b")], "S")


def lang(m, n=6):
    return {w for w in words_upto(m.sigma, n) if apply_sm(m, w) == "accept"}


def test_regexp_to_fsa_matches_a_star_bab_star():
    m = regexp_to_fsa(parse_regexp("a*bab*", AB))
    assert m.kind == "ndfa"
    assert lang(m, 8) == lang(ASTAR_BAB_STAR, 8)


def test_regexp_to_fsa_needs_sigma_without_symbols():
    with pytest.raises(FsmError):
        regexp_to_fsa(parse_regexp("ε", AB))
    m = regexp_to_fsa(parse_regexp("ε", AB), AB)
    assert lang(m, 3) == {()}
    with pytest.raises(FsmError, match="unknown component"):
        regexp_to_fsa(parse_regexp("ab", AB), ["a"])


def test_fsa_to_regexp_roundtrip_a_star_bab_star():
    r = fsa_to_regexp(ASTAR_BAB_STAR)
    assert test_equiv_sm(regexp_to_fsa(r, AB), ASTAR_BAB_STAR, count=500, seed=7).equivalent
    for w in words_upto(AB, 7):
        assert regexp_matches(r, AB, w) == (apply_sm(ASTAR_BAB_STAR, w) == "accept")


def test_fsa_to_regexp_empty_language():
    nothing = make_dfa(["q"], AB, "q", [], [("q", "a", "q"), ("q", "b", "q")])
    assert printable_regexp(fsa_to_regexp(nothing)) == "∅"


@given(st.integers(0, 10**6))
def test_fsa_to_regexp_random(seed):
    m = make_ndfa(*random_ndfa_parts(random.Random(seed), max_states=4, max_rules=8))
    r = fsa_to_regexp(m)
    for w in words_upto(AB, 5):
        assert regexp_matches(r, AB, w) == nfa_accepts(m, w)


MREV = make_ndfa(["S", "q0", "q1", "q2"], AB, "S", ["q0"],
                 [("S", "ε", "q2"), ("q0", "a", "q0"), ("q1", "b", "q0"), ("q2", "a", "q1"), ("q2", "b", "q2")])


def test_ndfa_to_dfa_on_reverse_machine():
    d = ndfa_to_dfa(MREV)
    assert d.kind == "dfa"
    for w in words_upto(AB, 8):
        assert (apply_sm(d, w) == "accept") == nfa_accepts(MREV, w)


def test_ndfa_to_dfa_names():
    d = ndfa_to_dfa(MREV)
    assert d.start == "S-q2"
    assert "ds" in d.states
    assert d == ndfa_to_dfa(MREV)


@given(st.integers(0, 10**6))
def test_ndfa_to_dfa_random(seed):
    m = make_ndfa(*random_ndfa_parts(random.Random(seed)))
    d = ndfa_to_dfa(m)
    assert len(d.rules) == len(d.states) * 2
    for w in words_upto(AB, 6):
        assert (apply_sm(d, w) == "accept") == nfa_accepts(m, w)


def test_rename_states():
    assert rename_states_sm([], ASTAR_BAB_STAR) == ASTAR_BAB_STAR
    r = rename_states_sm(ASTAR_BAB_STAR.states, ASTAR_BAB_STAR)
    assert not set(r.states) & set(ASTAR_BAB_STAR.states)
    assert test_equiv_sm(r, ASTAR_BAB_STAR).equivalent
    again = rename_states_sm(ASTAR_BAB_STAR.states, r)
    assert len(again.states) == len(r.states) and lang(again) == lang(r)


def test_union_of_singletons():
    u = union_sm(A_ONLY, B_ONLY)
    assert u.kind == "ndfa"
    assert lang(u, 4) == {("a",), ("b",)}


def test_concat_matches_regexp():
    r = parse_regexp("a*bab*", AB)
    want = regexp_to_fsa(concat_regexp(r, r))
    got = concat_sm(ASTAR_BAB_STAR, ASTAR_BAB_STAR)
    assert test_equiv_sm(got, want, count=500, seed=3).equivalent
    assert lang(got, 6) == {x + y for x in lang(ASTAR_BAB_STAR, 6) for y in lang(ASTAR_BAB_STAR, 6) if len(x + y) <= 6}


def test_intersection_with_ends_in_b():
    got = lang(intersection_sm(ASTAR_BAB_STAR, ENDS_IN_B), 8)
    assert got == lang(ASTAR_BAB_STAR, 8) & lang(ENDS_IN_B, 8)


def test_complement():
    c = complement_sm(ASTAR_BAB_STAR)
    assert lang(c) == set(words_upto(AB, 6)) - lang(ASTAR_BAB_STAR)


def test_closure_kind_errors():
    p = grammar_to_sm(ANBN)
    with pytest.raises(FsmError, match="kind mismatch"):
        union_sm(ASTAR_BAB_STAR, p)
    with pytest.raises(FsmError, match="tm closure unsupported"):
        kleenestar_sm(RI)
    with pytest.raises(FsmError, match="not closed for pda"):
        complement_sm(p)
    with pytest.raises(FsmError, match="not closed for pda"):
        intersection_sm(p, p)


def test_pda_closures():
    p1, p2 = grammar_to_sm(ANBN), grammar_to_sm(A_B2)
    l1, l2 = grammar_language(ANBN, 6), grammar_language(A_B2, 6)
    assert lang(union_sm(p1, p2)) == l1 | l2
    assert lang(concat_sm(p1, p2)) == {x + y for x in l1 for y in l2 if len(x + y) <= 6}
    star = lang(kleenestar_sm(p2))
    want = {()}
    for _ in range(6):
        want |= {x + y for x in want for y in l2 if len(x + y) <= 6}
    assert star == want


def test_pda_star_cannot_reuse_leftover_stack():
    # each pass leaves an x behind; the next pass must not be able to pop it
    from fsmkit.machines import make_pda
    p = make_pda(["s", "f"], AB, ["x"], "s", ["f", "s"],
                 [(("s", "a", "ε"), ("f", ["x"])), (("s", "b", ["x"]), ("f", "ε"))])
    assert lang(p, 3) == {(), ("a",)}
    assert lang(kleenestar_sm(p), 3) == {(), ("a",), ("a", "a"), ("a", "a", "a")}


def test_grammar_to_sm():
    a_star = make_rg(["S", "a"], ["a"], [("S", "a S"), ("S", "a"), ("S", "ε")], "S")
    assert lang(grammar_to_sm(a_star)) == set(words_upto(["a"], 6))
    p = grammar_to_sm(ANBN)
    assert p.kind == "pda"
    assert apply_sm(p, "a a b b") == "accept"
    assert apply_sm(p, "a a b") == "reject"
    with pytest.raises(FsmError, match="csg conversion unsupported"):
        grammar_to_sm(make_csg(["S", "a"], ["a"], [("S", "a")], "S"))


def test_sm_to_grammar_fsa():
    g = sm_to_grammar(A_ONLY)
    assert g.kind == "rg"
    assert {w for w in words_upto(AB, 4) if deriv(g, w)} == {("a",)}
    g3 = sm_to_grammar(ASTAR_BAB_STAR)
    rng = Rng(11)
    for _ in range(200):
        w = random_word(AB, rng, 12)
        assert bool(deriv(g3, w)) == (apply_sm(ASTAR_BAB_STAR, w) == "accept")
    eps = sm_to_grammar(make_dfa(["q"], ["a"], "q", ["q"], [("q", "a", "q")]))
    assert deriv(eps, [])


def test_sm_to_grammar_ndfa_with_eps():
    m = make_ndfa(["p", "q", "r"], AB, "p", ["r"], [("p", EMP, "q"), ("q", "a", "r"), ("r", EMP, "p")])
    g = sm_to_grammar(m)
    for w in words_upto(AB, 5):
        assert bool(deriv(g, w)) == nfa_accepts(m, w)


def test_sm_to_grammar_pda():
    for cfg in (ANBN, A_B2):
        g = sm_to_grammar(grammar_to_sm(cfg))
        assert g.kind == "cfg"
        assert grammar_language(g, 6) == grammar_language(cfg, 6)
        for w in words_upto(AB, 5):
            assert bool(deriv(g, w)) == (w in grammar_language(cfg, 5))
    with pytest.raises(FsmError, match="tm conversion unsupported"):
        sm_to_grammar(RI)


@given(st.integers(0, 10**6))
def test_pda_cfg_pda_random(seed):
    V, sigma, rules, start = random_cfg_parts(random.Random(seed), max_nts=2, max_rules=4, max_rhs=2)
    g = make_cfg(V, sigma, rules, start)
    p = grammar_to_sm(g)
    back = sm_to_grammar(p)
    want = grammar_language(g, 4)
    assert lang(p, 4) == want
    assert grammar_language(back, 4) == want


def test_reverse_a_star_bab_star_shape():
    r = reverse_fsa(ASTAR_BAB_STAR)
    assert r.kind == "ndfa"
    assert "ds" not in r.states
    assert r.finals == ("q0",)
    eps = [x for x in r.rules if x.read == EMP]
    assert len(eps) == 1 and eps[0].source == r.start and eps[0].target == "q2"
    assert r.start not in ASTAR_BAB_STAR.states
    assert lang(r, 8) == {w[::-1] for w in lang(ASTAR_BAB_STAR, 8)}


@given(st.integers(0, 10**6))
def test_reverse_random(seed):
    m = make_dfa(*random_dfa_parts(random.Random(seed)))
    assert lang(reverse_fsa(m), 6) == {w[::-1] for w in lang(m, 6)}


def test_reverse_requires_dfa():
    with pytest.raises(FsmError):
        reverse_fsa(MREV)
