"""Brute-force reference implementations the library is checked against.

Nothing here imports the code under test beyond plain data access on
machines and grammars, so a shared bug cannot make both sides agree.
"""

from __future__ import annotations

import random
import re
from itertools import product

EPS = "ε"


def words_upto(sigma, n):
    for k in range(n + 1):
        yield from product(sigma, repeat=k)


def nfa_accepts(m, word) -> bool:
    """Set-of-states simulation straight off the rule list."""
    def close(states):
        todo, seen = list(states), set(states)
        while todo:
            s = todo.pop()
            for r in m.rules:
                if r.source == s and r.read == EPS and r.target not in seen:
                    seen.add(r.target)
                    todo.append(r.target)
        return seen

    cur = close({m.start})
    for a in word:
        cur = close({r.target for r in m.rules if r.source in cur and r.read == a})
    return bool(cur & set(m.finals))


def pda_accepts(m, word, max_steps) -> bool:
    """Depth-first enumeration of every run of at most ``max_steps`` moves."""
    finals = set(m.finals)

    def go(state, i, stack, steps):
        if i == len(word) and state in finals:
            return True
        if steps == max_steps:
            return False
        for r in m.rules:
            if r.source != state:
                continue
            if r.read != EPS and (i == len(word) or word[i] != r.read):
                continue
            if stack[:len(r.pop)] != r.pop:
                continue
            nxt = i + (r.read != EPS)
            if go(r.target, nxt, r.push + stack[len(r.pop):], steps + 1):
                return True
        return False

    return go(m.start, 0, (), 0)


def language(m, sigma, n) -> set:
    return {w for w in words_upto(sigma, n) if nfa_accepts(m, w)}


def grammar_language(g, n) -> set:
    """All terminal words of length <= n, by a least fixpoint over nonterminals.

    Works for any cfg or rg, ε-productions included.
    """
    N = set(g.nonterminals)
    lang = {A: set() for A in N}

    def expand(rhs):
        out = {()}
        for s in rhs:
            opts = lang[s] if s in N else {(s,)}
            out = {a + b for a in out for b in opts if len(a) + len(b) <= n}
            if not out:
                break
        return out

    changed = True
    while changed:
        changed = False
        for p in g.rules:
            A = p.lhs[0]
            new = expand(p.rhs) - lang[A]
            if new:
                lang[A] |= new
                changed = True
    return lang[g.start]


def regexp_pattern(r, sym_index) -> str:
    """Translate a regexp tree into a Python ``re`` pattern over one char per symbol."""
    name = type(r).__name__
    if name == "EmptyRegexp":
        return "(?:)"
    if name == "NullRegexp":
        return "(?!)"
    if name == "SymbolRegexp":
        return re.escape(chr(0x4E00 + sym_index[r.symbol]))
    if name == "UnionRegexp":
        return f"(?:{regexp_pattern(r.left, sym_index)}|{regexp_pattern(r.right, sym_index)})"
    if name == "ConcatRegexp":
        return f"(?:{regexp_pattern(r.left, sym_index)}{regexp_pattern(r.right, sym_index)})"
    if name == "KleenestarRegexp":
        return f"(?:{regexp_pattern(r.body, sym_index)})*"
    raise TypeError(name)


def regexp_matches(r, sigma, word) -> bool:
    idx = {a: i for i, a in enumerate(sigma)}
    text = "".join(chr(0x4E00 + idx[a]) for a in word)
    return re.fullmatch(regexp_pattern(r, idx), text) is not None


# random generators (stdlib random, independent of the library's Rng)


def random_ndfa_parts(rnd: random.Random, max_states=5, sigma=("a", "b"), max_rules=12, eps=True):
    n = rnd.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    reads = list(sigma) + ([EPS] if eps else [])
    rules = {(rnd.choice(states), rnd.choice(reads), rnd.choice(states)) for _ in range(rnd.randint(0, max_rules))}
    finals = [s for s in states if rnd.random() < 0.4]
    return states, list(sigma), states[0], finals, sorted(rules)


def random_dfa_parts(rnd: random.Random, max_states=4, sigma=("a", "b")):
    n = rnd.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    rules = [(s, a, rnd.choice(states)) for s in states for a in sigma]
    finals = [s for s in states if rnd.random() < 0.5]
    return states, list(sigma), states[0], finals, rules


def random_rg_parts(rnd: random.Random, max_nts=3, sigma=("a", "b"), max_rules=6):
    nts = ["S", "A", "B", "C"][: rnd.randint(1, max_nts)]
    rules = set()
    for _ in range(rnd.randint(1, max_rules)):
        kind = rnd.random()
        if kind < 0.6:
            rules.add((nts[0] if rnd.random() < 0.3 else rnd.choice(nts), (rnd.choice(sigma), rnd.choice(nts))))
        elif kind < 0.9:
            rules.add((rnd.choice(nts), (rnd.choice(sigma),)))
        else:
            rules.add(("S", ()))
    return nts + list(sigma), list(sigma), sorted(rules), "S"


def random_cfg_parts(rnd: random.Random, max_nts=4, sigma=("a", "b"), max_rules=6, max_rhs=3):
    nts = ["S", "A", "B", "C"][: rnd.randint(1, max_nts)]
    symbols = nts + list(sigma)
    rules = set()
    for _ in range(rnd.randint(1, max_rules)):
        rhs = tuple(rnd.choice(symbols) for _ in range(rnd.randint(0, max_rhs)))
        rules.add((rnd.choice(nts), rhs))
    return symbols, list(sigma), sorted(rules), "S"
