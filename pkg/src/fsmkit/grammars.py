"""Regular, context-free and context-sensitive grammars, and derivation search."""

from __future__ import annotations

import math
import warnings
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .core import EMP, FsmError, check_token, check_word, gen_symbol, make_alphabet, parse_word

RG, CFG, CSG = "rg", "cfg", "csg"

DEFAULT_MAX_EXPANSIONS = 100_000
CSG_LENGTH_SLACK = 5


class Production(NamedTuple):
    lhs: tuple
    rhs: tuple

    def __str__(self):
        return f"{' '.join(self.lhs)} -> {' '.join(self.rhs) or EMP}"


class Derivation(NamedTuple):
    steps: tuple

    def __str__(self):
        return " => ".join(" ".join(f) or EMP for f in self.steps)

    @property
    def word(self) -> tuple:
        return self.steps[-1]


class NotInLanguage(NamedTuple):
    word: tuple

    def __bool__(self):
        return False

    def __str__(self):
        return f"({' '.join(self.word)}) is not in the language of the grammar"


class Undecided(FsmError):
    """The derivation search ran out of budget before reaching a verdict."""

    def __init__(self, word, why):
        super().__init__(f"undecided within budget: ({' '.join(word)}) {why}")
        self.word = tuple(word)


@dataclass(frozen=True)
class Grammar:
    kind: str
    nonterminals: tuple
    sigma: tuple
    rules: tuple
    start: str

    @property
    def symbols(self) -> tuple:
        return self.nonterminals + self.sigma


def _seq(x) -> tuple:
    if x == EMP or x is None:
        return ()
    if isinstance(x, str):
        return tuple(t for t in x.split() if t != EMP)
    return tuple(t for t in x if t != EMP)


def _production(r) -> Production:
    if isinstance(r, Production):
        return r
    try:
        lhs, rhs = r
    except (TypeError, ValueError):
        raise FsmError(f"malformed production {r!r}: expected (lhs, rhs)") from None
    return Production(_seq(lhs), _seq(rhs))


def _make_grammar(kind, V, sigma, rules, start) -> Grammar:
    V = tuple(dict.fromkeys(V))
    for v in V:
        check_token(v, "grammar symbol")
        if v == EMP:
            raise FsmError("ε cannot be a grammar symbol")
    sigma = make_alphabet(sigma)
    missing = set(sigma) - set(V)
    if missing:
        raise FsmError(f"unknown component: terminals {sorted(missing)} are not in V")
    T = set(sigma)
    nts = tuple(v for v in V if v not in T)
    if not nts:
        raise FsmError("a grammar needs at least one nonterminal")
    if start in T:
        raise FsmError(f"terminal start: {start!r} is a terminal")
    if start not in V:
        raise FsmError(f"unknown component: start {start!r} is not in V")
    N = set(nts)
    Vset = set(V)
    out = []
    for r in rules:
        p = _production(r)
        for s in p.lhs + p.rhs:
            if s not in Vset:
                raise _unknown_symbol(s, p)
        _check_shape(kind, p, N, T, start)
        out.append(p)
    deduped = tuple(dict.fromkeys(out))
    if len(deduped) != len(out):
        warnings.warn("duplicate productions removed", stacklevel=3)
    return Grammar(kind, nts, sigma, deduped, start)


def _unknown_symbol(s, p):
    return FsmError(f"unknown component: {s!r} in production {p}")


def _check_shape(kind, p, N, T, start):
    bad = FsmError(f"malformed production ({kind}): {p}")
    if not p.lhs:
        raise bad
    if kind in (RG, CFG):
        if len(p.lhs) != 1 or p.lhs[0] not in N:
            raise bad
    if kind == RG:
        rhs = p.rhs
        ok = (
            (len(rhs) == 1 and rhs[0] in T)
            or (len(rhs) == 2 and rhs[0] in T and rhs[1] in N)
            or (not rhs and p.lhs[0] == start)
        )
        if not ok:
            raise bad
    elif kind == CSG:
        if not any(s in N for s in p.lhs):
            raise bad


def make_rg(V, sigma, rules, start) -> Grammar:
    """Regular grammar: ``A -> a B``, ``A -> a``, or ``S -> ε`` for the start ``S``."""
    return _make_grammar(RG, V, sigma, rules, start)


def make_cfg(V, sigma, rules, start) -> Grammar:
    return _make_grammar(CFG, V, sigma, rules, start)


def make_csg(V, sigma, rules, start) -> Grammar:
    """Context-sensitive grammar: each left side contains at least one nonterminal.

    Right sides may be ε, so the usual non-contracting guarantee does not
    hold in general; see ``deriv`` for what that means for membership.
    """
    return _make_grammar(CSG, V, sigma, rules, start)


def remake_grammar(g: Grammar, **changes) -> Grammar:
    parts = dict(kind=g.kind, V=g.symbols, sigma=g.sigma, rules=g.rules, start=g.start)
    parts.update(changes)
    return _make_grammar(parts["kind"], parts["V"], parts["sigma"], parts["rules"], parts["start"])


def grammar_nonterminals(g: Grammar) -> tuple:
    return g.nonterminals


def grammar_terminals(g: Grammar) -> tuple:
    return g.sigma


def grammar_rules(g: Grammar) -> tuple:
    return g.rules


def grammar_start(g: Grammar) -> str:
    return g.start


def grammar_rename_nts(avoid: Sequence[str], g: Grammar) -> Grammar:
    """Rename every nonterminal to a fresh token outside ``avoid`` (and outside Σ)."""
    taken = set(avoid) | set(g.sigma)
    mapping = {}
    for nt in g.nonterminals:
        new = gen_symbol(nt, taken)
        taken.add(new)
        mapping[nt] = new

    def sub(seq):
        return tuple(mapping.get(s, s) for s in seq)

    rules = [Production(sub(p.lhs), sub(p.rhs)) for p in g.rules]
    V = [mapping[n] for n in g.nonterminals] + list(g.sigma)
    return _make_grammar(g.kind, V, g.sigma, rules, mapping[g.start])


def min_yields(g: Grammar) -> dict:
    """Length of the shortest terminal string each symbol derives (``inf`` if none)."""
    best = {t: 1 for t in g.sigma}
    best.update({n: math.inf for n in g.nonterminals})
    changed = True
    while changed:
        changed = False
        for p in g.rules:
            if len(p.lhs) != 1:
                continue
            n = sum(best[s] for s in p.rhs)
            if n < best[p.lhs[0]]:
                best[p.lhs[0]] = n
                changed = True
    return best


def deriv(g: Grammar, word, *, max_expansions: int = DEFAULT_MAX_EXPANSIONS):
    """Breadth-first search for a shortest derivation of ``word``.

    Returns a ``Derivation`` (forms from ``(S,)`` to the word) or a falsy
    ``NotInLanguage``. Raises ``Undecided`` when the search exhausts
    ``max_expansions`` sentential forms, or, for a contracting csg, when
    forms had to be cut at ``|w| + 5`` symbols.

    rg/cfg searches first settle membership exactly (``derives``), then
    rewrite the leftmost nonterminal only, pruning forms whose fixed
    terminals disagree with the word or whose shortest possible yield is
    already too long.
    """
    w = check_word(word, g.sigma)
    if g.kind == CSG:
        return _deriv_cs(g, w, max_expansions)
    return _deriv_cf(g, w, max_expansions)


def derives(g: Grammar, word) -> bool:
    """Exact membership for rg/cfg: a least fixpoint over (nonterminal, span) facts.

    ``A`` covers ``w[i:j]`` when some production ``A -> X1 ... Xk`` can be
    threaded from ``i`` to ``j`` through terminals matching ``w`` and
    nonterminals already known to cover the spans between. ε-productions
    and unit cycles need no special treatment.
    """
    if g.kind == CSG:
        raise FsmError("exact membership is only decided for rg and cfg")
    w = check_word(word, g.sigma)
    n = len(w)
    N = set(g.nonterminals)
    ends = {}  # (A, i) -> set of j

    def after(symbol, i):
        if symbol in N:
            return ends.get((symbol, i), ())
        return (i + 1,) if i < n and w[i] == symbol else ()

    changed = True
    while changed:
        changed = False
        for p in g.rules:
            A = p.lhs[0]
            for i in range(n + 1):
                cur = {i}
                for sym in p.rhs:
                    cur = {j for k in cur for j in after(sym, k)}
                    if not cur:
                        break
                known = ends.setdefault((A, i), set())
                if not cur <= known:
                    known |= cur
                    changed = True
    return n in ends.get((g.start, 0), ())


def _deriv_cf(g, w, budget):
    N = set(g.nonterminals)
    yields = min_yields(g)
    n = len(w)
    start = (g.start,)
    if yields[g.start] > n or not derives(g, w):
        return NotInLanguage(w)
    by_lhs = {}
    for p in g.rules:
        by_lhs.setdefault(p.lhs[0], []).append(p.rhs)

    def viable(form):
        if sum(yields[s] for s in form) > n:
            return False
        i = 0
        while i < len(form) and form[i] not in N:
            if i >= n or form[i] != w[i]:
                return False
            i += 1
        if i == len(form):
            return form == w
        j = len(form) - 1
        k = n - 1
        while form[j] not in N:
            if k < 0 or form[j] != w[k]:
                return False
            j -= 1
            k -= 1
        # every terminal must appear in w, in order
        pos = 0
        for s in form:
            if s in N:
                continue
            pos = _find(w, s, pos)
            if pos < 0:
                return False
            pos += 1
        return True

    if start == w:
        return Derivation((start,))
    parent = {start: None}
    queue = deque([start])
    expansions = 0
    while queue:
        form = queue.popleft()
        expansions += 1
        if expansions > budget:
            raise Undecided(w, f"after {budget} expansions")
        i = next(k for k, s in enumerate(form) if s in N)
        for rhs in by_lhs.get(form[i], ()):
            new = form[:i] + rhs + form[i + 1:]
            if new in parent or not viable(new):
                continue
            parent[new] = form
            if new == w:
                return _derivation(parent, new)
            queue.append(new)
    return NotInLanguage(w)


def _find(seq, x, start):
    for i in range(start, len(seq)):
        if seq[i] == x:
            return i
    return -1


def _deriv_cs(g, w, budget):
    N = set(g.nonterminals)
    n = len(w)
    contracting = any(len(p.rhs) < len(p.lhs) for p in g.rules)
    cap = n + CSG_LENGTH_SLACK if contracting else n
    start = (g.start,)
    if start == w:
        return Derivation((start,))
    parent = {start: None}
    queue = deque([start])
    expansions = 0
    cut = False
    while queue:
        form = queue.popleft()
        expansions += 1
        if expansions > budget:
            raise Undecided(w, f"after {budget} expansions")
        for p in g.rules:
            k = len(p.lhs)
            for i in range(len(form) - k + 1):
                if form[i:i + k] != p.lhs:
                    continue
                new = form[:i] + p.rhs + form[i + k:]
                if new in parent:
                    continue
                if len(new) > cap:
                    cut = True
                    continue
                if new == w:
                    parent[new] = form
                    return _derivation(parent, new)
                if not any(s in N for s in new):
                    continue
                parent[new] = form
                queue.append(new)
    if cut and contracting:
        raise Undecided(w, f"forms longer than {cap} symbols were cut")
    return NotInLanguage(w)


def _derivation(parent, form):
    steps = []
    while form is not None:
        steps.append(form)
        form = parent[form]
    steps.reverse()
    return Derivation(tuple(steps))


def is_valid_derivation(g: Grammar, steps: Sequence[Sequence[str]], word=None) -> bool:
    """Check that each form follows from the previous by one production of ``g``."""
    steps = [tuple(s) for s in steps]
    if not steps or steps[0] != (g.start,):
        return False
    if isinstance(word, str):
        word = parse_word(word)
    if word is not None and steps[-1] != tuple(word):
        return False
    if any(s in g.nonterminals for s in steps[-1]):
        return False
    for before, after in zip(steps, steps[1:]):
        if not any(_one_step(before, after, p) for p in g.rules):
            return False
    return True


def _one_step(before, after, p):
    k = len(p.lhs)
    for i in range(len(before) - k + 1):
        if before[i:i + k] == p.lhs and before[:i] + p.rhs + before[i + k:] == after:
            return True
    return False
