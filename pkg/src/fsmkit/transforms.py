"""Machine and grammar transformers built from the classic constructive proofs."""

from __future__ import annotations

from itertools import product

from .core import EMP, RESERVED, FsmError, gen_symbol
from .grammars import CSG, RG, Grammar, Production, make_cfg, make_rg
from .machines import (
    DFA,
    NDFA,
    PDA,
    TM,
    PdaRule,
    StateMachine,
    make_dfa,
    make_ndfa,
    make_pda,
    remake,
)
from .regexp import (
    ConcatRegexp,
    EmptyRegexp,
    KleenestarRegexp,
    NullRegexp,
    SymbolRegexp,
    UnionRegexp,
    regexp_symbols,
)

# renaming


def rename_states_sm(avoid, m: StateMachine) -> StateMachine:
    """Rename every state of ``m`` so that none of the new names is in ``avoid``."""
    taken = set(avoid)
    mapping = {}
    for s in m.states:
        new = gen_symbol(s, taken)
        taken.add(new)
        mapping[s] = new
    return _relabel(m, mapping)


def _relabel(m, mapping):
    rules = [r._replace(source=mapping[r.source], target=mapping[r.target]) for r in m.rules]
    return remake(
        m,
        states=[mapping[s] for s in m.states],
        start=mapping[m.start],
        finals=[mapping[f] for f in m.finals],
        rules=rules,
        name=None,
    )


def _rename_gamma(avoid, m):
    """Give a pda's stack symbols fresh names outside ``avoid``."""
    taken = set(avoid) | RESERVED
    mapping = {}
    for g in m.gamma:
        new = gen_symbol(g, taken)
        taken.add(new)
        mapping[g] = new
    rules = [r._replace(pop=tuple(mapping[x] for x in r.pop), push=tuple(mapping[x] for x in r.push))
             for r in m.rules]
    return remake(m, gamma=[mapping[g] for g in m.gamma], rules=rules)


def _merge(*seqs):
    return tuple(dict.fromkeys(x for seq in seqs for x in seq))


def _as_ndfa(m):
    if m.kind == NDFA:
        return m
    return make_ndfa(m.states, m.sigma, m.start, m.finals, m.rules)


# closure constructions


def _closure_kinds(*ms):
    for m in ms:
        if m.kind == TM:
            raise FsmError("tm closure unsupported: closure constructions take dfa, ndfa or pda")
    if len({m.kind for m in ms}) > 1:
        raise FsmError(f"kind mismatch: {' and '.join(m.kind for m in ms)}")
    return ms[0].kind


def _disjoint_pair(m1, m2):
    m2 = rename_states_sm(m1.states, m2)
    if m1.kind == PDA:
        m2 = _rename_gamma(m1.gamma, m2)
    return m2


def _eps_rule(kind, source, target):
    if kind == PDA:
        return PdaRule(source, EMP, (), target, ())
    return (source, EMP, target)


def _build(kind, states, sigma, start, finals, rules, gamma=None):
    if kind == PDA:
        return make_pda(states, sigma, gamma, start, finals, rules)
    return make_ndfa(states, sigma, start, finals, rules)


def union_sm(m1: StateMachine, m2: StateMachine) -> StateMachine:
    """A machine for L(m1) ∪ L(m2): a fresh start with ε-moves to both starts.

    dfa inputs yield an ndfa; pda inputs a pda (stack alphabets kept disjoint).
    """
    kind = _closure_kinds(m1, m2)
    if kind == DFA:
        m1, m2 = _as_ndfa(m1), _as_ndfa(m2)
    m2 = _disjoint_pair(m1, m2)
    states = m1.states + m2.states
    s = gen_symbol("S", states)
    rules = [_eps_rule(kind, s, m1.start), _eps_rule(kind, s, m2.start), *m1.rules, *m2.rules]
    gamma = m1.gamma + m2.gamma if kind == PDA else None
    return _build(m1.kind, (s,) + states, _merge(m1.sigma, m2.sigma), s, m1.finals + m2.finals, rules, gamma)


def concat_sm(m1: StateMachine, m2: StateMachine) -> StateMachine:
    """A machine for L(m1)L(m2): ε-moves from m1's finals to m2's start."""
    kind = _closure_kinds(m1, m2)
    if kind == DFA:
        m1, m2 = _as_ndfa(m1), _as_ndfa(m2)
    m2 = _disjoint_pair(m1, m2)
    rules = [*m1.rules, *m2.rules] + [_eps_rule(kind, f, m2.start) for f in m1.finals]
    gamma = m1.gamma + m2.gamma if kind == PDA else None
    return _build(m1.kind, m1.states + m2.states, _merge(m1.sigma, m2.sigma), m1.start, m2.finals, rules, gamma)


def kleenestar_sm(m: StateMachine) -> StateMachine:
    """A machine for L(m)*.

    Finite automata get a fresh accepting start looped through by ε-moves.
    For a pda each pass starts on a fresh bottom marker and the stack is
    drained back to it before the next pass, so one pass cannot read what
    an earlier one left behind.
    """
    kind = _closure_kinds(m)
    if kind == DFA:
        m = _as_ndfa(m)
    s = gen_symbol("S", m.states)
    if kind != PDA:
        rules = [(s, EMP, m.start), *m.rules] + [(f, EMP, s) for f in m.finals]
        return make_ndfa((s,) + m.states, m.sigma, s, (s,) + m.finals, rules)
    drain = gen_symbol("D", set(m.states) | {s})
    bottom = gen_symbol("Z", set(m.gamma) | RESERVED)
    rules = [PdaRule(s, EMP, (), m.start, (bottom,)), *m.rules]
    rules += [PdaRule(f, EMP, (), drain, ()) for f in m.finals]
    rules += [PdaRule(drain, EMP, (g,), drain, ()) for g in m.gamma]
    rules.append(PdaRule(drain, EMP, (bottom,), s, ()))
    return make_pda((s, drain) + m.states, m.sigma, m.gamma + (bottom,), s, (s,) + m.finals, rules)


def _regular_only(*ms):
    for m in ms:
        if m.kind == TM:
            raise FsmError("tm closure unsupported: closure constructions take dfa or ndfa")
        if m.kind == PDA:
            raise FsmError("not closed for pda: context-free languages are not closed under this operation")
    if len({m.kind for m in ms}) > 1:
        raise FsmError(f"kind mismatch: {' and '.join(m.kind for m in ms)}")


def complement_sm(m: StateMachine) -> StateMachine:
    """Flip the finals of the (total) dfa for ``m``."""
    _regular_only(m)
    d = ndfa_to_dfa(m) if m.kind == NDFA else m
    finals = [s for s in d.states if s not in d.finals]
    return make_dfa(d.states, d.sigma, d.start, finals, d.rules)


def _complete_dfa(d, sigma):
    missing = [a for a in sigma if a not in d.sigma]
    if not missing:
        return d
    dead = gen_symbol("ds", d.states)
    rules = list(d.rules)
    rules += [(s, a, dead) for s in d.states for a in missing]
    rules += [(dead, a, dead) for a in sigma]
    return make_dfa(d.states + (dead,), sigma, d.start, d.finals, rules)


def intersection_sm(m1: StateMachine, m2: StateMachine) -> StateMachine:
    """Product construction on the total dfas for ``m1`` and ``m2``."""
    _regular_only(m1, m2)
    sigma = _merge(m1.sigma, m2.sigma)
    d1 = _complete_dfa(ndfa_to_dfa(m1) if m1.kind == NDFA else m1, sigma)
    d2 = _complete_dfa(ndfa_to_dfa(m2) if m2.kind == NDFA else m2, sigma)
    t1 = {(r.source, r.read): r.target for r in d1.rules}
    t2 = {(r.source, r.read): r.target for r in d2.rules}
    names = {}
    used = set()

    def name(pair):
        if pair not in names:
            new = gen_symbol(f"{pair[0]}-{pair[1]}", used)
            used.add(new)
            names[pair] = new
        return names[pair]

    start = (d1.start, d2.start)
    name(start)
    todo = [start]
    rules = []
    seen = {start}
    while todo:
        p, q = pair = todo.pop(0)
        for a in sigma:
            nxt = (t1[p, a], t2[q, a])
            rules.append((name(pair), a, name(nxt)))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    F1, F2 = set(d1.finals), set(d2.finals)
    finals = [n for (p, q), n in names.items() if p in F1 and q in F2]
    return make_dfa(list(names.values()), sigma, names[start], finals, rules)


# determinization


def ndfa_to_dfa(m: StateMachine) -> StateMachine:
    """Subset construction over ε-closures, materializing reachable subsets only.

    Each dfa state is named after its sorted member set (``q0-q1``); the
    empty subset becomes the sink ``ds``. Clashes fall back to ``gen_symbol``.
    """
    if m.kind not in (DFA, NDFA):
        raise FsmError(f"ndfa->dfa needs an ndfa, got a {m.kind}")
    nfa, _ = m._nfa
    masks, table = nfa.determinize()
    used = set()
    names = []
    for mask in masks:
        members = sorted(s for i, s in enumerate(m.states) if mask >> i & 1)
        base = "-".join(members) if members else "ds"
        new = gen_symbol(base, used)
        used.add(new)
        names.append(new)
    rules = [(names[k], a, names[j]) for k, row in enumerate(table) for a, j in zip(m.sigma, row)]
    finals = [names[k] for k, mask in enumerate(masks) if mask & nfa.finals]
    return make_dfa(names, m.sigma, names[0], finals, rules)


# regular expressions


class _Thompson:
    def __init__(self):
        self.count = 0
        self.rules = []

    def fresh(self):
        s = f"q{self.count}"
        self.count += 1
        return s

    def build(self, r):
        s, f = self.fresh(), self.fresh()
        if isinstance(r, EmptyRegexp):
            self.rules.append((s, EMP, f))
        elif isinstance(r, NullRegexp):
            pass
        elif isinstance(r, SymbolRegexp):
            self.rules.append((s, r.symbol, f))
        elif isinstance(r, UnionRegexp):
            for part in (r.left, r.right):
                ps, pf = self.build(part)
                self.rules += [(s, EMP, ps), (pf, EMP, f)]
        elif isinstance(r, ConcatRegexp):
            ls, lf = self.build(r.left)
            rs, rf = self.build(r.right)
            self.rules += [(s, EMP, ls), (lf, EMP, rs), (rf, EMP, f)]
        elif isinstance(r, KleenestarRegexp):
            bs, bf = self.build(r.body)
            self.rules += [(s, EMP, bs), (s, EMP, f), (bf, EMP, bs), (bf, EMP, f)]
        else:
            raise FsmError(f"not a regular expression: {r!r}")
        return s, f


def regexp_to_fsa(r, sigma=None) -> StateMachine:
    """Thompson construction: one ε-wired fragment per tree node.

    ``sigma`` defaults to the symbols occurring in ``r``; pass it explicitly
    for expressions such as ε that mention no symbol.
    """
    syms = regexp_symbols(r)
    sigma = tuple(sigma) if sigma is not None else tuple(syms)
    extra = set(syms) - set(sigma)
    if extra:
        raise FsmError(f"unknown component: regexp symbols {sorted(extra)} are not in the alphabet")
    t = _Thompson()
    s, f = t.build(r)
    states = [f"q{i}" for i in range(t.count)]
    return make_ndfa(states, sigma, s, [f], t.rules)


def _union(a, b):
    if a is None:
        return b
    return UnionRegexp(a, b)


def _cat(*parts):
    parts = [p for p in parts if not isinstance(p, EmptyRegexp)]
    if not parts:
        return EmptyRegexp()
    out = parts[0]
    for p in parts[1:]:
        out = ConcatRegexp(out, p)
    return out


def _star(r):
    if isinstance(r, (EmptyRegexp, NullRegexp)):
        return EmptyRegexp()
    return KleenestarRegexp(r)


def fsa_to_regexp(m: StateMachine):
    """State elimination, removing states in lexicographic order of their names."""
    if m.kind not in (DFA, NDFA):
        raise FsmError(f"fsa->regexp needs a dfa or ndfa, got a {m.kind}")
    start = gen_symbol("S", m.states)
    final = gen_symbol("F", set(m.states) | {start})
    edges = {}

    def add(p, q, r):
        edges[p, q] = _union(edges.get((p, q)), r)

    add(start, m.start, EmptyRegexp())
    for f in m.finals:
        add(f, final, EmptyRegexp())
    for rule in m.rules:
        add(rule.source, rule.target, EmptyRegexp() if rule.read == EMP else SymbolRegexp(rule.read))
    for k in sorted(m.states):
        loop = edges.pop((k, k), None)
        mid = _star(loop) if loop is not None else EmptyRegexp()
        ins = [(p, r) for (p, q), r in edges.items() if q == k]
        outs = [(q, r) for (p, q), r in edges.items() if p == k]
        for key in [key for key in edges if k in key]:
            del edges[key]
        for p, rin in ins:
            for q, rout in outs:
                add(p, q, _cat(rin, mid, rout))
    return edges.get((start, final), NullRegexp())


# the reverse of a regular language


def _deadstate(s, rules):
    return all(r.target == s for r in rules if r.source == s)


def reverse_fsa(m: StateMachine) -> StateMachine:
    """An ndfa for the reverse of L(m), ``m`` a dfa.

    A fresh start has ε-moves to each of m's finals, every rule is turned
    around, and m's start is the only final. Dead states (non-final, not the
    start, every outgoing rule a self-loop) are dropped with their rules.
    """
    if m.kind != DFA:
        raise FsmError(f"reverse-fsa needs a dfa, got a {m.kind}")
    new_final = m.start
    new_start = gen_symbol("S", m.states)
    finals = set(m.finals)
    dead = {s for s in m.states if _deadstate(s, m.rules) and s not in finals and s != m.start}
    states = [new_start] + [q for q in m.states if q not in dead]
    added = [(new_start, EMP, f) for f in m.finals]
    changed = [(r.target, r.read, r.source) for r in m.rules
               if r.target not in dead and r.source not in dead]
    return make_ndfa(states, m.sigma, new_start, [new_final], added + changed)


# grammars and machines


def _stack_names(symbols):
    taken = set(symbols) | RESERVED
    out = {}
    for s in symbols:
        if s in RESERVED:
            new = gen_symbol(s + "'", taken)
            taken.add(new)
            out[s] = new
        else:
            out[s] = s
    return out


def grammar_to_sm(g: Grammar) -> StateMachine:
    """rg -> ndfa (one state per nonterminal plus an accept state);
    cfg -> pda guessing a leftmost derivation on its stack.
    """
    if g.kind == CSG:
        raise FsmError("csg conversion unsupported")
    if g.kind == RG:
        acc = gen_symbol("F", g.nonterminals)
        rules = []
        finals = [acc]
        for p in g.rules:
            A = p.lhs[0]
            if not p.rhs:
                finals.append(A)
            elif len(p.rhs) == 1:
                rules.append((A, p.rhs[0], acc))
            else:
                rules.append((A, p.rhs[0], p.rhs[1]))
        return make_ndfa(g.nonterminals + (acc,), g.sigma, g.start, finals, rules)
    names = _stack_names(g.symbols)
    bottom = gen_symbol("Z", set(names.values()) | RESERVED)
    s, q, f = "s", "q", "f"
    rules = [PdaRule(s, EMP, (), q, (names[g.start], bottom))]
    for p in g.rules:
        rules.append(PdaRule(q, EMP, (names[p.lhs[0]],), q, tuple(names[x] for x in p.rhs)))
    for a in g.sigma:
        rules.append(PdaRule(q, a, (names[a],), q, ()))
    rules.append(PdaRule(q, EMP, (bottom,), f, ()))
    gamma = tuple(names[x] for x in g.symbols) + (bottom,)
    return make_pda([s, q, f], g.sigma, gamma, s, [f], rules)


def sm_to_grammar(m: StateMachine) -> Grammar:
    """dfa/ndfa -> rg (one nonterminal per state); pda -> cfg (triple construction)."""
    if m.kind == TM:
        raise FsmError("tm conversion unsupported")
    if m.kind == PDA:
        return _pda_to_cfg(m)
    return _fsa_to_rg(m)


def _nt_names(states, sigma):
    taken = set(sigma) | set(states)
    out = {}
    for s in states:
        if s in sigma:
            new = gen_symbol(s, taken)
            taken.add(new)
            out[s] = new
        else:
            out[s] = s
    return out


def _fsa_to_rg(m):
    nfa, aidx = m._nfa
    names = _nt_names(m.states, m.sigma)
    index = {s: i for i, s in enumerate(m.states)}
    eps_free = {}
    for p in m.states:
        closure = nfa.closure(1 << index[p])
        for r in m.rules:
            if r.read != EMP and closure >> index[r.source] & 1:
                eps_free.setdefault(p, {}).setdefault(r.read, set()).add(r.target)
    accepting = {s for s in m.states if nfa.closure(1 << index[s]) & nfa.finals}
    rules = []
    S = names[m.start]
    if m.start in accepting:
        rules.append(Production((S,), ()))
    for p in m.states:
        for a in m.sigma:
            for t in sorted(eps_free.get(p, {}).get(a, ()), key=index.get):
                rules.append(Production((names[p],), (a, names[t])))
                if t in accepting:
                    rules.append(Production((names[p],), (a,)))
    rules = list(dict.fromkeys(rules))
    return make_rg([names[s] for s in m.states] + list(m.sigma), m.sigma, rules, S)


def _pda_to_cfg(m):
    """Triple construction on a normalized copy of ``m``.

    The copy starts by pushing a bottom marker, lets any final state drain
    the stack into a single accept state, and splits every rule into steps
    that either push or pop exactly one symbol. A nonterminal ``[p,q]``
    then derives the words that take the copy from ``p`` to ``q`` leaving
    the stack as it found it.
    """
    taken = set(m.states)

    def fresh(base):
        s = gen_symbol(base, taken)
        taken.add(s)
        return s

    gtaken = set(m.gamma) | RESERVED
    bottom = gen_symbol("Z", gtaken)
    gtaken.add(bottom)
    dummy = gen_symbol("X", gtaken)
    s0, acc, drain = fresh("s"), fresh("a"), fresh("d")
    steps = []  # (from, read, op, symbol, to), op in {"push", "pop"}

    def chain(src, read, ops, dst):
        cur = src
        for i, (op, sym) in enumerate(ops):
            nxt = dst if i == len(ops) - 1 else fresh("t")
            steps.append((cur, read if i == 0 else EMP, op, sym, nxt))
            cur = nxt

    noop = [("push", dummy), ("pop", dummy)]
    chain(s0, EMP, [("push", bottom)], m.start)
    for f in m.finals:
        chain(f, EMP, noop, drain)
    for g in m.gamma:
        chain(drain, EMP, [("pop", g)], drain)
    chain(drain, EMP, [("pop", bottom)], acc)
    for r in m.rules:
        ops = [("pop", g) for g in r.pop] + [("push", g) for g in reversed(r.push)]
        chain(r.source, r.read, ops or noop, r.target)

    states = sorted(taken)
    nt = {}
    ntaken = set(m.sigma)
    for p in states:
        for q in states:
            nt[p, q] = gen_symbol(f"[{p},{q}]", ntaken)
            ntaken.add(nt[p, q])

    def word(*parts):
        return tuple(x for x in parts if x != EMP)

    rules = [Production((nt[p, p],), ()) for p in states]
    pushes = [st for st in steps if st[2] == "push"]
    pops = [st for st in steps if st[2] == "pop"]
    for p, a, _, sym, r in pushes:
        for s, b, _, sym2, q in pops:
            if sym == sym2:
                rules.append(Production((nt[p, q],), word(a, nt[r, s], b)))
    for p, q, r in product(states, repeat=3):
        rules.append(Production((nt[p, q],), (nt[p, r], nt[r, q])))
    start = nt[s0, acc]
    rules = _useful(rules, start, set(m.sigma))
    rules = _useful(_drop_nullable(rules, start), start, set(m.sigma))
    used = {start} | {x for p in rules for x in p.lhs + p.rhs if x not in m.sigma}
    V = [n for n in nt.values() if n in used] + list(m.sigma)
    return make_cfg(V, m.sigma, rules, start)


def _drop_nullable(rules, start):
    """Remove ε-productions (keeping ``start -> ε`` if needed) and trivial ``A -> A`` rules.

    Afterwards every nonterminal but the start yields at least one terminal,
    which keeps breadth-first derivation search finite.
    """
    nullable = set()
    changed = True
    while changed:
        changed = False
        for p in rules:
            if p.lhs[0] not in nullable and all(x in nullable for x in p.rhs):
                nullable.add(p.lhs[0])
                changed = True
    out = []
    for p in rules:
        options = [((x,), ()) if x in nullable else ((x,),) for x in p.rhs]
        for choice in product(*options):
            rhs = tuple(x for part in choice for x in part)
            if rhs and rhs != p.lhs:
                out.append(Production(p.lhs, rhs))
    if start in nullable:
        out.insert(0, Production((start,), ()))
    return list(dict.fromkeys(out))


def _useful(rules, start, terminals):
    """Keep productions whose symbols are all productive and reachable from ``start``."""
    productive = set(terminals)
    changed = True
    while changed:
        changed = False
        for p in rules:
            if p.lhs[0] not in productive and all(x in productive for x in p.rhs):
                productive.add(p.lhs[0])
                changed = True
    rules = [p for p in rules if p.lhs[0] in productive and all(x in productive for x in p.rhs)]
    reach = {start}
    changed = True
    while changed:
        changed = False
        for p in rules:
            if p.lhs[0] in reach:
                for x in p.rhs:
                    if x not in reach:
                        reach.add(x)
                        changed = True
    return [p for p in rules if p.lhs[0] in reach]
