"""State machines: dfa, ndfa, pda and tm constructors plus their observers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from . import kernels
from .core import (
    ACCEPT,
    BLANK,
    EMP,
    LEFT,
    REJECT,
    RIGHT,
    FsmError,
    StepLimitExceeded,
    check_token,
    check_word,
    make_alphabet,
)

DFA, NDFA, PDA, TM = "dfa", "ndfa", "pda", "tm"
KINDS = (DFA, NDFA, PDA, TM)

DEFAULT_TM_STEP_LIMIT = 10_000


class FsaRule(NamedTuple):
    source: str
    read: str
    target: str


class PdaRule(NamedTuple):
    source: str
    read: str
    pop: tuple
    target: str
    push: tuple


class TmRule(NamedTuple):
    source: str
    read: str
    target: str
    action: str


class FsaStep(NamedTuple):
    state: str
    unconsumed: tuple


class PdaStep(NamedTuple):
    state: str
    unconsumed: tuple
    stack: tuple


class TmConfig(NamedTuple):
    state: str | None
    head: int
    tape: tuple

    def __str__(self):
        return f"({self.state} {self.head} ({' '.join(self.tape)}))"


@dataclass(frozen=True)
class StateMachine:
    kind: str
    states: tuple
    sigma: tuple
    start: str
    finals: tuple
    rules: tuple
    gamma: tuple | None = None
    name: str | None = field(default=None, compare=False)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<{self.kind}{label}: {len(self.states)} states, {len(self.rules)} rules>"

    @cached_property
    def _nfa(self):
        if self.kind not in (DFA, NDFA):
            raise FsmError(f"{self.kind} has no finite-automaton kernel")
        sidx = {s: i for i, s in enumerate(self.states)}
        aidx = {a: i for i, a in enumerate(self.sigma)}
        n, k = len(self.states), len(self.sigma)
        eps = [0] * n
        delta = [[0] * k for _ in range(n)]
        for r in self.rules:
            bit = 1 << sidx[r.target]
            if r.read == EMP:
                eps[sidx[r.source]] |= bit
            else:
                delta[sidx[r.source]][aidx[r.read]] |= bit
        finals = 0
        for f in self.finals:
            finals |= 1 << sidx[f]
        return kernels.compile_nfa(n, k, sidx[self.start], finals, eps, delta), aidx

    @cached_property
    def _rules_by_state(self):
        table: dict = {}
        for r in self.rules:
            table.setdefault(r.source, []).append(r)
        return table


def _state_set(states) -> tuple:
    out = tuple(states)
    if not out:
        raise FsmError("a machine needs at least one state")
    seen = set()
    for s in out:
        check_token(s, "state")
        if s == EMP:
            raise FsmError("ε cannot name a state")
        if s in seen:
            raise FsmError(f"duplicate state {s!r}")
        seen.add(s)
    return out


def _designate(states, start, finals) -> tuple:
    finals = tuple(dict.fromkeys(finals))
    if start not in states:
        raise FsmError(f"bad designation: start state {start!r} is not a state")
    for f in finals:
        if f not in states:
            raise FsmError(f"bad designation: final state {f!r} is not a state")
    return finals


def _unknown(what, value):
    return FsmError(f"unknown component: {what} {value!r}")


def _fsa_rules(rules, states, allowed_reads):
    out = []
    S = set(states)
    for r in rules:
        try:
            f, b, t = r
        except (TypeError, ValueError):
            raise FsmError(f"malformed rule {r!r}: expected (from read to)") from None
        if f not in S:
            raise _unknown("state", f)
        if t not in S:
            raise _unknown("state", t)
        if b not in allowed_reads:
            raise _unknown("symbol", b)
        out.append(FsaRule(f, b, t))
    return tuple(dict.fromkeys(out))


def make_dfa(states, sigma, start, finals, rules, name=None) -> StateMachine:
    """Build a deterministic finite automaton.

    ``rules`` are ``(from, symbol, to)`` triples and must describe a total
    function: exactly one rule for every (state, symbol) pair.
    """
    states = _state_set(states)
    sigma = make_alphabet(sigma)
    finals = _designate(states, start, finals)
    rules = _fsa_rules(rules, states, set(sigma))
    seen = {}
    for r in rules:
        key = (r.source, r.read)
        if key in seen:
            raise FsmError(f"nondeterministic dfa: two rules for {key}: {seen[key]} and {tuple(r)}")
        seen[key] = tuple(r)
    for s in states:
        for a in sigma:
            if (s, a) not in seen:
                raise FsmError(f"partial dfa: no rule for state {s!r} on {a!r}")
    return StateMachine(DFA, states, sigma, start, finals, rules, name=name)


def make_ndfa(states, sigma, start, finals, rules, name=None) -> StateMachine:
    states = _state_set(states)
    sigma = make_alphabet(sigma)
    finals = _designate(states, start, finals)
    rules = _fsa_rules(rules, states, set(sigma) | {EMP})
    return StateMachine(NDFA, states, sigma, start, finals, rules, name=name)


def _stack_seq(x, gamma, what):
    if x == EMP or x is None:
        return ()
    if isinstance(x, str):
        raise FsmError(f"malformed {what}: {x!r} must be ε or a list of stack symbols")
    seq = tuple(x)
    for g in seq:
        if g not in gamma:
            raise _unknown("stack symbol", g)
    return seq


def make_pda(states, sigma, gamma, start, finals, rules, name=None) -> StateMachine:
    """Build a pushdown automaton accepting by final state.

    Rules are ``((from, read, pop), (to, push))`` where ``read`` may be ε and
    ``pop``/``push`` are ε or sequences of stack symbols, leftmost on top.
    """
    states = _state_set(states)
    sigma = make_alphabet(sigma)
    gamma = make_alphabet(gamma, "stack alphabet")
    finals = _designate(states, start, finals)
    S, reads, G = set(states), set(sigma) | {EMP}, set(gamma)
    out = []
    for r in rules:
        if isinstance(r, PdaRule):
            f, b, g, t, l = r
        else:
            try:
                (f, b, g), (t, l) = r
            except (TypeError, ValueError):
                raise FsmError(f"malformed rule {r!r}: expected ((from read pop) (to push))") from None
        if f not in S:
            raise _unknown("state", f)
        if t not in S:
            raise _unknown("state", t)
        if b not in reads:
            raise _unknown("symbol", b)
        out.append(PdaRule(f, b, _stack_seq(g, G, "pop"), t, _stack_seq(l, G, "push")))
    return StateMachine(PDA, states, sigma, start, finals, tuple(dict.fromkeys(out)), gamma=gamma, name=name)


def make_tm(states, sigma, rules, start, finals, name=None) -> StateMachine:
    """Build a Turing machine.

    Rules are ``((from, read), (to, action))``; ``read`` is a symbol or
    BLANK, ``action`` writes a symbol/BLANK or moves the head (LEFT/RIGHT).
    Note the argument order (rules before start), as in the original library.
    """
    states = _state_set(states)
    sigma = make_alphabet(sigma)
    finals = _designate(states, start, finals)
    S = set(states)
    reads = set(sigma) | {BLANK}
    actions = reads | {LEFT, RIGHT}
    out = []
    for r in rules:
        if isinstance(r, TmRule):
            f, b, t, l = r
        else:
            try:
                (f, b), (t, l) = r
            except (TypeError, ValueError):
                raise FsmError(f"malformed rule {r!r}: expected ((from read) (to action))") from None
        if f not in S:
            raise _unknown("state", f)
        if t not in S:
            raise _unknown("state", t)
        if b not in reads:
            raise _unknown("symbol", b)
        if l not in actions:
            raise _unknown("action", l)
        out.append(TmRule(f, b, t, l))
    return StateMachine(TM, states, sigma, start, finals, tuple(dict.fromkeys(out)), name=name)


def remake(m: StateMachine, **changes) -> StateMachine:
    """Rebuild ``m`` through its validating constructor with some parts replaced."""
    parts = dict(
        kind=m.kind, states=m.states, sigma=m.sigma, gamma=m.gamma,
        start=m.start, finals=m.finals, rules=m.rules, name=m.name,
    )
    parts.update(changes)
    kind = parts.pop("kind")
    if kind == DFA:
        parts.pop("gamma")
        return make_dfa(**parts)
    if kind == NDFA:
        parts.pop("gamma")
        return make_ndfa(**parts)
    if kind == PDA:
        return make_pda(**parts)
    if kind == TM:
        parts.pop("gamma")
        return make_tm(**parts)
    raise FsmError(f"unknown machine kind {kind!r}")


# accessors

def sm_states(m: StateMachine) -> tuple:
    return m.states


def sm_alphabet(m: StateMachine) -> tuple:
    return m.sigma


def sm_stack_alphabet(m: StateMachine) -> tuple:
    if m.kind != PDA:
        raise FsmError(f"no stack alphabet: a {m.kind} has no Γ")
    return m.gamma


def sm_start(m: StateMachine) -> str:
    return m.start


def sm_finals(m: StateMachine) -> tuple:
    return m.finals


def sm_rules(m: StateMachine) -> tuple:
    return m.rules


# applicators

def pda_bound(m: StateMachine, word: Sequence[str]) -> int:
    return 10 * (len(word) + 1) * len(m.states)


def apply_sm(m: StateMachine, word: Sequence[str], head: int = 0, *,
             step_limit: int | None = None, bound: int | None = None) -> str:
    """Run ``m`` on ``word`` and return ``"accept"`` or ``"reject"``.

    Finite automata are simulated over state sets, pdas by a breadth-first
    search over configurations (depth-limited by ``bound``), and tms by a
    breadth-first search that raises ``StepLimitExceeded`` past
    ``step_limit`` steps. ``head`` only matters for tms.
    """
    if m.kind in (DFA, NDFA):
        nfa, aidx = m._nfa
        w = check_word(word, m.sigma)
        return ACCEPT if nfa.accepts([aidx[a] for a in w]) else REJECT
    return ACCEPT if show_transitions_sm(m, word, head, step_limit=step_limit, bound=bound) else REJECT


def show_transitions_sm(m: StateMachine, word: Sequence[str], head: int = 0, *,
                        step_limit: int | None = None, bound: int | None = None) -> list:
    """One accepting path through ``m`` for ``word``, or ``[]`` if none exists.

    Steps are ``FsaStep``/``PdaStep``/``TmConfig`` snapshots from the start
    configuration to the accepting one.
    """
    if m.kind == TM:
        w = check_word(word, m.sigma + (BLANK,))
        return run_tm(m, w, head, step_limit=step_limit)[1]
    w = check_word(word, m.sigma)
    if m.kind in (DFA, NDFA):
        return _fsa_path(m, w)
    if not pda_can_accept(m, w):
        return []
    return _pda_path(m, w, bound if bound is not None else pda_bound(m, w))


def _fsa_path(m, w):
    by_state = m._rules_by_state
    n = len(w)
    start = (m.start, 0)
    parent = {start: None}
    queue = deque([start])
    finals = set(m.finals)
    while queue:
        cfg = queue.popleft()
        state, pos = cfg
        if pos == n and state in finals:
            return _unwind(parent, cfg, lambda c: FsaStep(c[0], w[c[1]:]))
        for r in by_state.get(state, ()):
            if r.read == EMP:
                nxt = (r.target, pos)
            elif pos < n and r.read == w[pos]:
                nxt = (r.target, pos + 1)
            else:
                continue
            if nxt not in parent:
                parent[nxt] = cfg
                queue.append(nxt)
    return []


def _pda_path(m, w, bound):
    by_state = m._rules_by_state
    n = len(w)
    start = (m.start, 0, ())
    parent = {start: None}
    frontier = [start]
    finals = set(m.finals)
    depth = 0
    while frontier:
        nxt_frontier = []
        for cfg in frontier:
            state, pos, stack = cfg
            if pos == n and state in finals:
                return _unwind(parent, cfg, lambda c: PdaStep(c[0], w[c[1]:], c[2]))
            if depth >= bound:
                continue
            for r in by_state.get(state, ()):
                if r.read == EMP:
                    npos = pos
                elif pos < n and r.read == w[pos]:
                    npos = pos + 1
                else:
                    continue
                k = len(r.pop)
                if stack[:k] != r.pop:
                    continue
                nxt = (r.target, npos, r.push + stack[k:])
                if nxt not in parent:
                    parent[nxt] = cfg
                    nxt_frontier.append(nxt)
        frontier = nxt_frontier
        depth += 1
    return []


def pda_can_accept(m: StateMachine, w: Sequence[str]) -> bool:
    """Whether any accepting run on ``w`` exists, with no bound on its length.

    Every rule is split into single push/pop moves over nodes (state,
    input position). Same-level summaries (u reaches v leaving the stack as
    it was) are saturated with a worklist; a run may also leave pushes
    unmatched, so the accepting nodes are those reachable from the start
    through summaries and pushes. Cubic in the node count, so it stays
    cheap where the breadth-first search over stacks can blow up.
    """
    n = len(w)
    noops, pushes, pops = {}, {}, {}

    def edge(table, u, item):
        table.setdefault(u, []).append(item)

    for k, r in enumerate(m.rules):
        ops = [(0, g) for g in r.pop] + [(1, g) for g in reversed(r.push)]
        for i in range(n + 1):
            if r.read == EMP:
                j = i
            elif i < n and w[i] == r.read:
                j = i + 1
            else:
                continue
            src, dst = (r.source, i), (r.target, j)
            if not ops:
                edge(noops, src, dst)
                continue
            cur = src
            for step, (is_push, g) in enumerate(ops):
                nxt = dst if step == len(ops) - 1 else (k, step, i)
                edge(pushes if is_push else pops, cur, (g, nxt))
                cur = nxt

    summary: dict = {}
    callers: dict = {}
    work = []

    def add(u, v):
        seen = summary.setdefault(u, set())
        if v not in seen:
            seen.add(v)
            work.append((u, v))

    root = (m.start, 0)
    add(root, root)
    while work:
        u, v = work.pop()
        for x in noops.get(v, ()):
            add(u, x)
        for g, x in pushes.get(v, ()):
            callers.setdefault(x, set()).add((u, g))
            add(x, x)
            for y in list(summary[x]):
                for g2, z in pops.get(y, ()):
                    if g2 == g:
                        add(u, z)
        for g, z in pops.get(v, ()):
            for c, g2 in list(callers.get(u, ())):
                if g2 == g:
                    add(c, z)

    finals = {(f, n) for f in m.finals}
    seen = {root}
    todo = [root]
    while todo:
        u = todo.pop()
        if u in finals:
            return True
        nxt = set(summary.get(u, ())) | {x for _, x in pushes.get(u, ())}
        for x in nxt - seen:
            seen.add(x)
            todo.append(x)
    return False


def _unwind(parent, cfg, render):
    path = []
    while cfg is not None:
        path.append(render(cfg))
        cfg = parent[cfg]
    path.reverse()
    return path


def normalize_tape(tape: Sequence[str], head: int) -> tuple:
    tape = tuple(tape)
    if head < 0:
        raise FsmError("head position must be >= 0")
    if head >= len(tape):
        tape = tape + (BLANK,) * (head + 1 - len(tape))
    return tape


def run_tm(m: StateMachine, tape: Sequence[str], head: int = 0, *,
           step_limit: int | None = None) -> tuple[TmConfig | None, list]:
    """Search for a halting-in-a-final-state run of tm ``m``.

    Returns ``(final_config, path)``; ``(None, [])`` when every run gets stuck
    (or revisits a configuration) outside the final states. Moving left of
    cell 0 raises ``FsmError``; running past ``step_limit`` raises
    ``StepLimitExceeded``.
    """
    if m.kind != TM:
        raise FsmError(f"expected a tm, got a {m.kind}")
    limit = DEFAULT_TM_STEP_LIMIT if step_limit is None else step_limit
    tape = normalize_tape(tape, head)
    by_state = m._rules_by_state
    finals = set(m.finals)
    start = TmConfig(m.start, head, tape)
    parent = {start: None}
    frontier = [start]
    steps = 0
    while frontier:
        nxt_frontier = []
        for cfg in frontier:
            if cfg.state in finals:
                return cfg, _unwind(parent, cfg, lambda c: c)
            read = cfg.tape[cfg.head]
            moves = [r for r in by_state.get(cfg.state, ()) if r.read == read]
            if moves and steps >= limit:
                raise StepLimitExceeded(limit)
            for r in moves:
                nxt = _tm_step(cfg, r)
                if nxt not in parent:
                    parent[nxt] = cfg
                    nxt_frontier.append(nxt)
        frontier = nxt_frontier
        steps += 1
    return None, []


def _tm_step(cfg: TmConfig, r: TmRule) -> TmConfig:
    h, tape = cfg.head, cfg.tape
    if r.action == RIGHT:
        h += 1
        if h == len(tape):
            tape = tape + (BLANK,)
    elif r.action == LEFT:
        if h == 0:
            raise FsmError("fell off tape: moved left of position 0")
        h -= 1
    else:
        tape = tape[:h] + (r.action,) + tape[h + 1:]
    return TmConfig(r.target, h, tape)
