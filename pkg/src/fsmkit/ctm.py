"""Combined Turing machines: tms glued together with labels, branches, gotos and variables.

A description is written as nested lists, the way it would be in the
original library::

    [LB, LI, [BRANCH, ["sub1", RB, RB, LI, BL],
                      ["add1", RB, RB, I, RI]]]

Elements are tms, label names (bare strings), ``[GOTO, label]``,
``[BRANCH, [symbol, ...], ...]``, ``[VAR, name]`` (binds the symbol under
the head for the rest of the enclosing list; inside that scope the bare
name writes the captured symbol) and nested sub-descriptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .core import BLANK, FsmError, StepLimitExceeded, check_token, make_alphabet
from .machines import TM, StateMachine, TmConfig, normalize_tape, run_tm

BRANCH = "BRANCH"
GOTO = "GOTO"
VAR = "VAR"

DEFAULT_DISPATCH_LIMIT = 10_000


class Label(NamedTuple):
    name: str


class Goto(NamedTuple):
    label: str


class Branch(NamedTuple):
    cases: tuple  # ((symbol, ctmd), ...)


class VarScope(NamedTuple):
    name: str
    body: tuple


class WriteVar(NamedTuple):
    name: str


def parse_ctmd(desc, scope: frozenset = frozenset()) -> tuple:
    """Turn the nested-list form into a tuple of description nodes."""
    if isinstance(desc, (str, StateMachine)):
        raise FsmError(f"a ctm description must be a list, got {desc!r}")
    items = list(desc)
    out = []
    for i, item in enumerate(items):
        if isinstance(item, StateMachine):
            if item.kind != TM:
                raise FsmError(f"only tms can be combined, got a {item.kind}")
            out.append(item)
        elif isinstance(item, (Label, Goto, Branch, WriteVar)):
            out.append(item)
        elif isinstance(item, VarScope):
            out.append(item)
            break
        elif isinstance(item, str):
            check_token(item, "label")
            out.append(WriteVar(item) if item in scope else Label(item))
        elif isinstance(item, (list, tuple)):
            if not item:
                out.append(())
                continue
            head = item[0]
            if head == BRANCH:
                if len(item) < 2:
                    raise FsmError("BRANCH needs at least one case")
                cases = []
                for case in item[1:]:
                    if isinstance(case, str) or not case:
                        raise FsmError(f"malformed BRANCH case {case!r}")
                    cases.append((case[0], parse_ctmd(case[1:], scope)))
                out.append(Branch(tuple(cases)))
            elif head == GOTO:
                if len(item) != 2:
                    raise FsmError(f"malformed GOTO {item!r}")
                out.append(Goto(item[1]))
            elif head == VAR:
                if len(item) != 2:
                    raise FsmError(f"malformed VAR {item!r}")
                name = check_token(item[1], "variable")
                out.append(VarScope(name, parse_ctmd(items[i + 1:], scope | {name})))
                break
            else:
                out.append(parse_ctmd(item, scope))
        else:
            raise FsmError(f"cannot use {item!r} in a ctm description")
    return tuple(out)


def unparse_ctmd(nodes: tuple) -> list:
    """Inverse of ``parse_ctmd``: back to the nested-list form."""
    out = []
    for node in nodes:
        if isinstance(node, StateMachine):
            out.append(node)
        elif isinstance(node, Label):
            out.append(node.name)
        elif isinstance(node, WriteVar):
            out.append(node.name)
        elif isinstance(node, Goto):
            out.append([GOTO, node.label])
        elif isinstance(node, Branch):
            out.append([BRANCH] + [[sym] + unparse_ctmd(body) for sym, body in node.cases])
        elif isinstance(node, VarScope):
            out.append([VAR, node.name])
            out.extend(unparse_ctmd(node.body))
        else:
            out.append(unparse_ctmd(node))
    return out


@dataclass(frozen=True)
class Ctm:
    description: tuple
    sigma: tuple
    program: tuple = field(compare=False, repr=False)
    slots: int = field(compare=False, repr=False, default=0)
    name: str | None = field(default=None, compare=False)

    def tms(self) -> list:
        """The distinct tms used, in order of first appearance."""
        seen = {}
        for op in self.program:
            if op[0] == "run":
                seen.setdefault(id(op[1]), op[1])
        return list(seen.values())


def combine_tms(desc, sigma: Sequence[str], name: str | None = None) -> Ctm:
    sigma = make_alphabet(sigma)
    nodes = parse_ctmd(desc)
    compiler = _Compiler(set(sigma))
    compiler.emit(nodes, {})
    program = compiler.link()
    return Ctm(nodes, sigma, program, compiler.nslots, name=name)


class _Compiler:
    def __init__(self, sigma):
        self.sigma = sigma
        self.prog = []
        self.labels = {}
        self.nslots = 0

    def emit(self, nodes, scope):
        prog = self.prog
        for node in nodes:
            if isinstance(node, StateMachine):
                extra = set(node.sigma) - self.sigma
                if extra:
                    raise FsmError(f"tm alphabet not within the ctm alphabet: {sorted(extra)}")
                prog.append(("run", node))
            elif isinstance(node, Label):
                if node.name in self.labels:
                    raise FsmError(f"duplicate label {node.name!r}")
                self.labels[node.name] = len(prog)
            elif isinstance(node, Goto):
                prog.append(("goto", node.label))
            elif isinstance(node, WriteVar):
                if node.name not in scope:
                    raise FsmError(f"variable {node.name!r} used outside its VAR scope")
                prog.append(("write", scope[node.name]))
            elif isinstance(node, VarScope):
                if node.name in self.sigma or node.name == BLANK:
                    raise FsmError(f"VAR name {node.name!r} is an alphabet symbol")
                slot = self.nslots
                self.nslots += 1
                prog.append(("bind", slot))
                self.emit(node.body, {**scope, node.name: slot})
            elif isinstance(node, Branch):
                table = {}
                prog.append(("branch", table))
                exits = []
                for sym, body in node.cases:
                    if sym in table:
                        raise FsmError(f"ambiguous branch: symbol {sym!r} guards two cases")
                    if sym not in self.sigma and sym != BLANK:
                        raise FsmError(f"unknown component: branch symbol {sym!r}")
                    table[sym] = len(prog)
                    self.emit(body, scope)
                    exits.append(len(prog))
                    prog.append(None)
                for pc in exits:
                    prog[pc] = ("jump", len(prog))
            else:
                self.emit(node, scope)

    def link(self):
        out = []
        for op in self.prog:
            if op[0] == "goto":
                if op[1] not in self.labels:
                    raise FsmError(f"unresolved goto: no label {op[1]!r}")
                op = ("jump", self.labels[op[1]])
            out.append(op)
        return tuple(out)


def apply_ctm(c: Ctm, tape: Sequence[str], head: int, *, step_limit: int | None = None,
              dispatch_limit: int = DEFAULT_DISPATCH_LIMIT) -> TmConfig:
    """Execute ``c`` from the given tape and head; return the final configuration.

    Each embedded tm runs until it reaches one of its final states, and its
    tape and head seed whatever comes next. The state reported is that of the
    last tm run (``None`` if none ran).
    """
    allowed = set(c.sigma) | {BLANK}
    for s in tape:
        if s not in allowed:
            raise FsmError(f"word not over alphabet: tape symbol {s!r}")
    tape = normalize_tape(tape, head)
    state = None
    slots = [None] * c.slots
    prog = c.program
    pc = 0
    dispatches = 0
    while pc < len(prog):
        dispatches += 1
        if dispatches > dispatch_limit:
            raise StepLimitExceeded(dispatch_limit)
        op, arg = prog[pc]
        pc += 1
        if op == "run":
            cfg, _ = run_tm(arg, tape, head, step_limit=step_limit)
            if cfg is None:
                where = arg.name or "embedded tm"
                raise FsmError(f"machine wedged: {where} halted outside its final states")
            state, head, tape = cfg
        elif op == "bind":
            slots[arg] = tape[head]
        elif op == "write":
            tape = tape[:head] + (slots[arg],) + tape[head + 1:]
        elif op == "branch":
            sym = tape[head]
            if sym not in arg:
                raise FsmError(f"no branch for symbol {sym!r}")
            pc = arg[sym]
        else:
            pc = arg
    return TmConfig(state, head, tape)
