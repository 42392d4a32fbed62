"""Text definitions for machines, grammars, regexps and ctm programs.

A definition is one s-expression whose head names the kind::

    (dfa (states q0 q1) (sigma a) (start q0) (finals q1)
         (rules (q0 a q1) (q1 a q1)))

Atoms are tokens without whitespace, parentheses, ``;`` or ``"``; strings
are double-quoted (used for regexp text); ``;`` comments run to the end of
the line. ``render_definition`` prints the canonical layout, and
``parse_definition(render_definition(v))`` gives back an equal value.
"""

from __future__ import annotations

from dataclasses import replace

from .core import EMP, FsmError, gen_symbol
from .ctm import BRANCH, GOTO, VAR, Ctm, combine_tms, unparse_ctmd
from .grammars import CFG, CSG, RG, Grammar, make_cfg, make_csg, make_rg
from .library import make_lb, make_li, make_rb, make_ri, make_writer
from .machines import DFA, NDFA, PDA, TM, StateMachine, make_dfa, make_ndfa, make_pda, make_tm
from .regexp import parse_regexp, printable_regexp, regexp_symbols

MACHINE_TAGS = (DFA, NDFA, PDA, TM)
GRAMMAR_TAGS = (RG, CFG, CSG)
EMPTY_ALIASES = (EMP, "@")


class DefinitionError(FsmError):
    """A definition could not be read; the message carries line and column."""


class Atom(str):
    line = col = 0


class String(str):
    line = col = 0


class SList(list):
    line = col = 0


def _at(node, line, col):
    node.line, node.col = line, col
    return node


def read_sexprs(text: str) -> list:
    """Read every top-level s-expression in ``text``."""
    stack = [SList()]
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
        elif c.isspace():
            i, col = i + 1, col + 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c == "(":
            stack.append(_at(SList(), line, col))
            i, col = i + 1, col + 1
        elif c == ")":
            if len(stack) == 1:
                raise DefinitionError(f"line {line}, column {col}: unexpected ')'")
            done = stack.pop()
            stack[-1].append(done)
            i, col = i + 1, col + 1
        elif c == '"':
            start_line, start_col = line, col
            i, col = i + 1, col + 1
            chars = []
            while True:
                if i >= n:
                    raise DefinitionError(f"line {start_line}, column {start_col}: unterminated string")
                c = text[i]
                if c == '"':
                    i, col = i + 1, col + 1
                    break
                if c == "\\" and i + 1 < n:
                    chars.append(text[i + 1])
                    i, col = i + 2, col + 2
                    continue
                if c == "\n":
                    line, col = line + 1, 0
                chars.append(c)
                i, col = i + 1, col + 1
            stack[-1].append(_at(String("".join(chars)), start_line, start_col))
        else:
            j = i
            while j < n and not (text[j].isspace() or text[j] in '();"'):
                j += 1
            stack[-1].append(_at(Atom(text[i:j]), line, col))
            col += j - i
            i = j
    if len(stack) > 1:
        open_ = stack[-1]
        raise DefinitionError(f"line {open_.line}, column {open_.col}: unclosed '('")
    return stack[0]


def _where(node):
    return f"line {node.line}, column {node.col}"


def _fail(node, msg):
    return DefinitionError(f"{_where(node)}: {msg}")


def _atom(node, what="atom"):
    if not isinstance(node, Atom):
        raise _fail(node, f"expected {what}")
    return str(node)


def _atoms(node, what="atoms"):
    if not isinstance(node, SList):
        raise _fail(node, f"expected a list of {what}")
    return [_atom(x, what) for x in node]


def _seq_or_eps(node, what):
    """``ε`` for the empty sequence, or a list of atoms."""
    if isinstance(node, Atom):
        if node in EMPTY_ALIASES:
            return ()
        raise _fail(node, f"expected ε or a list of {what}")
    return tuple(_atoms(node, what))


def _symbol(node):
    s = _atom(node, "symbol")
    return EMP if s in EMPTY_ALIASES else s


def _clauses(doc, allowed, required):
    found = {}
    for item in doc[1:]:
        if not isinstance(item, SList) or not item or not isinstance(item[0], Atom):
            raise _fail(item, "expected a (keyword ...) clause")
        key = str(item[0])
        if key not in allowed:
            raise _fail(item, f"unknown clause {key!r} (expected one of {', '.join(allowed)})")
        if key in found and key != "tm":
            raise _fail(item, f"duplicate clause {key!r}")
        found.setdefault(key, []).append(item)
    for key in required:
        if key not in found:
            raise _fail(doc, f"missing clause ({key} ...)")
    return found


def _one(found, key):
    return found[key][0]


def _single(clause):
    if len(clause) != 2:
        raise _fail(clause, f"({clause[0]} ...) takes exactly one value")
    return _atom(clause[1])


def _name(found):
    return _single(_one(found, "name")) if "name" in found else None


def _build(doc, build):
    try:
        return build()
    except DefinitionError:
        raise
    except FsmError as e:
        raise _fail(doc, str(e)) from None


# machines

_MACHINE_CLAUSES = {
    DFA: ("states", "sigma", "start", "finals", "rules"),
    NDFA: ("states", "sigma", "start", "finals", "rules"),
    PDA: ("states", "sigma", "gamma", "start", "finals", "rules"),
    TM: ("states", "sigma", "start", "finals", "rules"),
}


def _machine_parts(doc, kind):
    required = _MACHINE_CLAUSES[kind]
    found = _clauses(doc, required + ("name",), required)
    parts = {
        "states": [_atom(x, "state") for x in _one(found, "states")[1:]],
        "sigma": [_atom(x, "symbol") for x in _one(found, "sigma")[1:]],
        "start": _single(_one(found, "start")),
        "finals": [_atom(x, "state") for x in _one(found, "finals")[1:]],
        "name": _name(found),
    }
    if kind == PDA:
        parts["gamma"] = [_atom(x, "stack symbol") for x in _one(found, "gamma")[1:]]
    rules = []
    for r in _one(found, "rules")[1:]:
        rules.append(_machine_rule(r, kind))
    parts["rules"] = rules
    return parts


def _machine_rule(r, kind):
    if not isinstance(r, SList):
        raise _fail(r, "expected a rule list")
    if kind in (DFA, NDFA):
        if len(r) != 3:
            raise _fail(r, "expected (from read to)")
        return (_atom(r[0], "state"), _symbol(r[1]), _atom(r[2], "state"))
    if len(r) != 2 or not all(isinstance(x, SList) for x in r):
        raise _fail(r, "expected ((from ...) (to ...))")
    lhs, rhs = r
    if kind == PDA:
        if len(lhs) != 3 or len(rhs) != 2:
            raise _fail(r, "expected ((from read pop) (to push))")
        return ((_atom(lhs[0], "state"), _symbol(lhs[1]), _seq_or_eps(lhs[2], "stack symbols")),
                (_atom(rhs[0], "state"), _seq_or_eps(rhs[1], "stack symbols")))
    if len(lhs) != 2 or len(rhs) != 2:
        raise _fail(r, "expected ((from read) (to action))")
    return ((_atom(lhs[0], "state"), _atom(lhs[1], "symbol")), (_atom(rhs[0], "state"), _atom(rhs[1], "action")))


def _parse_machine(doc, kind):
    p = _machine_parts(doc, kind)

    def build():
        if kind == DFA:
            return make_dfa(p["states"], p["sigma"], p["start"], p["finals"], p["rules"], name=p["name"])
        if kind == NDFA:
            return make_ndfa(p["states"], p["sigma"], p["start"], p["finals"], p["rules"], name=p["name"])
        if kind == PDA:
            return make_pda(p["states"], p["sigma"], p["gamma"], p["start"], p["finals"], p["rules"],
                            name=p["name"])
        return make_tm(p["states"], p["sigma"], p["rules"], p["start"], p["finals"], name=p["name"])

    return _build(doc, build)


# grammars


def _parse_grammar(doc, kind):
    required = ("nonterminals", "sigma", "start", "rules")
    found = _clauses(doc, required, required)
    nts = [_atom(x, "nonterminal") for x in _one(found, "nonterminals")[1:]]
    sigma = [_atom(x, "symbol") for x in _one(found, "sigma")[1:]]
    start = _single(_one(found, "start"))
    rules = []
    for r in _one(found, "rules")[1:]:
        toks = _atoms(r, "grammar symbols")
        if "->" not in toks:
            raise _fail(r, "expected (lhs ... -> rhs ...)")
        k = toks.index("->")
        rhs = [t for t in toks[k + 1:] if t not in EMPTY_ALIASES]
        rules.append((toks[:k], rhs))
    make = {RG: make_rg, CFG: make_cfg, CSG: make_csg}[kind]
    return _build(doc, lambda: make(nts + sigma, sigma, rules, start))


# regexps


class RegexpDefinition(tuple):
    """A parsed ``(regexp ...)`` document: the tree and its alphabet."""

    def __new__(cls, regexp, sigma):
        return super().__new__(cls, (regexp, tuple(sigma)))

    @property
    def regexp(self):
        return self[0]

    @property
    def sigma(self):
        return self[1]


def _parse_regexp(doc):
    if len(doc) != 3 or not isinstance(doc[1], SList) or not isinstance(doc[2], String):
        raise _fail(doc, 'expected (regexp (sigma ...) "text")')
    sig = doc[1]
    if not sig or sig[0] != "sigma":
        raise _fail(sig, "expected (sigma ...)")
    sigma = [_atom(x, "symbol") for x in sig[1:]]

    def build():
        r = parse_regexp(str(doc[2]), sigma)
        extra = set(regexp_symbols(r)) - set(sigma)
        if extra:
            raise FsmError(f"unknown component: {sorted(extra)}")
        return RegexpDefinition(r, sigma)

    return _build(doc[2], build)


# ctm programs


def _primitives(sigma):
    prims = {"RI": make_ri(sigma), "LI": make_li(sigma), "RB": make_rb(sigma), "LB": make_lb(sigma),
             "BL": make_writer("_", sigma, name="BL")}
    if "I" in sigma:
        prims["I"] = make_writer("I", sigma, name="I")
    return prims


def _parse_ctm(doc):
    found = _clauses(doc, ("sigma", "tm", "program", "name"), ("sigma", "program"))
    sigma = [_atom(x, "symbol") for x in _one(found, "sigma")[1:]]
    env = _build(doc, lambda: _primitives(sigma))
    for clause in found.get("tm", []):
        if len(clause) < 2:
            raise _fail(clause, "expected (tm NAME clauses...)")
        tm_name = _atom(clause[1], "tm name")
        tm_doc = _at(SList([Atom(TM)] + list(clause[2:])), clause.line, clause.col)
        tm = _parse_machine(tm_doc, TM)
        env[tm_name] = replace(tm, name=tm_name)
    program = _one(found, "program")

    def convert(node):
        if isinstance(node, SList):
            return [convert(x) for x in node]
        tok = _atom(node, "program element")
        return env.get(tok, tok)

    desc = [convert(x) for x in program[1:]]
    return _build(program, lambda: combine_tms(desc, sigma, name=_name(found)))


# entry points


def parse_definition(text: str):
    """Parse one definition document into a machine, grammar, Ctm or RegexpDefinition."""
    docs = read_sexprs(text)
    if len(docs) != 1:
        where = _where(docs[1]) if len(docs) > 1 else "line 1, column 1"
        raise DefinitionError(f"{where}: expected exactly one definition, found {len(docs)}")
    doc = docs[0]
    if not isinstance(doc, SList) or not doc or not isinstance(doc[0], Atom):
        raise _fail(doc, "expected (kind ...)")
    tag = str(doc[0])
    if tag in MACHINE_TAGS:
        return _parse_machine(doc, tag)
    if tag in GRAMMAR_TAGS:
        return _parse_grammar(doc, tag)
    if tag == "regexp":
        return _parse_regexp(doc)
    if tag == "ctm":
        return _parse_ctm(doc)
    raise _fail(doc, f"unknown definition kind {tag!r}")


def load_definition(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_definition(text)
    except DefinitionError as e:
        raise DefinitionError(f"{path}: {e}") from None


def _seq_text(seq):
    return f"({' '.join(seq)})" if seq else EMP


def _machine_body(m, indent="  "):
    lines = [f"{indent}(states {' '.join(m.states)})", f"{indent}(sigma {' '.join(m.sigma)})"]
    if m.kind == PDA:
        lines.append(f"{indent}(gamma {' '.join(m.gamma)})")
    lines += [f"{indent}(start {m.start})", f"{indent}(finals {' '.join(m.finals)})".rstrip()]
    rule_lines = []
    for r in m.rules:
        if m.kind in (DFA, NDFA):
            rule_lines.append(f"({r.source} {r.read} {r.target})")
        elif m.kind == PDA:
            rule_lines.append(f"(({r.source} {r.read} {_seq_text(r.pop)}) ({r.target} {_seq_text(r.push)}))")
        else:
            rule_lines.append(f"(({r.source} {r.read}) ({r.target} {r.action}))")
    lines.append(f"{indent}(rules" + "".join(f"\n{indent}  {x}" for x in rule_lines) + ")")
    return lines


def _render_machine(m):
    lines = [f"({m.kind}"]
    if m.name:
        lines.append(f"  (name {m.name})")
    lines += _machine_body(m)
    return "\n".join(lines) + ")\n"


def _render_grammar(g):
    lines = [
        f"({g.kind}",
        f"  (nonterminals {' '.join(g.nonterminals)})",
        f"  (sigma {' '.join(g.sigma)})",
        f"  (start {g.start})",
    ]
    rules = [f"({' '.join(p.lhs)} -> {' '.join(p.rhs) or EMP})" for p in g.rules]
    lines.append("  (rules" + "".join(f"\n    {x}" for x in rules) + ")")
    return "\n".join(lines) + ")\n"


def _render_regexp(d):
    text = printable_regexp(d.regexp).replace("\\", "\\\\").replace('"', '\\"')
    return f'(regexp (sigma {" ".join(d.sigma)}) "{text}")\n'


def _same_tm(a, b):
    return (a.states == b.states and set(a.sigma) == set(b.sigma) and a.start == b.start
            and a.finals == b.finals and set(a.rules) == set(b.rules))


def _render_ctm(c: Ctm):
    prims = _primitives(c.sigma)
    names = {}
    defs = []
    taken = set(prims) | set(c.sigma) | {BRANCH, GOTO, VAR}

    def name_of(tm):
        key = id(tm)
        if key in names:
            return names[key]
        prim = prims.get(tm.name)
        if prim is not None and _same_tm(prim, tm):
            names[key] = tm.name
            return tm.name
        name = gen_symbol(tm.name or "M", taken)
        taken.add(name)
        names[key] = name
        defs.append((name, tm))
        return name

    def show(node):
        if isinstance(node, StateMachine):
            return name_of(node)
        if isinstance(node, list):
            return "(" + " ".join(show(x) for x in node) + ")"
        return str(node)

    program = " ".join(show(x) for x in unparse_ctmd(c.description))
    lines = ["(ctm"]
    if c.name:
        lines.append(f"  (name {c.name})")
    lines.append(f"  (sigma {' '.join(c.sigma)})")
    for name, tm in defs:
        lines.append(f"  (tm {name}\n" + "\n".join(_machine_body(tm, "    ")) + ")")
    lines.append(f"  (program {program})")
    return "\n".join(lines) + ")\n"


def render_definition(value) -> str:
    """Canonical text for ``value``; reading it back gives an equal value."""
    if isinstance(value, StateMachine):
        return _render_machine(value)
    if isinstance(value, Grammar):
        return _render_grammar(value)
    if isinstance(value, RegexpDefinition):
        return _render_regexp(value)
    if isinstance(value, Ctm):
        return _render_ctm(value)
    raise FsmError(f"cannot render {type(value).__name__}")
