"""Ready-made machines: the classroom examples and the primitive tm building blocks."""

from __future__ import annotations

from typing import Sequence

from .core import BLANK, LEFT, RIGHT
from .ctm import BRANCH, combine_tms
from .machines import make_dfa, make_tm

UNARY_SIGMA = ("I", "add1", "sub1")
ADDORSUB_SIGMA = ("I", "sub1", "add1")


# L = {w in {a,b}* | w starts and ends with an a}
SOL1_BUGGY = make_dfa(
    ["q0", "q1", "q2", "ds"], ["a", "b"], "q0", ["q2"],
    [("q0", "a", "q1"), ("q0", "b", "ds"),
     ("q1", "a", "q2"), ("q1", "b", "q1"),
     ("q2", "a", "q2"), ("q2", "b", "q1"),
     ("ds", "a", "ds"), ("ds", "b", "ds")],
    name="sol1-buggy",
)

SOL1_CORRECT = make_dfa(
    ["q0", "q1", "q2", "ds"], ["a", "b"], "q0", ["q1"],
    [("q0", "a", "q1"), ("q0", "b", "ds"),
     ("q1", "a", "q1"), ("q1", "b", "q2"),
     ("q2", "a", "q1"), ("q2", "b", "q2"),
     ("ds", "a", "ds"), ("ds", "b", "ds")],
    name="sol1-correct",
)

# L = a*bab*
ASTAR_BAB_STAR = make_dfa(
    ["q0", "q1", "q2", "ds"], ["a", "b"], "q0", ["q2"],
    [("q0", "a", "q0"), ("q0", "b", "q1"),
     ("q1", "a", "q2"), ("q1", "b", "ds"),
     ("q2", "a", "ds"), ("q2", "b", "q2"),
     ("ds", "a", "ds"), ("ds", "b", "ds")],
    name="a*bab*",
)


def _reads(sigma):
    return list(sigma) + [BLANK]


def make_ri(sigma: Sequence[str] = UNARY_SIGMA):
    """Move the head one cell right."""
    return make_tm(["s", "h"], sigma, [(("s", x), ("h", RIGHT)) for x in _reads(sigma)], "s", ["h"], name="RI")


def make_li(sigma: Sequence[str] = UNARY_SIGMA):
    """Move the head one cell left."""
    return make_tm(["s", "h"], sigma, [(("s", x), ("h", LEFT)) for x in _reads(sigma)], "s", ["h"], name="LI")


def make_writer(symbol: str, sigma: Sequence[str] = UNARY_SIGMA, name: str | None = None):
    """Write ``symbol`` under the head."""
    return make_tm(["s", "h"], sigma, [(("s", x), ("h", symbol)) for x in _reads(sigma)], "s", ["h"],
                   name=name or symbol)


def _seek_blank(move, sigma, name):
    # step once, then keep going until the head is on a blank
    rules = [(("s", x), ("q", move)) for x in _reads(sigma)]
    rules += [(("q", x), ("q", move)) for x in sigma]
    rules.append((("q", BLANK), ("h", BLANK)))
    return make_tm(["s", "q", "h"], sigma, rules, "s", ["h"], name=name)


def make_rb(sigma: Sequence[str] = UNARY_SIGMA):
    """Move the head to the first blank right of it."""
    return _seek_blank(RIGHT, sigma, "RB")


def make_lb(sigma: Sequence[str] = UNARY_SIGMA):
    """Move the head to the first blank left of it."""
    return _seek_blank(LEFT, sigma, "LB")


RI = make_ri()
LI = make_li()
I = make_writer("I", name="I")  # noqa: E741
BL = make_writer(BLANK, name="BL")
RB = make_rb()
LB = make_lb()

PRIMITIVES = {"RI": RI, "LI": LI, "I": I, "BL": BL, "RB": RB, "LB": LB}

ADDORSUB_DRAFT = combine_tms(
    [LB, LI, [BRANCH, ["sub1", RB, LI, BL],
                      ["add1", RB, I, RI]]],
    ADDORSUB_SIGMA, name="addorsub-draft",
)

ADDORSUB = combine_tms(
    [LB, LI, [BRANCH, ["sub1", RB, RB, LI, BL],
                      ["add1", RB, RB, I, RI]]],
    ADDORSUB_SIGMA, name="addorsub",
)
