"""Random-word testers for machines and grammars.

Every report is a pure function of its inputs and the seed: words are drawn
serially from one ``Rng`` stream, so equal arguments give equal reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_COUNT,
    DEFAULT_MAX_LEN,
    DEFAULT_SEED,
    FsmError,
    Rng,
    StepLimitExceeded,
    check_word,
    format_word,
    random_word,
)
from .grammars import Grammar, Undecided, deriv
from .machines import StateMachine, apply_sm

DERIVABLE = "derivable"
NOT_DERIVABLE = "not-derivable"
UNDECIDED = "undecided"
STEP_LIMIT = "step-limit exceeded"


@dataclass(frozen=True)
class TestReport:
    entries: tuple
    seed: int
    count: int

    __test__ = False  # keep pytest from collecting this class

    def lines(self) -> list[str]:
        return [f"{format_word(w)} {outcome}" for w, outcome in self.entries]

    def __str__(self):
        return "\n".join(self.lines())


@dataclass(frozen=True)
class EquivReport:
    """``counterexamples`` empty means equivalent on the sample.

    ``undecided`` holds sampled words on which at least one side gave no
    verdict; they count neither for nor against equivalence.
    """

    counterexamples: tuple
    undecided: tuple
    seed: int
    count: int

    @property
    def equivalent(self) -> bool:
        return not self.counterexamples

    def __bool__(self):
        return self.equivalent

    def lines(self) -> list[str]:
        if self.equivalent:
            out = ["equivalent-on-sample"]
        else:
            out = [f"{format_word(w)} counterexample" for w in self.counterexamples]
        out += [f"{format_word(w)} {UNDECIDED}" for w in self.undecided]
        return out

    def __str__(self):
        return "\n".join(self.lines())


def sample_words(sigma, count: int = DEFAULT_COUNT, seed: int = DEFAULT_SEED,
                 max_len: int = DEFAULT_MAX_LEN) -> list[tuple]:
    """``count`` words over ``sigma``; repeats are possible."""
    if count < 0:
        raise FsmError("count must be >= 0")
    rng = Rng(seed)
    return [random_word(sigma, rng, max_len) for _ in range(count)]


def _machine_outcome(m, w, step_limit):
    try:
        return apply_sm(m, w, step_limit=step_limit)
    except StepLimitExceeded:
        return STEP_LIMIT


def _grammar_outcome(g, w, max_expansions):
    try:
        return DERIVABLE if deriv(g, w, max_expansions=max_expansions) else NOT_DERIVABLE
    except Undecided:
        return UNDECIDED


def _check_same_alphabet(s1, s2):
    if set(s1) != set(s2):
        raise FsmError(f"alphabet mismatch: {sorted(s1)} vs {sorted(s2)}")


def same_result_sm(m1: StateMachine, m2: StateMachine, word) -> bool:
    w1 = check_word(word, m1.sigma)
    check_word(w1, m2.sigma)
    return apply_sm(m1, w1) == apply_sm(m2, w1)


def test_sm(m: StateMachine, count: int = DEFAULT_COUNT, seed: int = DEFAULT_SEED,
            max_len: int = DEFAULT_MAX_LEN, *, step_limit: int | None = None) -> TestReport:
    """Pair ``count`` random words over the machine's alphabet with its verdict on each.

    A tm that runs out of steps on a word gets the entry ``step-limit exceeded``.
    """
    words = sample_words(m.sigma, count, seed, max_len)
    entries = tuple((w, _machine_outcome(m, w, step_limit)) for w in words)
    return TestReport(entries, seed, count)


def _equiv(words, outcome1, outcome2, no_verdict, seed, count):
    bad, unknown = [], []
    for w in words:
        o1, o2 = outcome1(w), outcome2(w)
        if o1 in no_verdict or o2 in no_verdict:
            unknown.append(w)
        elif o1 != o2:
            bad.append(w)
    return EquivReport(tuple(bad), tuple(unknown), seed, count)


def test_equiv_sm(m1: StateMachine, m2: StateMachine, count: int = DEFAULT_COUNT,
                  seed: int = DEFAULT_SEED, max_len: int = DEFAULT_MAX_LEN, *,
                  step_limit: int | None = None) -> EquivReport:
    _check_same_alphabet(m1.sigma, m2.sigma)
    words = sample_words(m1.sigma, count, seed, max_len)
    return _equiv(words,
                  lambda w: _machine_outcome(m1, w, step_limit),
                  lambda w: _machine_outcome(m2, w, step_limit),
                  {STEP_LIMIT}, seed, count)


def both_deriv(g1: Grammar, g2: Grammar, word) -> bool:
    """True when both grammars derive ``word``."""
    w = check_word(word, g1.sigma)
    check_word(w, g2.sigma)
    return bool(deriv(g1, w)) and bool(deriv(g2, w))


def test_grammar(g: Grammar, count: int = DEFAULT_COUNT, seed: int = DEFAULT_SEED,
                 max_len: int = DEFAULT_MAX_LEN, *, max_expansions: int = 100_000) -> TestReport:
    words = sample_words(g.sigma, count, seed, max_len)
    entries = tuple((w, _grammar_outcome(g, w, max_expansions)) for w in words)
    return TestReport(entries, seed, count)


def test_equiv_grammar(g1: Grammar, g2: Grammar, count: int = DEFAULT_COUNT,
                       seed: int = DEFAULT_SEED, max_len: int = DEFAULT_MAX_LEN, *,
                       max_expansions: int = 100_000) -> EquivReport:
    _check_same_alphabet(g1.sigma, g2.sigma)
    words = sample_words(g1.sigma, count, seed, max_len)
    return _equiv(words,
                  lambda w: _grammar_outcome(g1, w, max_expansions),
                  lambda w: _grammar_outcome(g2, w, max_expansions),
                  {UNDECIDED}, seed, count)


# these are library functions, not test cases
for _f in (test_sm, test_equiv_sm, test_grammar, test_equiv_grammar):
    _f.__test__ = False
del _f
