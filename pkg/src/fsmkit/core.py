"""Symbols, words, fresh names and the seeded generator shared by every module."""

from __future__ import annotations

from typing import Iterable, Sequence

EMP = "ε"
BLANK = "_"
LEFT = "L"
RIGHT = "R"

RESERVED = frozenset({EMP, BLANK, LEFT, RIGHT})

ACCEPT = "accept"
REJECT = "reject"

DEFAULT_SEED = 42
DEFAULT_MAX_LEN = 20
DEFAULT_COUNT = 100

_MASK64 = (1 << 64) - 1
_FORBIDDEN_CHARS = frozenset('();"')


class FsmError(ValueError):
    """Raised when a constructor or observer is handed something it cannot use."""


class StepLimitExceeded(FsmError):
    """A simulation ran past its step budget without reaching a verdict."""

    def __init__(self, limit: int):
        super().__init__(f"step-limit exceeded ({limit} steps)")
        self.limit = limit


def check_token(tok, what: str = "symbol") -> str:
    if not isinstance(tok, str) or not tok:
        raise FsmError(f"bad {what}: {tok!r} is not a non-empty token")
    if any(c.isspace() or c in _FORBIDDEN_CHARS for c in tok):
        raise FsmError(f"bad {what}: {tok!r} contains whitespace or delimiters")
    return tok


def make_alphabet(symbols: Iterable[str], what: str = "alphabet") -> tuple[str, ...]:
    """Validate an alphabet and return it as an ordered tuple.

    Reserved tokens (``ε``, ``_``, ``L``, ``R``) are rejected, as are
    duplicates and the empty alphabet.
    """
    syms = tuple(symbols)
    if not syms:
        raise FsmError(f"empty {what}")
    seen = set()
    for s in syms:
        check_token(s, what + " symbol")
        if s in RESERVED:
            raise FsmError(f"reserved token {s!r} cannot be in the {what}")
        if s in seen:
            raise FsmError(f"duplicate symbol {s!r} in the {what}")
        seen.add(s)
    return syms


def check_word(word: Sequence[str] | str, sigma: Iterable[str]) -> tuple[str, ...]:
    """Validate ``word`` against ``sigma``; a plain string is split on whitespace."""
    w = parse_word(word) if isinstance(word, str) else tuple(word)
    allowed = set(sigma)
    for s in w:
        if s not in allowed:
            raise FsmError(f"word not over alphabet: {s!r} is not in {sorted(allowed)}")
    return w


def gen_symbol(base: str, taken: Iterable[str]) -> str:
    """Return ``base`` if it is free, else ``base`` plus the smallest free decimal suffix."""
    if not base:
        raise FsmError("gen-symbol needs a non-empty base")
    taken = taken if isinstance(taken, (set, frozenset)) else set(taken)
    if base not in taken:
        return base
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


class Rng:
    """SplitMix64: a fixed 64-bit generator, identical on every platform.

    Draws are produced by the reference SplitMix64 mixing function, so a
    seed always yields the same stream no matter which Python runs it.
    """

    __slots__ = ("seed", "state", "position")

    def __init__(self, seed: int = DEFAULT_SEED):
        self.seed = seed & _MASK64
        self.state = self.seed
        self.position = 0

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        self.position += 1
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` (rejection sampling, no modulo bias)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]


def random_word(sigma: Sequence[str], rng: Rng, max_len: int = DEFAULT_MAX_LEN) -> tuple[str, ...]:
    """Length uniform on ``[0, max_len]``, then each symbol uniform over ``sigma``."""
    if not sigma:
        raise FsmError("empty alphabet")
    if max_len < 0:
        raise FsmError("max_len must be >= 0")
    n = rng.below(max_len + 1)
    return tuple(sigma[rng.below(len(sigma))] for _ in range(n))


def format_word(word: Sequence[str]) -> str:
    return "(" + " ".join(word) + ")"


def parse_word(text: str) -> tuple[str, ...]:
    """Whitespace-separated tokens; ``ε`` or ``@`` alone (or nothing) is the empty word."""
    return tuple(t for t in text.split() if t not in (EMP, "@"))
