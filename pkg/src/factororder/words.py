"""Words over the positive integers, embeddings, and word-family generators."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_PERMUTATION_N = 10

_DELIMITERS = re.compile(r"[,\s]+")
_INT = re.compile(r"[1-9][0-9]*")


class WordParseError(ValueError):
    """Raised when a word literal cannot be parsed."""

    def __init__(self, token: str, reason: str = "not a positive integer"):
        self.token = token
        super().__init__(f"invalid letter {token!r}: {reason}")


class Word(tuple):
    """An immutable word of positive-integer letters.

    Comparison is lexicographic on the letters. The empty word is allowed
    (as a host word); pattern-taking functions reject it themselves.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()) -> "Word":
        letters = tuple(letters)
        for a in letters:
            if isinstance(a, bool) or not isinstance(a, int) or a < 1:
                raise ValueError(f"letters must be positive integers, got {a!r}")
        return super().__new__(cls, letters)

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def total(self) -> int:
        """Letter sum ||w||."""
        return sum(self)

    def reversed(self) -> "Word":
        return Word(self[::-1])

    def compact(self) -> str:
        """Digit-string form; only valid when every letter is at most 9."""
        if any(a > 9 for a in self):
            raise ValueError("compact form needs every letter <= 9")
        return "".join(map(str, self))

    def format(self, compact: bool = False) -> str:
        if compact and all(a <= 9 for a in self):
            return self.compact()
        return ",".join(map(str, self))

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Word({self.format()})"

    def __add__(self, other) -> "Word":
        return Word(tuple(self) + tuple(other))


def parse_word(text: str) -> Word:
    """Parse ``"3122"``, ``"2,5,2"``, ``"10 2"`` or ``"10"`` into a Word.

    A bare run of digits 1-9 is read one letter per character; anything
    with a multi-digit letter needs commas or spaces.
    """
    stripped = text.strip()
    if not stripped:
        raise WordParseError(text, "empty word literal")
    tokens = [t for t in _DELIMITERS.split(stripped) if t]
    if len(tokens) == 1:
        token = tokens[0]
        if token.isdigit() and "0" not in token:
            return Word(int(c) for c in token)
        if _INT.fullmatch(token):
            return Word((int(token),))
        raise WordParseError(token)
    letters = []
    for token in tokens:
        if not _INT.fullmatch(token):
            raise WordParseError(token)
        letters.append(int(token))
    return Word(letters)


def as_word(value: Word | str | Sequence[int]) -> Word:
    if isinstance(value, Word):
        return value
    if isinstance(value, str):
        return parse_word(value)
    return Word(value)


def _require_pattern(u: Sequence[int]) -> None:
    if len(u) == 0:
        raise ValueError("pattern word must be nonempty")


def _positions(u: Sequence[int], w: Sequence[int]) -> Iterator[int]:
    k = len(u)
    for i in range(len(w) - k + 1):
        for t in range(k):
            if u[t] > w[i + t]:
                break
        else:
            yield i + 1


def eta(u: Sequence[int], w: Sequence[int]) -> int:
    """Number of embeddings of ``u`` in ``w``."""
    _require_pattern(u)
    return sum(1 for _ in _positions(u, w))


@dataclass(frozen=True)
class EmbeddingSet:
    pattern: Word
    host: Word
    positions: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "pattern": list(self.pattern),
            "host": list(self.host),
            "positions": list(self.positions),
        }


def embeddings(u: Sequence[int], w: Sequence[int]) -> EmbeddingSet:
    """All 1-based start positions at which ``w`` dominates ``u`` letterwise."""
    _require_pattern(u)
    return EmbeddingSet(Word(u), Word(w), tuple(_positions(u, w)))


def generate_permutations(n: int) -> list[Word]:
    """All permutations of 1..n in lexicographic order."""
    if not 1 <= n <= MAX_PERMUTATION_N:
        raise ValueError(f"n must be in 1..{MAX_PERMUTATION_N}, got {n}")
    return [Word(p) for p in itertools.permutations(range(1, n + 1))]


def generate_by_sum(s: int) -> Iterator[Word]:
    """Stream every composition of ``s`` in lexicographic order.

    Lexicographic on letter tuples, so for s = 3 the order is
    111, 12, 21, 3.
    """
    if s < 1:
        raise ValueError(f"sum must be >= 1, got {s}")
    prefix: list[int] = []

    def rec(rest: int) -> Iterator[Word]:
        if rest == 0:
            yield Word(prefix)
            return
        for a in range(1, rest + 1):
            prefix.append(a)
            yield from rec(rest - a)
            prefix.pop()

    yield from rec(s)


def words_up_to_sum(s: int) -> Iterator[Word]:
    """The empty word followed by every word with letter sum 1..s."""
    yield Word()
    for t in range(1, s + 1):
        yield from generate_by_sum(t)


def is_rearrangement(u: Sequence[int], v: Sequence[int]) -> bool:
    return sorted(u) == sorted(v)
