"""Trace data model and exhaustive small-trace enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .errors import SizeLimitError

Letter = frozenset  # set of true atoms at one position

MAX_ALPHABET = 8
MAX_ENUMERATION = 10**6


@dataclass(frozen=True)
class Trace:
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class TimedTrace:
    letters: tuple[Letter, ...]
    times: tuple[int, ...]

    def __post_init__(self):
        if len(self.letters) != len(self.times):
            raise ValueError("one timestamp per letter required")
        if any(b < a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("timestamps must be non-decreasing")

    def __len__(self) -> int:
        return len(self.letters)


EMPTY_TRACE = Trace(())


def letters_over(ap) -> list[Letter]:
    """All letters over the alphabet, ordered by their sorted atom tuple."""
    names = sorted(ap)
    subsets = [frozenset(c) for k in range(len(names) + 1) for c in combinations(names, k)]
    return sorted(subsets, key=lambda s: tuple(sorted(s)))


def enumerate_traces(ap, max_len: int) -> Iterator[Trace]:
    """All traces of length 0..max_len, shortest first, letters in lexicographic order."""
    n_letters = max(len(letters_over(ap)), 1)
    if len(ap) > MAX_ALPHABET or n_letters ** max_len > MAX_ENUMERATION:
        raise SizeLimitError(
            f"trace enumeration over {len(ap)} atoms up to length {max_len} exceeds the size bound"
        )
    alphabet = letters_over(ap)
    for length in range(max_len + 1):
        for combo in product(alphabet, repeat=length):
            yield Trace(combo)


def format_letter(letter: Letter) -> str:
    return "{" + ",".join(sorted(letter)) + "}"


def format_trace(t: Trace | TimedTrace) -> str:
    """Canonical text form; parse_trace maps it back to an equal value."""
    if len(t) == 0:
        return "eps"
    if isinstance(t, TimedTrace):
        return ";".join(f"{format_letter(l)}@{time}" for l, time in zip(t.letters, t.times))
    return ";".join(format_letter(l) for l in t.letters)
