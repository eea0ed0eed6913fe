"""Bit-word helpers for vertex subsets.

A subset of the vertex universe [m] = {1, ..., m} is stored as a machine
word: vertex i is present iff bit i-1 is set.  The induced numeric order
on words (the value sum of 2^(i-1)) is the canonical order used for
orbit representatives and for sorting facet lists.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


def word_of(vertices: Iterable[int]) -> int:
    """Pack 1-based vertex labels into a bit word."""
    w = 0
    for v in vertices:
        w |= 1 << (v - 1)
    return w


def vertices_of(word: int) -> tuple[int, ...]:
    """Unpack a bit word into sorted 1-based vertex labels."""
    out = []
    while word:
        low = word & -word
        out.append(low.bit_length())
        word ^= low
    return tuple(out)


def popcount(word: int) -> int:
    return word.bit_count()


def iter_subwords(word: int) -> Iterator[int]:
    """All subsets of `word` as words, including 0 and `word` itself."""
    sub = word
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & word


def k_subwords(word: int, k: int) -> Iterator[int]:
    """All k-element subsets of `word` as words."""
    pos = vertices_of(word)
    for combo in combinations(pos, k):
        yield word_of(combo)


def row_to_word(row: str) -> int:
    """Parse one .dat row: the i-th character from the left is vertex i."""
    w = 0
    for i, ch in enumerate(row):
        if ch == "1":
            w |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid character {ch!r}")
    return w


def word_to_row(word: int, m: int) -> str:
    return "".join("1" if word >> i & 1 else "0" for i in range(m))
