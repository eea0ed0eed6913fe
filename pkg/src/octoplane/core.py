"""Bit-packed simplicial complexes.

A complex is stored as the list of its top-dimensional simplices
(facets), each a bit word over the universe [m].  Structural predicates
used throughout: weak pseudomanifold, complementarity, neighborliness.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

import numpy as np

from . import _kernels
from ._bitset import popcount, row_to_word, vertices_of, word_of, word_to_row
from ._kernels import shared


class ParseError(ValueError):
    """Malformed .dat content."""


class DomainError(ValueError):
    """Operation applied outside its stated domain."""


@dataclass(frozen=True)
class VertexSet:
    """Subset of [m]: vertex i present iff bit i-1 of `word` is set."""

    word: int
    m: int

    @classmethod
    def from_vertices(cls, vertices: Iterable[int], m: int) -> "VertexSet":
        w = word_of(vertices)
        if w >> m:
            raise ValueError("vertex label exceeds universe size")
        return cls(w, m)

    @classmethod
    def from_row(cls, row: str) -> "VertexSet":
        return cls(row_to_word(row), len(row))

    @property
    def vertices(self) -> tuple[int, ...]:
        return vertices_of(self.word)

    @property
    def card(self) -> int:
        return popcount(self.word)

    def row(self) -> str:
        return word_to_row(self.word, self.m)

    def __contains__(self, v: int) -> bool:
        return bool(self.word >> (v - 1) & 1)

    def issubset(self, other: "SimplexLike") -> bool:
        return self.word & ~as_word(other) == 0

    def __lt__(self, other: "VertexSet") -> bool:
        return self.word < other.word


SimplexLike = Union[VertexSet, int, Iterable[int]]


def as_word(s: SimplexLike) -> int:
    if isinstance(s, VertexSet):
        return s.word
    if isinstance(s, int):
        return s
    return word_of(s)


@dataclass(frozen=True)
class FaceVector:
    f: tuple[int, ...]
    chi: int


class Complex:
    """Simplicial complex given by maximal simplices.

    Constructors other than `maximal` enforce purity (all facets of one
    cardinality); mixed cardinalities appear only as results of
    full-subcomplex style operations.
    """

    __slots__ = ("m", "facet_words", "__dict__")

    def __init__(self, facet_words: Iterable[int], m: int):
        words = tuple(sorted(set(facet_words)))
        if words and words[-1] >> m:
            raise ValueError("facet exceeds universe size")
        self.m = m
        self.facet_words = words

    @classmethod
    def from_facets(cls, facets: Iterable[SimplexLike], m: int) -> "Complex":
        c = cls((as_word(f) for f in facets), m)
        if not c.is_pure:
            raise ValueError("facets of mixed cardinality; use Complex.maximal")
        return c

    @classmethod
    def maximal(cls, sets: Iterable[int], m: int) -> "Complex":
        """Complex on the maximal elements of the given sets."""
        return cls(_maximal_words(list(sets), m), m)

    @property
    def n_facets(self) -> int:
        return len(self.facet_words)

    @property
    def dim(self) -> int:
        if not self.facet_words:
            return -1
        return popcount(max(self.facet_words, key=popcount)) - 1

    @property
    def is_pure(self) -> bool:
        cards = {popcount(w) for w in self.facet_words}
        return len(cards) <= 1

    @cached_property
    def words_array(self) -> np.ndarray:
        return np.array(self.facet_words, dtype=np.int64)

    @cached_property
    def _closure(self) -> np.ndarray:
        if self.m > 28:
            raise ValueError("membership lattice limited to m <= 28")
        return _kernels.face_closure(self.words_array, self.m)

    def facets(self) -> tuple[VertexSet, ...]:
        return tuple(VertexSet(w, self.m) for w in self.facet_words)

    def is_simplex(self, s: SimplexLike) -> bool:
        w = as_word(s)
        if not self.facet_words:
            return False
        return bool(self._closure[w >> 6] >> np.uint64(w & 63) & np.uint64(1))

    def members(self, words: np.ndarray) -> np.ndarray:
        """Vectorized membership test; 0/1 per queried word."""
        if not self.facet_words:
            return np.zeros(len(words), dtype=np.uint64)
        return shared.packed_get(self._closure, np.asarray(words, dtype=np.int64))

    def vertex_set(self) -> int:
        out = 0
        for w in self.facet_words:
            out |= w
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Complex)
            and self.m == other.m
            and self.facet_words == other.facet_words
        )

    def __hash__(self) -> int:
        return hash((self.m, self.facet_words))

    def __repr__(self) -> str:
        return f"Complex(m={self.m}, dim={self.dim}, facets={self.n_facets})"


def _maximal_words(words: list[int], m: int) -> list[int]:
    distinct = sorted(set(words))
    if not distinct:
        return []
    if len(distinct) <= 4096:
        out = []
        for w in distinct:
            if not any(w != v and w & ~v == 0 for v in distinct):
                out.append(w)
        return out
    # large input: mark strict supersets through the packed subset lattice
    marked = shared.pack_words(np.array(distinct, dtype=np.int64), m)
    zeta = marked.copy()
    for i in range(min(m, 6)):
        mask = shared.inner_closure_mask(i)
        zeta |= (zeta >> np.uint64(1 << i)) & mask
    for i in range(6, m):
        view = zeta.reshape(-1, 2, 1 << (i - 6))
        view[:, 0, :] |= view[:, 1, :]
    # zeta[p] now: some marked q >= p exists.  w is maximal iff no marked
    # strict superset, i.e. no i outside w with zeta[w | 1<<i].
    arr = np.array(distinct, dtype=np.int64)
    dominated = np.zeros(len(arr), dtype=bool)
    for i in range(m):
        outside = (arr >> i) & 1 == 0
        probe = arr[outside] | (1 << i)
        dominated[outside] |= shared.packed_get(zeta, probe).astype(bool)
    return [int(w) for w, d in zip(arr, dominated) if not d]


def parse_complex(text: str, m: int | None = None) -> Complex:
    """Parse .dat content: a count line, then one 0/1 row per facet."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("line 1: missing count")
    try:
        count = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"line 1: bad count {lines[0]!r}") from None
    if count < 0:
        raise ParseError("line 1: negative count")
    rows = [ln for ln in lines[1:] if ln.strip() != ""]
    if len(rows) != count:
        raise ParseError(f"expected {count} rows, found {len(rows)}")
    words = []
    card = None
    for i, row in enumerate(rows, start=2):
        row = row.strip()
        if m is None:
            m = len(row)
        if len(row) != m:
            raise ParseError(f"line {i}: length {len(row)}, expected {m}")
        try:
            w = row_to_word(row)
        except ValueError as exc:
            raise ParseError(f"line {i}: {exc}") from None
        if card is None:
            card = popcount(w)
        elif popcount(w) != card:
            raise ParseError(f"line {i}: cardinality {popcount(w)}, expected {card}")
        words.append(w)
    if len(set(words)) != len(words):
        seen: set[int] = set()
        for i, w in enumerate(words, start=2):
            if w in seen:
                raise ParseError(f"line {i}: duplicate row")
            seen.add(w)
    return Complex(words, m if m is not None else 0)


def serialize(K: Complex) -> str:
    out = [str(K.n_facets)]
    out.extend(word_to_row(w, K.m) for w in K.facet_words)
    return "\n".join(out) + "\n"


def link(K: Complex, s: SimplexLike) -> Complex:
    sw = as_word(s)
    over = [w ^ sw for w in K.facet_words if w & sw == sw]
    if not over:
        raise DomainError("link of a non-simplex")
    return Complex(over, K.m)


def full_subcomplex(K: Complex, u: SimplexLike) -> Complex:
    uw = as_word(u)
    return Complex.maximal((w & uw for w in K.facet_words), K.m)


def cost(K: Complex, s: SimplexLike) -> Complex:
    """Faces of K avoiding every vertex of s (the contrastar)."""
    sw = as_word(s)
    return full_subcomplex(K, ((1 << K.m) - 1) & ~sw)


def f_vector(K: Complex) -> FaceVector:
    if not K.is_pure:
        raise DomainError("f-vector requires a pure complex")
    if not K.facet_words:
        return FaceVector((), 0)
    counts = _kernels.closure_counts(K._closure, K.m)
    f = tuple(int(c) for c in counts[1 : K.dim + 2])
    chi = sum((-1) ** k * fk for k, fk in enumerate(f))
    return FaceVector(f, chi)


def subface_multiplicities(K: Complex, drop: int) -> tuple[np.ndarray, np.ndarray]:
    """Distinct (card-drop)-subsets of facets with containment counts."""
    facets = K.words_array
    if not len(facets):
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    k = popcount(K.facet_words[0])
    bits = ((facets[:, None] >> np.arange(K.m, dtype=np.int64)) & 1).astype(bool)
    row, b = np.nonzero(bits)
    if drop == 1:
        words = facets[row] ^ (np.int64(1) << b)
    elif drop == 2:
        # for every facet, clear each unordered pair of its bits
        b = b.reshape(len(facets), k)
        i1, i2 = np.triu_indices(k, 1)
        words = (
            facets[:, None]
            ^ (np.int64(1) << b[:, i1])
            ^ (np.int64(1) << b[:, i2])
        ).ravel()
    else:
        raise ValueError("drop must be 1 or 2")
    return np.unique(words, return_counts=True)


def is_weak_pseudomanifold(K: Complex) -> bool:
    if not K.is_pure:
        raise DomainError("weak-pseudomanifold test requires a pure complex")
    if not K.facet_words:
        return True
    _, counts = subface_multiplicities(K, 1)
    return bool(np.all(counts == 2))


def check_complementarity(K: Complex) -> bool:
    """Exactly one of W, [m] \\ W is a simplex, for every W <= [m]."""
    m = K.m
    if not K.facet_words:
        return False
    if m < 6:
        closure = K._closure
        word = int(closure[0])
        full = (1 << m) - 1
        return all((word >> w & 1) ^ (word >> (full ^ w) & 1) for w in range(1 << m))
    rev = shared.bit_reverse64(K._closure[::-1])
    return bool(np.all((K._closure ^ rev) == np.uint64(0xFFFFFFFFFFFFFFFF)))


def neighborliness(K: Complex) -> int:
    """Largest s with every s-subset of the vertex set a simplex."""
    if not K.facet_words:
        return 0
    counts = _kernels.closure_counts(K._closure, K.m)
    n = int(counts[1])
    binom = shared.binom_table(n, n)
    s = 0
    for k in range(1, n + 1):
        if k < counts.shape[0] and counts[k] == binom[n, k]:
            s = k
        else:
            break
    return s
