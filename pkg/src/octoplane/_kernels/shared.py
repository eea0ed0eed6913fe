"""Numpy helpers shared by both kernel backends.

Subsets of [m] ride in int64 arrays (vertex i at bit i-1).  Permutations
act on words through per-permutation lookup tables over 7-bit chunks, so
applying a permutation to a batch of words costs a handful of gathers
instead of per-bit work.
"""

from __future__ import annotations

import numpy as np

CHUNK = 7
CHUNK_SIZE = 1 << CHUNK  # 128

# Masks selecting, inside a 64-bit word, the positions whose i-th index
# bit is clear; used for subset-closure passes within packed words.
_INNER_MASKS = (
    np.uint64(0x5555555555555555),
    np.uint64(0x3333333333333333),
    np.uint64(0x0F0F0F0F0F0F0F0F),
    np.uint64(0x00FF00FF00FF00FF),
    np.uint64(0x0000FFFF0000FFFF),
    np.uint64(0x00000000FFFFFFFF),
)

# (128, 7) matrix of the bits of 0..127, lowest bit first.
_BITS7 = ((np.arange(CHUNK_SIZE)[:, None] >> np.arange(CHUNK)) & 1).astype(np.int64)


def popcounts(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr)


def n_chunks(m: int) -> int:
    return (m + CHUNK - 1) // CHUNK


def perm_word_table(images: tuple[int, ...]) -> np.ndarray:
    """(n_chunks, 128) int64 table for one permutation of [m].

    table[c][v] is the image word of the chunk value v placed at bit
    offset 7c; OR-ing the rows selected by a word's chunks applies the
    permutation to the whole word.
    """
    m = len(images)
    nch = n_chunks(m)
    # bit j of chunk c is vertex 7c+j+1; its image contributes one bit
    targets = np.zeros((nch, CHUNK), dtype=np.int64)
    for i, img in enumerate(images):
        targets[i // CHUNK, i % CHUNK] = 1 << (img - 1)
    return (_BITS7 @ targets.T).T


def group_word_tables(images_list, m: int) -> np.ndarray:
    """(n_elements, n_chunks, 128) int64 tables for a list of permutations."""
    nch = n_chunks(m)
    out = np.empty((len(images_list), nch, CHUNK_SIZE), dtype=np.int64)
    for g, images in enumerate(images_list):
        out[g] = perm_word_table(images)
    return out


def apply_table(table: np.ndarray, words: np.ndarray) -> np.ndarray:
    """Apply one permutation (its chunk table) to a word array."""
    out = table[0][words & 127]
    shift = CHUNK
    for c in range(1, table.shape[0]):
        out |= table[c][(words >> shift) & 127]
        shift += CHUNK
    return out


def scatter_table(positions) -> np.ndarray:
    """(n_chunks, 128) table expanding compact k-bit patterns.

    Bit j of a pattern maps to bit positions[j] of the output word, so
    subsets of a fixed vertex set can be generated from dense pattern
    arrays with the same gather trick as permutations.
    """
    k = len(positions)
    nch = max(1, n_chunks(k))
    targets = np.zeros((nch, CHUNK), dtype=np.int64)
    for j, p in enumerate(positions):
        targets[j // CHUNK, j % CHUNK] = 1 << int(p)
    return (_BITS7 @ targets.T).T


def binom_table(n: int, k: int) -> np.ndarray:
    """(n+1, k+2) table of binomial coefficients C(i, j)."""
    t = np.zeros((n + 1, k + 2), dtype=np.int64)
    t[:, 0] = 1
    for i in range(1, n + 1):
        t[i, 1:] = t[i - 1, 1:] + t[i - 1, :-1]
    return t


def colex_ranks(words: np.ndarray, m: int, binom: np.ndarray) -> np.ndarray:
    """Rank of each k-subset word in the ascending enumeration of all
    k-subsets of [m] (the word order is the colexicographic order)."""
    rank = np.zeros(words.shape, dtype=np.int64)
    t = np.zeros(words.shape, dtype=np.int64)
    for b in range(m):
        bit = (words >> b) & 1
        t += bit
        rank += bit * binom[b, t]
    return rank


def all_k_subsets(m: int, k: int) -> np.ndarray:
    """All k-subsets of [m] as an ascending int64 word array."""
    total = 1 << m
    step = min(total, 1 << 24)
    parts = []
    for lo in range(0, total, step):
        w = np.arange(lo, min(lo + step, total), dtype=np.int64)
        parts.append(w[np.bitwise_count(w) == k])
    return np.concatenate(parts)


def pack_words(words: np.ndarray, m: int) -> np.ndarray:
    """Mark the given words in a bit array over the full subset lattice."""
    size = max(1, 1 << (m - 6)) if m >= 6 else 1
    packed = np.zeros(size, dtype=np.uint64)
    np.bitwise_or.at(
        packed, (words >> 6).astype(np.int64), np.uint64(1) << (words & 63).astype(np.uint64)
    )
    return packed


def packed_get(packed: np.ndarray, words: np.ndarray) -> np.ndarray:
    """0/1 membership lookup for each word in a packed bit array."""
    return (packed[(words >> 6).astype(np.int64)] >> (words & 63).astype(np.uint64)) & np.uint64(1)


def bit_reverse64(arr: np.ndarray) -> np.ndarray:
    """Reverse the bit order inside each uint64."""
    x = arr.byteswap()
    m1 = np.uint64(0x0F0F0F0F0F0F0F0F)
    x = ((x & m1) << np.uint64(4)) | ((x >> np.uint64(4)) & m1)
    m2 = np.uint64(0x3333333333333333)
    x = ((x & m2) << np.uint64(2)) | ((x >> np.uint64(2)) & m2)
    m3 = np.uint64(0x5555555555555555)
    x = ((x & m3) << np.uint64(1)) | ((x >> np.uint64(1)) & m3)
    return x


def inner_closure_mask(i: int) -> np.uint64:
    return _INNER_MASKS[i]
