"""Pure-numpy implementations of the hot kernels.

Same contract as the compiled module `_fast`:

- canonical_reps: minimum image of each word under a full group
- face_closure / closure_counts: downward closure of a facet list over
  the packed subset lattice of [m], with per-cardinality counts
- cover_counts: number of facets containing each j-subset of [m],
  indexed by colexicographic rank
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import shared


def canonical_reps(tables: np.ndarray, words: np.ndarray) -> np.ndarray:
    best = shared.apply_table(tables[0], words)
    for g in range(1, tables.shape[0]):
        np.minimum(best, shared.apply_table(tables[g], words), out=best)
    return best


def face_closure(facets: np.ndarray, m: int) -> np.ndarray:
    packed = shared.pack_words(np.asarray(facets, dtype=np.int64), m)
    for i in range(min(m, 6)):
        mask = shared.inner_closure_mask(i)
        packed |= (packed >> np.uint64(1 << i)) & mask
    for i in range(6, m):
        view = packed.reshape(-1, 2, 1 << (i - 6))
        view[:, 0, :] |= view[:, 1, :]
    return packed


def closure_counts(packed: np.ndarray, m: int) -> np.ndarray:
    counts = np.zeros(m + 1, dtype=np.int64)
    word_pc = np.bitwise_count(np.arange(len(packed), dtype=np.int64))
    nbits = 64 if m >= 6 else 1 << m
    for b in range(nbits):
        hit = ((packed >> np.uint64(b)) & np.uint64(1)).astype(bool)
        if not hit.any():
            continue
        part = np.bincount(word_pc[hit] + int(b).bit_count(), minlength=m + 1)
        counts += part[: m + 1]
    return counts


def _positions(facets: np.ndarray, m: int, k: int) -> np.ndarray:
    bits = ((facets[:, None] >> np.arange(m, dtype=np.int64)) & 1).astype(bool)
    return np.nonzero(bits)[1].reshape(len(facets), k).astype(np.int64)


def _choose_indices(k: int, j: int) -> np.ndarray:
    return np.array(list(combinations(range(k), j)), dtype=np.int64)


def cover_counts(facets: np.ndarray, m: int, j: int, binom: np.ndarray) -> np.ndarray:
    """counts[rank(s)] = number of facets containing the j-subset s."""
    facets = np.asarray(facets, dtype=np.int64)
    k = int(np.bitwise_count(facets[0])) if len(facets) else 0
    size = int(binom[m, j])
    counts = np.zeros(size, dtype=np.int64)
    if not len(facets) or j > k:
        return counts
    pos = _positions(facets, m, k)
    cix = _choose_indices(k, j)
    cols = [np.ascontiguousarray(binom[:, t + 1]) for t in range(j)]
    step = max(1, (1 << 22) // len(cix))
    for lo in range(0, len(facets), step):
        sub = pos[lo : lo + step][:, cix]  # (chunk, C(k,j), j)
        ranks = cols[0][sub[..., 0]]
        for t in range(1, j):
            ranks += cols[t][sub[..., t]]
        counts += np.bincount(ranks.ravel(), minlength=size)
    return counts


def l_batch(facets: np.ndarray, sigma: int, m: int):
    """All pairs (rho, tau minus sigma) with rho a nonempty subset of
    sigma intersect tau, over facets tau != sigma; both sides compressed
    onto the bit positions of sigma resp. its complement."""
    facets = np.asarray(facets, dtype=np.int64)
    sig_pos = [i for i in range(m) if sigma >> i & 1]
    co_pos = [i for i in range(m) if not sigma >> i & 1]
    sig_rank = {p: i for i, p in enumerate(sig_pos)}
    co_rank = {p: i for i, p in enumerate(co_pos)}
    rhos: list[int] = []
    etas: list[int] = []
    for t in facets:
        tau = int(t)
        if tau == sigma:
            continue
        inter = 0
        w = tau & sigma
        while w:
            b = w & -w
            inter |= 1 << sig_rank[b.bit_length() - 1]
            w ^= b
        eta = 0
        w = tau & ~sigma
        while w:
            b = w & -w
            eta |= 1 << co_rank[b.bit_length() - 1]
            w ^= b
        s = inter
        while s:
            rhos.append(s)
            etas.append(eta)
            s = (s - 1) & inter
    return (
        np.asarray(rhos, dtype=np.int32),
        np.asarray(etas, dtype=np.int32),
    )


def maximal_mask(words: np.ndarray, starts: np.ndarray) -> np.ndarray:
    """keep[i] = 1 unless words[i] is a strict subset of another word in
    its group; groups are the slices starts[g]:starts[g+1]."""
    words = np.asarray(words, dtype=np.int64)
    keep = np.ones(len(words), dtype=np.uint8)
    for g in range(len(starts) - 1):
        lo, hi = int(starts[g]), int(starts[g + 1])
        if hi - lo < 2:
            continue
        block = words[lo:hi]
        sub = ((block[:, None] & ~block[None, :]) == 0) & (
            block[:, None] != block[None, :]
        )
        keep[lo:hi] = ~sub.any(axis=1)
    return keep
