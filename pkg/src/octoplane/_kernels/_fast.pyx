# Compiled twins of the pure-numpy kernels in pure.py.
# Build in place with:  python setup.py build_ext --inplace
import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

cdef extern int __builtin_popcountll(unsigned long long) nogil


def canonical_reps(tables_in, words_in):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] tables = np.ascontiguousarray(
        tables_in, dtype=np.int64
    )
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] words = np.ascontiguousarray(
        words_in, dtype=np.int64
    )
    cdef Py_ssize_t n = words.shape[0]
    cdef Py_ssize_t ng = tables.shape[0]
    cdef int nch = <int> tables.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] out = np.empty(n, dtype=np.int64)
    cdef int64_t[:, :, ::1] t = tables
    cdef int64_t[::1] w = words
    cdef int64_t[::1] o = out
    cdef Py_ssize_t i, g
    cdef int c
    cdef int64_t word, img, best
    with nogil:
        for i in range(n):
            word = w[i]
            best = word
            for g in range(ng):
                img = 0
                for c in range(nch):
                    img |= t[g, c, (word >> (7 * c)) & 127]
                if img < best:
                    best = img
            o[i] = best
    return out


def face_closure(facets_in, int m):
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] facets = np.ascontiguousarray(
        facets_in, dtype=np.int64
    )
    cdef Py_ssize_t size = 1
    if m >= 6:
        size = (<Py_ssize_t> 1) << (m - 6)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1, mode="c"] packed = np.zeros(size, dtype=np.uint64)
    cdef uint64_t[::1] p = packed
    cdef int64_t[::1] f = facets
    cdef Py_ssize_t i, idx, half, blk, base, off
    cdef int b
    cdef uint64_t mask, shift
    cdef uint64_t inner[6]
    inner[0] = 0x5555555555555555UL
    inner[1] = 0x3333333333333333UL
    inner[2] = 0x0F0F0F0F0F0F0F0FUL
    inner[3] = 0x00FF00FF00FF00FFUL
    inner[4] = 0x0000FFFF0000FFFFUL
    inner[5] = 0x00000000FFFFFFFFUL
    with nogil:
        for i in range(facets.shape[0]):
            p[f[i] >> 6] |= (<uint64_t> 1) << (f[i] & 63)
        for b in range(6 if m >= 6 else m):
            mask = inner[b]
            shift = <uint64_t> (1 << b)
            for i in range(size):
                p[i] |= (p[i] >> shift) & mask
        for b in range(6, m):
            half = (<Py_ssize_t> 1) << (b - 6)
            blk = half * 2
            base = 0
            while base < size:
                for off in range(half):
                    p[base + off] |= p[base + half + off]
                base += blk
    return packed


def closure_counts(packed_in, int m):
    cdef cnp.ndarray[cnp.uint64_t, ndim=1, mode="c"] packed = np.ascontiguousarray(
        packed_in, dtype=np.uint64
    )
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] counts = np.zeros(m + 1, dtype=np.int64)
    cdef uint64_t[::1] p = packed
    cdef int64_t[::1] out = counts
    cdef Py_ssize_t i
    cdef int b, base_pc, nbits
    cdef uint64_t word
    nbits = 64 if m >= 6 else (1 << m)
    with nogil:
        for i in range(packed.shape[0]):
            word = p[i]
            if word == 0:
                continue
            base_pc = <int> __builtin_popcountll(<unsigned long long> (<uint64_t> i))
            for b in range(nbits):
                if (word >> b) & 1:
                    out[base_pc + __builtin_popcountll(<unsigned long long> b)] += 1
    return counts


def cover_counts(facets_in, int m, int j, binom_in):
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] facets = np.ascontiguousarray(
        facets_in, dtype=np.int64
    )
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] binom = np.ascontiguousarray(
        binom_in, dtype=np.int64
    )
    cdef Py_ssize_t nf = facets.shape[0]
    cdef int64_t size = binom[m, j]
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] counts = np.zeros(size, dtype=np.int64)
    cdef int64_t[::1] out = counts
    cdef int64_t[:, ::1] bn = binom
    cdef int64_t[::1] f = facets
    cdef int64_t word, rank
    cdef int pos[64]
    cdef int idx[64]
    cdef Py_ssize_t i
    cdef int k, b, t, lvl
    if nf == 0:
        return counts
    k = <int> __builtin_popcountll(<unsigned long long> (<uint64_t> f[0]))
    if j > k:
        return counts
    with nogil:
        for i in range(nf):
            word = f[i]
            k = 0
            for b in range(m):
                if (word >> b) & 1:
                    pos[k] = b
                    k += 1
            # odometer over all j-of-k index combinations
            for t in range(j):
                idx[t] = t
            while True:
                rank = 0
                for t in range(j):
                    rank += bn[pos[idx[t]], t + 1]
                out[rank] += 1
                lvl = j - 1
                while lvl >= 0 and idx[lvl] == k - j + lvl:
                    lvl -= 1
                if lvl < 0:
                    break
                idx[lvl] += 1
                for t in range(lvl + 1, j):
                    idx[t] = idx[t - 1] + 1
    return counts


def l_batch(facets_in, int64_t sigma, int m):
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] facets = np.ascontiguousarray(
        facets_in, dtype=np.int64
    )
    cdef int64_t[::1] f = facets
    cdef Py_ssize_t nf = facets.shape[0]
    cdef int sig_rank[64]
    cdef int co_rank[64]
    cdef int b, ns = 0, nc = 0
    for b in range(m):
        if (sigma >> b) & 1:
            sig_rank[b] = ns
            ns += 1
        else:
            co_rank[b] = nc
            nc += 1
    cdef Py_ssize_t total = 0
    cdef Py_ssize_t i
    cdef int64_t tau, w
    with nogil:
        for i in range(nf):
            tau = f[i]
            if tau == sigma:
                continue
            total += ((<Py_ssize_t> 1) << __builtin_popcountll(
                <unsigned long long> (tau & sigma)
            )) - 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1, mode="c"] rhos = np.empty(total, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1, mode="c"] etas = np.empty(total, dtype=np.int32)
    cdef cnp.int32_t[::1] ro = rhos
    cdef cnp.int32_t[::1] eo = etas
    cdef Py_ssize_t out = 0
    cdef int64_t inter, eta, s, low
    with nogil:
        for i in range(nf):
            tau = f[i]
            if tau == sigma:
                continue
            inter = 0
            w = tau & sigma
            while w:
                low = w & (-w)
                inter |= (<int64_t> 1) << sig_rank[
                    __builtin_popcountll(<unsigned long long> (low - 1))
                ]
                w ^= low
            eta = 0
            w = tau & ~sigma
            while w:
                low = w & (-w)
                eta |= (<int64_t> 1) << co_rank[
                    __builtin_popcountll(<unsigned long long> (low - 1))
                ]
                w ^= low
            s = inter
            while s:
                ro[out] = <cnp.int32_t> s
                eo[out] = <cnp.int32_t> eta
                out += 1
                s = (s - 1) & inter
    return rhos, etas


def maximal_mask(words_in, starts_in):
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] words = np.ascontiguousarray(
        words_in, dtype=np.int64
    )
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] starts = np.ascontiguousarray(
        starts_in, dtype=np.int64
    )
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, mode="c"] keep = np.ones(
        words.shape[0], dtype=np.uint8
    )
    cdef int64_t[::1] w = words
    cdef int64_t[::1] st = starts
    cdef cnp.uint8_t[::1] kp = keep
    cdef Py_ssize_t g, i, j, lo, hi
    cdef int64_t wi
    with nogil:
        for g in range(starts.shape[0] - 1):
            lo = st[g]
            hi = st[g + 1]
            for i in range(lo, hi):
                wi = w[i]
                for j in range(lo, hi):
                    if w[j] != wi and (wi & ~w[j]) == 0:
                        kp[i] = 0
                        break
    return keep
