"""Combinatorial-manifold certification through nonevasiveness.

A pure d-complex K is a combinatorial manifold as soon as every nonempty
simplex rho of dimension < d admits a facet witness sigma > rho whose
complex

    L(rho, sigma) = cost(sigma - rho, link(rho, K))
                  = { eta in V - sigma : rho u eta in K }

is collapsible; nonevasiveness is the cheap sufficient test for that,
computable from maximal simplices alone.  `certify_manifold` runs the
witness search orbit by orbit, `is_nonevasive` is the recursive check
with a bounded memo, and `collapse_oracle` is a small independent
collapsibility search used to cross-validate the implication
nonevasive => collapsible on random instances.
"""

from __future__ import annotations

import struct
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels as kernels
from ._kernels import shared
from .core import Complex, SimplexLike, as_word
from .perm import PermGroup, canonical_rep_words, expand_orbits


# ---------------------------------------------------------------------------
# nonevasiveness


def _canonical_key(words: Iterable[int]) -> tuple[int, ...]:
    """Sort generating sets, then relabel vertices by first occurrence.

    Purely a cache key: equal keys imply isomorphic complexes, which is
    all the memo needs.
    """
    ws = sorted({int(w) for w in words if w})
    relabel: dict[int, int] = {}
    out = []
    for w in ws:
        nw = 0
        x = w
        while x:
            b = x & -x
            p = b.bit_length() - 1
            i = relabel.get(p)
            if i is None:
                i = len(relabel)
                relabel[p] = i
            nw |= 1 << i
            x ^= b
        out.append(nw)
    out.sort()
    return tuple(out)


def _drop_bit(w: int, v: int) -> int:
    # delete bit v and close the gap
    return (w & ((1 << v) - 1)) | ((w >> (v + 1)) << v)


def _pack_key(key: tuple[int, ...]) -> bytes:
    return struct.pack("<%dI" % len(key), *key)


class NonevasiveChecker:
    """Recursive nonevasiveness with an LRU memo on canonical keys.

    Memo entries are keyed on the packed canonical word list, so the
    resident cost stays near a hundred bytes per cached subcomplex.
    """

    def __init__(self, capacity: int = 1 << 20):
        self.capacity = capacity
        self._memo: OrderedDict[bytes, bool] = OrderedDict()
        self.hits = 0
        self.misses = 0

    def check_words(self, words: Iterable[int]) -> bool:
        return self._check(_canonical_key(words))

    def _store(self, kb: bytes, value: bool) -> bool:
        memo = self._memo
        memo[kb] = value
        if len(memo) > self.capacity:
            memo.popitem(last=False)
        return value

    def _check(self, key: tuple[int, ...]) -> bool:
        memo = self._memo
        kb = _pack_key(key)
        hit = memo.get(kb)
        if hit is not None:
            memo.move_to_end(kb)
            self.hits += 1
            return hit
        self.misses += 1
        union = 0
        inter = -1
        for w in key:
            union |= w
            inter &= w
        if union == 0:
            # no vertices at all (void complex or bare empty simplex)
            return self._store(kb, False)
        if key[-1] == union:
            # one generator covers every vertex: full simplex, point included
            return self._store(kb, True)
        if inter:
            # cone apex; a cone is nonevasive by induction on the base
            return self._store(kb, True)
        u = union
        while u:
            b = u & -u
            v = b.bit_length() - 1
            u ^= b
            link = _canonical_key(_drop_bit(w, v) for w in key if w >> v & 1)
            if not self._check(link):
                continue
            cost = _canonical_key(_drop_bit(w & ~b, v) for w in key)
            if self._check(cost):
                return self._store(kb, True)
        return self._store(kb, False)


_default_checker = NonevasiveChecker()


def _as_words(obj) -> list[int]:
    if isinstance(obj, Complex):
        return list(obj.facet_words)
    return [as_word(s) if not isinstance(s, int) else s for s in obj]


def is_nonevasive(obj, checker: NonevasiveChecker | None = None) -> bool:
    """Nonevasiveness of the complex generated by the given maximal
    simplices (a Complex or an iterable of simplices/bit words).

    Base cases follow the recursive definition: no vertices is evasive,
    a single point is nonevasive; otherwise some vertex must have both
    link and contrastar nonevasive.
    """
    if checker is None:
        checker = _default_checker
    return checker.check_words(_as_words(obj))


def nonevasive_trace(obj):
    """Nested decision trace for a nonevasive complex, None if evasive.

    Nodes: ("full",) a generator covers every vertex; ("cone", v) vertex
    v lies in every generator; ("pick", v, link_trace, cost_trace).
    Unmemoized, so meant for small complexes only.
    """
    words = tuple(sorted({w for w in _as_words(obj) if w}))
    return _trace(words)


def _trace(words: tuple[int, ...]):
    union = 0
    inter = -1
    for w in words:
        union |= w
        inter &= w
    if union == 0:
        return None
    if union in words:
        return ("full",)
    if inter:
        return ("cone", (inter & -inter).bit_length() - 1)
    u = union
    while u:
        b = u & -u
        v = b.bit_length() - 1
        u ^= b
        lt = _trace(tuple(sorted({w & ~b for w in words if w >> v & 1})))
        if lt is None:
            continue
        ct = _trace(tuple(sorted({w & ~b for w in words} - {0})))
        if ct is not None:
            return ("pick", v, lt, ct)
    return None


def replay_trace(obj, trace) -> bool:
    """Re-derive the nonevasive verdict by replaying recorded choices."""
    words = tuple(sorted({w for w in _as_words(obj) if w}))
    return _replay(words, trace)


def _replay(words: tuple[int, ...], trace) -> bool:
    union = 0
    for w in words:
        union |= w
    if trace is None or union == 0:
        return False
    tag = trace[0]
    if tag == "full":
        return union in words
    if tag == "cone":
        b = 1 << trace[1]
        return bool(union & b) and all(w & b for w in words)
    if tag == "pick":
        v = trace[1]
        b = 1 << v
        if not union & b:
            return False
        link = tuple(sorted({w & ~b for w in words if w & b}))
        cost = tuple(sorted({w & ~b for w in words} - {0}))
        return _replay(link, trace[2]) and _replay(cost, trace[3])
    return False


# ---------------------------------------------------------------------------
# L-complexes


@dataclass(frozen=True)
class LComplex:
    """The complex {eta in V - sigma : rho u eta in K}, by maximal
    simplices tau - sigma over facets tau > rho; (0,) encodes the case
    where only the empty simplex remains."""

    rho: int
    sigma: int
    m: int
    maximal: tuple[int, ...]


def _superset_table(
    all_words: np.ndarray, sigma: int, m: int
) -> tuple[list[int], list[int], np.ndarray]:
    """Per-facet table of every L(rho, sigma) at once.

    Row rc of the result holds a bitmap (in uint64 blocks) over the
    compressed eta space: bit ec is set iff some facet tau != sigma has
    tau - sigma = eta and rho <= sigma n tau.  Filling one bit per facet
    at its full intersection and then OR-ing each row into all its
    subset rows (one pass per sigma-bit) keeps the cost near
    2^|sigma| * |V - sigma| machine words instead of one entry per
    (rho, tau) incidence.
    """
    sig_pos = [i for i in range(m) if sigma >> i & 1]
    co_pos = [i for i in range(m) if not sigma >> i & 1]
    k = len(sig_pos)
    inter = all_words & sigma
    outs = all_words ^ inter
    ic = np.zeros(len(all_words), dtype=np.int64)
    for j, p in enumerate(sig_pos):
        ic |= ((inter >> p) & 1) << j
    ec = np.zeros(len(all_words), dtype=np.int64)
    for j, p in enumerate(co_pos):
        ec |= ((outs >> p) & 1) << j
    keep = all_words != sigma
    ic, ec = ic[keep], ec[keep]
    blocks = ((1 << len(co_pos)) + 63) >> 6
    M = np.zeros((1 << k, blocks), dtype=np.uint64)
    vals = np.left_shift(np.uint64(1), (ec & 63).astype(np.uint64))
    np.bitwise_or.at(M, (ic, ec >> 6), vals)
    for b in range(k):
        M2 = M.reshape(-1, 2, 1 << b, blocks)
        M2[:, 0] |= M2[:, 1]
    return sig_pos, co_pos, M


def _row_etas(row: np.ndarray) -> np.ndarray:
    """Distinct compressed eta words recorded in one table row."""
    bits = np.unpackbits(row.view(np.uint8), bitorder="little")
    return np.nonzero(bits)[0].astype(np.int64)


def _maximal_only(etas: np.ndarray) -> np.ndarray:
    if len(etas) < 2:
        return etas
    ends = np.array([0, len(etas)], dtype=np.int64)
    keep = kernels.maximal_mask(etas, ends).astype(bool)
    return etas[keep]


def l_complexes_for_facet(K: Complex, sigma: SimplexLike) -> dict[int, LComplex]:
    """Map rho -> L(rho, sigma) for every nonempty proper rho < sigma.

    Materializes all 2^(d+1) - 2 entries, so it is meant for inspection
    of a single facet; the certification path streams rows instead.
    """
    sw = as_word(sigma)
    if sw not in K.facet_words:
        raise ValueError("sigma is not a facet of the complex")
    m = K.m
    sig_pos, co_pos, M = _superset_table(K.words_array, sw, m)
    spread_s = shared.scatter_table(sig_pos)
    spread_c = shared.scatter_table(co_pos)
    out: dict[int, LComplex] = {}
    full = (1 << len(sig_pos)) - 1
    rcs = np.arange(1, full, dtype=np.int64)
    rho_words = shared.apply_table(spread_s, rcs)
    for rc in range(1, full):
        etas = _maximal_only(_row_etas(M[rc]))
        if len(etas):
            # rho's whose star is the single facet sigma (possible only
            # when K is not a weak pseudomanifold) keep just {empty}
            maximal = tuple(int(w) for w in shared.apply_table(spread_c, etas))
        else:
            maximal = (0,)
        out[int(rho_words[rc - 1])] = LComplex(
            rho=int(rho_words[rc - 1]), sigma=sw, m=m, maximal=maximal
        )
    return out


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class CertificateEntry:
    rho: int
    sigma: int
    trace: Optional[tuple] = None


@dataclass
class Certificate:
    """Witness table keyed on the canonical representative of each
    simplex orbit; `complete` means every orbit of dimension < d found a
    facet whose L-complex is nonevasive.  An incomplete certificate is
    inconclusive, never a disproof."""

    m: int
    group_order: int
    entries: dict[int, CertificateEntry] = field(default_factory=dict)
    uncovered: tuple[int, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.uncovered

    def lines(self) -> list[str]:
        out = []
        for c in sorted(self.entries):
            e = self.entries[c]
            out.append(f"{e.rho:b} {e.sigma:b} OK")
        for c in self.uncovered:
            out.append(f"{c:b} - UNCOVERED")
        return out


def _facet_pass(
    all_words: np.ndarray,
    sigma: int,
    m: int,
    G: PermGroup,
    covered: set[int],
    checker: NonevasiveChecker,
    with_traces: bool,
):
    """One facet of the witness search: returns (seen canonicals, new
    entries) for rho's not already covered."""
    sig_pos, co_pos, M = _superset_table(all_words, sigma, m)
    k = len(sig_pos)
    active = M.any(axis=1)
    active[0] = False
    active[(1 << k) - 1] = False
    rcs = np.nonzero(active)[0].astype(np.int64)
    spread_s = shared.scatter_table(sig_pos)
    spread_c = shared.scatter_table(co_pos)
    rho_words = shared.apply_table(spread_s, rcs)
    canon = canonical_rep_words(G, rho_words)
    seen = set(int(c) for c in canon)
    entries: dict[int, CertificateEntry] = {}
    for gi in range(len(rcs)):
        c = int(canon[gi])
        if c in covered or c in entries:
            continue
        max_etas = _maximal_only(_row_etas(M[rcs[gi]]))
        # compressed labels; the canonical memo key is identical either way
        if checker.check_words(int(w) for w in max_etas):
            trace = None
            if with_traces:
                trace = nonevasive_trace(
                    int(w) for w in shared.apply_table(spread_c, max_etas)
                )
            entries[c] = CertificateEntry(
                rho=int(rho_words[gi]), sigma=sigma, trace=trace
            )
    return seen, entries


def certify_manifold(
    Kreps: Complex,
    G: PermGroup,
    *,
    jobs: int = 1,
    with_traces: bool = False,
    checker: NonevasiveChecker | None = None,
    progress=None,
) -> Certificate:
    """Search facet witnesses for every simplex orbit of the expanded
    complex; facets are processed in file order and an orbit is retired
    as soon as one of its L-complexes verifies nonevasive."""
    if checker is None:
        checker = NonevasiveChecker()
    K = expand_orbits(G, Kreps)
    all_words = K.words_array
    m = K.m
    covered: set[int] = set()
    seen: set[int] = set()
    entries: dict[int, CertificateEntry] = {}
    reps = list(Kreps.facet_words)
    if jobs > 1:
        _certify_parallel(
            all_words, reps, m, G, covered, seen, entries, jobs, with_traces
        )
    else:
        for si, sigma in enumerate(reps):
            s_seen, s_entries = _facet_pass(
                all_words, sigma, m, G, covered, checker, with_traces
            )
            seen |= s_seen
            entries.update(s_entries)
            covered |= set(s_entries)
            if progress is not None:
                progress(si + 1, len(reps), len(seen) - len(covered))
    uncovered = tuple(sorted(seen - covered))
    return Certificate(
        m=m, group_order=G.order, entries=entries, uncovered=uncovered
    )


def _certify_parallel(
    all_words, reps, m, G, covered, seen, entries, jobs, with_traces
):
    """Speculative facet batches: workers share no progress inside a
    batch, so late facets may recheck orbits a sibling already covered;
    the first-facet witness wins at merge time, keeping the result equal
    to the serial one whenever witnesses agree facet by facet."""
    import multiprocessing as mp

    global _WORKER_CTX
    _WORKER_CTX = (all_words, m, G, with_traces)
    ctx = mp.get_context("fork")
    with ctx.Pool(jobs) as pool:
        batch = max(1, len(reps) // (4 * jobs))
        pending = [
            reps[i : i + batch] for i in range(0, len(reps), batch)
        ]
        args = [(chunk, set(covered)) for chunk in pending]
        for s_seen, chunk_entries in pool.imap(_certify_chunk, args):
            seen |= s_seen
            for c, e in chunk_entries:
                if c not in entries:
                    entries[c] = e
                    covered.add(c)


_WORKER_CTX = None


def _certify_chunk(arg):
    chunk, covered = arg
    all_words, m, G, with_traces = _WORKER_CTX
    checker = NonevasiveChecker()
    seen: set[int] = set()
    found: list[tuple[int, CertificateEntry]] = []
    for sigma in chunk:
        s_seen, s_entries = _facet_pass(
            all_words, sigma, m, G, covered, checker, with_traces
        )
        seen |= s_seen
        for c, e in s_entries.items():
            covered.add(c)
            found.append((c, e))
    return seen, found


# ---------------------------------------------------------------------------
# collapse oracle


class _Budget(Exception):
    pass


def collapse_oracle(obj, budget: int = 100000) -> bool | None:
    """Backtracking search for a collapse to a point; None when the node
    budget runs out.  Desk-scale oracle for small complexes only."""
    gens = sorted({w for w in _as_words(obj) if w})
    if not gens:
        return False
    simplices: set[int] = set()
    for w in gens:
        s = w
        while s:
            simplices.add(s)
            s = (s - 1) & w
    fails: set[frozenset[int]] = set()
    counter = [budget]

    def dfs(state: frozenset[int]) -> bool:
        if len(state) == 1:
            (only,) = state
            return only.bit_count() == 1
        if state in fails:
            return False
        if counter[0] <= 0:
            raise _Budget
        counter[0] -= 1
        members = sorted(state)
        for s in members:
            # maximal?
            if any(o != s and o & s == s for o in members):
                continue
            w = s
            while w:
                b = w & -w
                w ^= b
                t = s ^ b
                if t == 0:
                    continue
                # free facet: no member besides s and t itself contains t
                if any(o != s and o != t and o & t == t for o in members):
                    continue
                if dfs(state - {s, t}):
                    return True
        fails.add(state)
        return False

    try:
        return dfs(frozenset(simplices))
    except _Budget:
        return None
