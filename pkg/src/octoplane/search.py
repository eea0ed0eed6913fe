"""Search for G-invariant weak pseudomanifolds by orbit selection.

The task: all pure d-dimensional weak pseudomanifolds on [m], invariant
under a permutation group G, with no two facets whose union is [m] and
with at least N facets.  Facet sets of such complexes are unions of
G-orbits of (d+1)-subsets, so the search selects a subset of the
admissible orbits subject to adjacency-count and prohibition
constraints, propagating consequences and branching on the most
constrained orbit.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ._kernels import shared
from .core import Complex
from .perm import PermGroup, canonical_rep_words, expand_orbits, orbit_scan


@dataclass(frozen=True)
class SearchConfig:
    m: int
    d: int
    G: PermGroup
    N: int
    branch_weight: int = 10
    budget_factor: int = 5

    def __post_init__(self):
        if not (0 <= self.d < self.m):
            raise ValueError("need 0 <= d < m")
        if self.N < 0:
            raise ValueError("N must be nonnegative")
        if self.G.m != self.m:
            raise ValueError("group acts on the wrong universe")


class OrbitCatalog:
    """Admissible (d+1)-subset orbits plus rank lookup tables.

    An orbit is admissible when no two of its members union to [m] and
    no d-subset lies in three or more of its members.
    """

    def __init__(self, cfg: SearchConfig):
        self.m = cfg.m
        self.d = cfg.d
        self.G = cfg.G
        k = cfg.d + 1
        scan = orbit_scan(cfg.G, k)
        self.n_total_orbits = scan.n_orbits
        self.all_orbit_sizes = scan.sizes
        words = shared.all_k_subsets(cfg.m, k)
        ids = scan.orbit_by_rank
        full = (1 << cfg.m) - 1

        # a member containing the complement of its orbit representative
        # unions with (a translate of) the representative to [m]
        comps = full ^ scan.reps
        bad1 = np.zeros(scan.n_orbits, dtype=bool)
        hit = (comps[ids] & ~words) == 0
        bad1[ids[hit]] = True

        drop_keys, drop_counts, rho_sizes, n_rho = _drop_statistics(
            cfg.G, scan.reps, cfg.m, k
        )
        cnum = scan.sizes[drop_keys // n_rho] * drop_counts
        cden = rho_sizes[drop_keys % n_rho]
        if np.any(cnum % cden):
            raise AssertionError("orbit adjacency count is not integral")
        c = cnum // cden
        bad2 = np.zeros(scan.n_orbits, dtype=bool)
        bad2[(drop_keys // n_rho)[c >= 3]] = True

        keep = ~bad1 & ~bad2
        self.reps = scan.reps[keep]
        self.sizes = scan.sizes[keep]
        self.n_orbits = len(self.reps)

        remap = np.full(scan.n_orbits, -1, dtype=np.int32)
        remap[np.nonzero(keep)[0]] = np.arange(self.n_orbits, dtype=np.int32)
        # admissible orbit index (or -1) per colexicographic (d+1)-subset rank
        self.admissible_by_rank = remap[ids]
        self.binom = shared.binom_table(cfg.m, k)

        order = np.argsort(ids, kind="stable")
        bounds = np.searchsorted(ids[order], np.arange(scan.n_orbits + 1))
        sorted_words = words[order]
        self.members = [
            sorted_words[bounds[i] : bounds[i + 1]].copy()
            for i in np.nonzero(keep)[0]
        ]

    def orbit_index_of_word(self, word: int) -> int:
        """Admissible orbit index of a (d+1)-subset word, or -1."""
        w = np.array([word], dtype=np.int64)
        rank = int(shared.colex_ranks(w, self.m, self.binom)[0])
        return int(self.admissible_by_rank[rank])


def _drop_statistics(G: PermGroup, reps: np.ndarray, m: int, k: int):
    """For every representative, canonicalize its k one-element-smaller
    subsets; returns per-(orbit, rho-orbit) multiplicities and the
    rho-orbit sizes needed to turn them into adjacency counts."""
    n = len(reps)
    pos = np.nonzero((reps[:, None] >> np.arange(m)) & 1)[1].reshape(n, k)
    drops = reps[:, None] ^ (np.int64(1) << pos)
    canon = canonical_rep_words(G, drops.ravel())
    rho_words, rho_inv = np.unique(canon, return_inverse=True)
    n_rho = len(rho_words)
    rho_sizes = _orbit_sizes_of_words(G, rho_words)
    orbit_idx = np.repeat(np.arange(n, dtype=np.int64), k)
    keys, counts = np.unique(orbit_idx * n_rho + rho_inv, return_counts=True)
    return keys, counts, rho_sizes, n_rho


def _orbit_sizes_of_words(G: PermGroup, words: np.ndarray) -> np.ndarray:
    sizes = np.empty(len(words), dtype=np.int64)
    tables = G.word_tables
    step = max(1, (1 << 23) // max(G.order, 1))
    for lo in range(0, len(words), step):
        chunk = words[lo : lo + step]
        imgs = np.empty((G.order, len(chunk)), dtype=np.int64)
        for i in range(G.order):
            imgs[i] = shared.apply_table(tables[i], chunk)
        imgs.sort(axis=0)
        sizes[lo : lo + step] = 1 + (imgs[1:] != imgs[:-1]).sum(axis=0)
    return sizes


def enumerate_admissible(cfg: SearchConfig) -> OrbitCatalog:
    return OrbitCatalog(cfg)


@dataclass
class Constraints:
    """Stage-1 output: initially prohibited orbit pairs and the list of
    adjacency groups (orbits once-adjacent to a common d-subset orbit;
    duplicate groups are kept)."""

    groups: list
    groups_of: list
    group_sets_of: list
    init_prohibited: list
    n_pairs: int


def build_constraints(catalog: OrbitCatalog) -> Constraints:
    n = catalog.n_orbits
    k = catalog.d + 1
    # dense pair matrix; the 27-vertex case prohibits millions of orbit
    # pairs, so tuples-in-a-set would not fit in memory
    pair_mat = np.zeros((n, n), dtype=bool)

    def add_pair(a: int, b: int):
        if a != b:
            pair_mat[a, b] = True
            pair_mat[b, a] = True

    # adjacency statistics over d-subsets of the admissible representatives;
    # every d-subset orbit meeting a member of an admissible orbit contains
    # a one-element-smaller subset of that orbit's representative, so
    # scanning representative drops loses nothing
    keys, counts, rho_sizes, n_rho = _drop_statistics(
        catalog.G, catalog.reps, catalog.m, k
    )
    cnum = catalog.sizes[keys // n_rho] * counts
    c = cnum // rho_sizes[keys % n_rho]
    if np.any(c > 2):
        raise AssertionError("admissible orbit with adjacency count > 2")

    order = np.argsort(keys % n_rho, kind="stable")
    rho_sorted = (keys % n_rho)[order]
    a_sorted = (keys // n_rho)[order]
    c_sorted = c[order]
    bounds = np.searchsorted(rho_sorted, np.arange(n_rho + 1))
    groups = []
    for r in range(n_rho):
        lo, hi = bounds[r], bounds[r + 1]
        once = []
        twice = []
        for a, cc in zip(a_sorted[lo:hi], c_sorted[lo:hi]):
            (once if cc == 1 else twice).append(int(a))
        if once:
            groups.append(tuple(once))
        for i, t in enumerate(twice):
            for o in twice[i + 1 :]:
                add_pair(t, o)
            for o in once:
                add_pair(t, o)

    # complementary unions: tau >= complement(rep) forces {orbit(rep),
    # orbit(tau)} apart
    j = 2 * k - catalog.m
    if j >= 0:
        patterns = shared.all_k_subsets(k, j)
        full = (1 << catalog.m) - 1
        for a in range(n):
            rep = int(catalog.reps[a])
            comp = full ^ rep
            pos = [i for i in range(catalog.m) if rep >> i & 1]
            spread = shared.scatter_table(pos)
            taus = shared.apply_table(spread, patterns) | comp
            ranks = shared.colex_ranks(taus, catalog.m, catalog.binom)
            partners = np.unique(catalog.admissible_by_rank[ranks])
            partners = partners[partners >= 0]
            if np.any(partners == a):
                raise AssertionError(
                    "complementary union inside an admissible orbit"
                )
            pair_mat[a, partners] = True
            pair_mat[partners, a] = True

    groups_of = [[] for _ in range(n)]
    for gi, g in enumerate(groups):
        for o in g:
            groups_of[o].append(gi)
    packed = np.packbits(pair_mat, axis=1, bitorder="little")
    init_prohibited = [
        int.from_bytes(packed[i].tobytes(), "little") for i in range(n)
    ]
    n_pairs = int(pair_mat.sum()) // 2
    return Constraints(
        groups=groups,
        groups_of=[tuple(x) for x in groups_of],
        group_sets_of=[frozenset(x) for x in groups_of],
        init_prohibited=init_prohibited,
        n_pairs=n_pairs,
    )


class _Inconsistent(Exception):
    pass


_INDETERMINATE, _TAKEN, _REMOVED = 0, 1, 2


class SearchState:
    """Mutable branch state: per-orbit status, prohibition and
    requirement bitmasks (transitively closed), the waiting list of
    adjacency groups, and the running size sum S."""

    __slots__ = (
        "status",
        "indet",
        "taken_mask",
        "prohibited",
        "req_out",
        "req_in",
        "req_count",
        "S",
        "level",
        "dead",
        "queue",
        "in_queue",
    )

    def __init__(self, n_orbits: int, n_groups: int, prohibited, S: int):
        self.status = bytearray(n_orbits)
        self.indet = (1 << n_orbits) - 1
        self.taken_mask = 0
        self.prohibited = prohibited
        self.req_out = [0] * n_orbits
        self.req_in = [0] * n_orbits
        self.req_count = 0
        self.S = S
        self.level = 1
        self.dead = bytearray(n_groups)
        self.queue = deque(range(n_groups))
        self.in_queue = bytearray(b"\1" * n_groups)

    def clone(self) -> "SearchState":
        other = object.__new__(SearchState)
        other.status = bytearray(self.status)
        other.indet = self.indet
        other.taken_mask = self.taken_mask
        other.prohibited = list(self.prohibited)
        other.req_out = list(self.req_out)
        other.req_in = list(self.req_in)
        other.req_count = self.req_count
        other.S = self.S
        other.level = self.level
        other.dead = bytearray(self.dead)
        other.queue = deque()
        other.in_queue = bytearray(len(self.in_queue))
        return other


@dataclass
class RunReport:
    n_total_orbits: int = 0
    n_admissible: int = 0
    n_groups: int = 0
    n_initial_pairs: int = 0
    n_solutions: int = 0
    branch_nodes: int = 0
    max_level: int = 1
    budget_prunes: int = 0
    budget_runs: int = 0
    budget_removals: int = 0
    budget_skips: int = 0
    wall_seconds: float = 0.0

    def lines(self) -> list[str]:
        return [
            f"orbits: {self.n_total_orbits} total, {self.n_admissible} admissible",
            f"adjacency groups: {self.n_groups}",
            f"initial prohibited pairs: {self.n_initial_pairs}",
            f"branch nodes: {self.branch_nodes}, max level: {self.max_level}",
            (
                f"budget: {self.budget_runs} runs, {self.budget_removals} removals, "
                f"{self.budget_skips} skips, {self.budget_prunes} prunes"
            ),
            f"solutions: {self.n_solutions}",
            f"wall time: {self.wall_seconds:.2f}s",
        ]


@dataclass
class SearchResult:
    complexes: list
    rep_complexes: list
    report: RunReport


class _Solver:
    """Depth-first orbit selection with constraint propagation."""

    def __init__(self, catalog: OrbitCatalog, cons: Constraints, cfg: SearchConfig):
        self.catalog = catalog
        self.cons = cons
        self.cfg = cfg
        self.sizes = [int(s) for s in catalog.sizes]
        self.total_size = int(catalog.sizes.sum())
        self.n = catalog.n_orbits
        self.groups = cons.groups
        self.groups_of = cons.groups_of
        self.group_sets_of = cons.group_sets_of
        self.report = RunReport(
            n_total_orbits=catalog.n_total_orbits,
            n_admissible=catalog.n_orbits,
            n_groups=len(cons.groups),
            n_initial_pairs=cons.n_pairs,
        )
        self.group_masks = []
        for g in cons.groups:
            gm = 0
            for o in g:
                gm |= 1 << o
            self.group_masks.append(gm)
        self._nbytes = (self.n + 7) // 8
        self._sizes_vec = np.zeros(self._nbytes * 8, dtype=np.int64)
        self._sizes_vec[: self.n] = catalog.sizes
        sz = set(self.sizes)
        self._uniform_size = sz.pop() if len(sz) == 1 else None
        self._max_size = max(self.sizes) if self.sizes else 0
        self.rep_words = [int(w) for w in catalog.reps]
        self.st: SearchState | None = None

    # -- primitive mutations; every one keeps invariants and re-enqueues --

    def _enqueue(self, gi: int):
        st = self.st
        if not st.in_queue[gi] and not st.dead[gi]:
            st.in_queue[gi] = 1
            st.queue.append(gi)

    def _enqueue_orbit(self, o: int):
        for gi in self.groups_of[o]:
            self._enqueue(gi)

    def _enqueue_pair(self, a: int, b: int):
        for gi in self.group_sets_of[a] & self.group_sets_of[b]:
            self._enqueue(gi)

    def take(self, a: int):
        st = self.st
        s = st.status[a]
        if s == _TAKEN:
            return
        if s == _REMOVED:
            raise _Inconsistent
        st.status[a] = _TAKEN
        st.indet &= ~(1 << a)
        st.taken_mask |= 1 << a
        self._enqueue_orbit(a)
        need = st.req_out[a] & st.indet
        while need:
            bit = need & -need
            need ^= bit
            b = bit.bit_length() - 1
            if st.status[b] == _INDETERMINATE:
                self.take(b)
        drop = st.prohibited[a] & st.indet
        while drop:
            bit = drop & -drop
            drop ^= bit
            b = bit.bit_length() - 1
            if st.status[b] == _INDETERMINATE:
                self.remove(b)
            elif st.status[b] == _TAKEN:
                raise _Inconsistent

    def remove(self, a: int):
        st = self.st
        s = st.status[a]
        if s == _REMOVED:
            return
        if s == _TAKEN:
            raise _Inconsistent
        st.status[a] = _REMOVED
        st.indet &= ~(1 << a)
        st.S -= self.sizes[a]
        if st.S < self.cfg.N:
            self.report.budget_prunes += 1
            raise _Inconsistent
        self._enqueue_orbit(a)
        back = st.req_in[a] & st.indet
        while back:
            bit = back & -back
            back ^= bit
            b = bit.bit_length() - 1
            if st.status[b] == _INDETERMINATE:
                self.remove(b)

    def prohibit(self, a: int, b: int):
        """Prohibit {a, b} together with every pair forced by the
        requirement relation; a self-pair removes its orbit."""
        st = self.st
        if a != b and (st.prohibited[a] >> b) & 1:
            # already present, so its closure was installed when added
            return
        if st.status[a] != _INDETERMINATE or st.status[b] != _INDETERMINATE:
            if st.status[a] == _TAKEN and st.status[b] == _INDETERMINATE:
                self.remove(b)
            elif st.status[b] == _TAKEN and st.status[a] == _INDETERMINATE:
                self.remove(a)
            elif st.status[a] == _TAKEN and st.status[b] == _TAKEN:
                raise _Inconsistent
            return
        left = (st.req_in[a] & st.indet) | (1 << a)
        right = (st.req_in[b] & st.indet) | (1 << b)
        overlap = left & right
        while overlap:
            bit = overlap & -overlap
            overlap ^= bit
            x = bit.bit_length() - 1
            if st.status[x] == _INDETERMINATE:
                self.remove(x)
        left &= st.indet
        right &= st.indet
        prohibited = st.prohibited
        enqueue_pair = self._enqueue_pair
        while left:
            lbit = left & -left
            left ^= lbit
            x = lbit.bit_length() - 1
            add = right & ~prohibited[x]
            if not add:
                continue
            prohibited[x] |= add
            while add:
                ybit = add & -add
                add ^= ybit
                y = ybit.bit_length() - 1
                prohibited[y] |= lbit
                enqueue_pair(x, y)

    def require(self, a: int, c: int):
        """Add a -> c plus the transitive closure, and inherit c's
        prohibitions onto a's side."""
        st = self.st
        if st.status[a] != _INDETERMINATE:
            return
        if st.status[c] == _REMOVED:
            self.remove(a)
            return
        if st.status[c] == _TAKEN or (st.req_out[a] >> c) & 1:
            return
        left = (st.req_in[a] & st.indet) | (1 << a)
        right = (st.req_out[c] & st.indet) | (1 << c)
        lefts = []
        while left:
            lbit = left & -left
            left ^= lbit
            lefts.append(lbit.bit_length() - 1)
        for x in lefts:
            add = right & ~st.req_out[x] & ~(1 << x)
            if not add:
                continue
            st.req_out[x] |= add
            st.req_count += add.bit_count()
            xbit = 1 << x
            while add:
                ybit = add & -add
                add ^= ybit
                y = ybit.bit_length() - 1
                st.req_in[y] |= xbit
                self._enqueue_pair(x, y)
        pro = st.prohibited[c] & st.indet & ~st.prohibited[a]
        while pro:
            bit = pro & -pro
            pro ^= bit
            d = bit.bit_length() - 1
            if st.status[a] != _INDETERMINATE:
                break
            if st.status[d] == _INDETERMINATE:
                self.prohibit(a, d)

    # -- adjacency-group examination ------------------------------------

    def _examine(self, gi: int):
        st = self.st
        status = st.status
        gmask = self.group_masks[gi]
        tk = gmask & st.taken_mask
        nt = tk.bit_count()
        if nt > 2:
            raise _Inconsistent
        live = gmask & st.indet
        if nt == 2:
            while live:
                bit = live & -live
                live ^= bit
                o = bit.bit_length() - 1
                if status[o] == _INDETERMINATE:
                    self.remove(o)
            st.dead[gi] = 1
            return
        if nt == 1:
            if live == 0:
                raise _Inconsistent
            if not live & (live - 1):
                self.take(live.bit_length() - 1)
                return
            indet = []
            while live:
                bit = live & -live
                live ^= bit
                indet.append(bit.bit_length() - 1)
            k = len(indet)
            for i in range(k):
                b = indet[i]
                if status[b] != _INDETERMINATE:
                    continue
                pb = st.prohibited[b]
                for jj in range(i + 1, k):
                    b2 = indet[jj]
                    if status[b] != _INDETERMINATE:
                        break
                    if status[b2] != _INDETERMINATE or (pb >> b2) & 1:
                        continue
                    self.prohibit(b, b2)
                    pb = st.prohibited[b]
            return
        # no taken member
        if live == 0:
            return
        indet = []
        scan = live
        while scan:
            bit = scan & -scan
            scan ^= bit
            indet.append(bit.bit_length() - 1)
        if st.req_count:
            for a in indet:
                if status[a] != _INDETERMINATE:
                    continue
                t = st.req_out[a] & live & st.indet & ~(1 << a)
                if t and t & (t - 1):
                    self.remove(a)
                    return
            for a in indet:
                if status[a] != _INDETERMINATE:
                    continue
                t = st.req_out[a] & live & st.indet & ~(1 << a)
                if t and not t & (t - 1):
                    b = t.bit_length() - 1
                    for cc in indet:
                        if status[a] != _INDETERMINATE:
                            break
                        if (
                            cc == a
                            or cc == b
                            or status[cc] != _INDETERMINATE
                            or (st.prohibited[a] >> cc) & 1
                        ):
                            continue
                        self.prohibit(a, cc)
        for a in indet:
            if status[a] != _INDETERMINATE:
                continue
            others = live & st.indet & ~(1 << a)
            if others == 0:
                self.remove(a)
                continue
            nonp = others & ~st.prohibited[a]
            if nonp == 0:
                self.remove(a)
                continue
            if not nonp & (nonp - 1):
                cc = nonp.bit_length() - 1
                if not (st.req_out[a] >> cc) & 1:
                    self.require(a, cc)

    # -- waiting list, budget, branching --------------------------------

    def _drain_queue(self):
        st = self.st
        queue = st.queue
        in_queue = st.in_queue
        dead = st.dead
        while queue:
            gi = queue.popleft()
            in_queue[gi] = 0
            if not dead[gi]:
                self._examine(gi)

    def _budget_sweep(self) -> bool:
        """Drop indeterminate orbits whose prohibitions alone cap the
        achievable sum below N; returns True if anything was removed."""
        st = self.st
        self.report.budget_runs += 1
        S0 = st.S
        slack = S0 - self.cfg.N
        mask = st.indet
        if (mask.bit_count() - 1) * self._max_size <= slack:
            return False
        doomed = []
        uniform = self._uniform_size
        prohibited = st.prohibited
        indet = st.indet
        while mask:
            bit = mask & -mask
            mask ^= bit
            pro = prohibited[bit.bit_length() - 1] & indet
            if not pro:
                continue
            if uniform is not None:
                P = pro.bit_count() * uniform
            else:
                buf = np.frombuffer(
                    pro.to_bytes(self._nbytes, "little"), dtype=np.uint8
                )
                P = int(np.unpackbits(buf, bitorder="little") @ self._sizes_vec)
            if P > slack:
                doomed.append(bit.bit_length() - 1)
        for a in doomed:
            if st.status[a] == _INDETERMINATE:
                self.remove(a)
        self.report.budget_removals += len(doomed)
        return bool(doomed)

    def _emit(self, state: SearchState) -> tuple[int, ...]:
        words = self.rep_words
        out = []
        mask = state.taken_mask
        while mask:
            bit = mask & -mask
            mask ^= bit
            out.append(words[bit.bit_length() - 1])
        return tuple(out)

    def settle(self) -> bool:
        """Propagate to a fixpoint; True when every orbit is decided."""
        st = self.st
        while True:
            self._drain_queue()
            if st.indet == 0:
                return True
            M = st.indet.bit_count()
            if M * self.cfg.G.order <= self.cfg.budget_factor * self.cfg.N:
                if self._budget_sweep():
                    continue
            else:
                self.report.budget_skips += 1
            return False

    def choose_branch(self) -> int:
        st = self.st
        best, best_score = -1, -1
        mask = st.indet
        while mask:
            bit = mask & -mask
            mask ^= bit
            a = bit.bit_length() - 1
            score = (st.prohibited[a] & st.indet).bit_count() + (
                self.cfg.branch_weight * (st.req_out[a] & st.indet).bit_count()
            )
            if score > best_score:
                best, best_score = a, score
        return best

    def run(self, initial: SearchState | None = None) -> list[tuple[int, ...]]:
        solutions: list[tuple[int, ...]] = []
        seen: set[tuple[int, ...]] = set()
        if initial is None:
            initial = SearchState(
                self.n,
                len(self.groups),
                list(self.cons.init_prohibited),
                self.total_size,
            )
        if initial.S < self.cfg.N:
            return solutions
        stack: list[tuple[SearchState, int, int]] = [(initial, -1, 0)]
        while stack:
            state, orbit, op = stack.pop()
            self.st = state
            try:
                if op == 1:
                    state.level += 1
                    if state.level > self.report.max_level:
                        self.report.max_level = state.level
                    self.take(orbit)
                elif op == 2:
                    self.remove(orbit)
                solved = self.settle()
            except _Inconsistent:
                continue
            if solved:
                sol = self._emit(state)
                if sol not in seen:
                    seen.add(sol)
                    solutions.append(sol)
                continue
            o = self.choose_branch()
            self.report.branch_nodes += 1
            clone = state.clone()
            stack.append((state, o, 2))
            stack.append((clone, o, 1))
        self.st = None
        self.report.n_solutions = len(solutions)
        return solutions


# -- public operations matching the staged pipeline ---------------------

def propagate(state: SearchState, catalog: OrbitCatalog, cons: Constraints,
              cfg: SearchConfig) -> str:
    solver = _Solver(catalog, cons, cfg)
    solver.st = state
    try:
        solver._drain_queue()
    except _Inconsistent:
        return "inconsistent"
    return "consistent"


def prune_by_budget(state: SearchState, catalog: OrbitCatalog,
                    cons: Constraints, cfg: SearchConfig) -> str:
    solver = _Solver(catalog, cons, cfg)
    solver.st = state
    try:
        if state.S < cfg.N:
            return "inconsistent"
        M = state.indet.bit_count()
        if M * cfg.G.order <= cfg.budget_factor * cfg.N:
            if solver._budget_sweep():
                solver._drain_queue()
        return "consistent"
    except _Inconsistent:
        return "inconsistent"


def choose_branch(state: SearchState, catalog: OrbitCatalog,
                  cons: Constraints, cfg: SearchConfig) -> int:
    solver = _Solver(catalog, cons, cfg)
    solver.st = state
    return solver.choose_branch()


def run_search(cfg: SearchConfig, jobs: int = 1,
               catalog: OrbitCatalog | None = None) -> SearchResult:
    """Full pipeline; returns every solution as an expanded Complex and
    as its orbit-representative Complex, in deterministic order."""
    t0 = time.time()
    catalog = catalog or enumerate_admissible(cfg)
    cons = build_constraints(catalog)
    solver = _Solver(catalog, cons, cfg)
    if jobs > 1:
        sols = _run_parallel(solver, jobs)
    else:
        sols = solver.run()
    report = solver.report
    report.n_solutions = len(sols)
    report.wall_seconds = time.time() - t0
    rep_complexes = [Complex(list(s), cfg.m) for s in sols]
    complexes = [expand_orbits(cfg.G, rc) for rc in rep_complexes]
    return SearchResult(complexes=complexes, rep_complexes=rep_complexes,
                        report=report)


def _run_parallel(solver: _Solver, jobs: int) -> list[tuple[int, ...]]:
    """Split the DFS frontier across processes; result order matches the
    serial run because subtree outputs are concatenated in stack order."""
    import multiprocessing as mp

    frontier: list[SearchState] = []
    solutions: list[tuple[None | int, object]] = []
    initial = SearchState(
        solver.n, len(solver.groups), list(solver.cons.init_prohibited),
        solver.total_size,
    )
    if initial.S < solver.cfg.N:
        return []
    # expand the frontier serially until there is enough independent work
    stack: list[tuple[SearchState, int, int]] = [(initial, -1, 0)]
    target = 4 * jobs
    order_counter = 0
    while stack and len(stack) + len(frontier) < target:
        state, orbit, op = stack.pop()
        solver.st = state
        try:
            if op == 1:
                state.level += 1
                solver.take(orbit)
            elif op == 2:
                solver.remove(orbit)
            solved = solver.settle()
        except _Inconsistent:
            continue
        if solved:
            solutions.append((order_counter, solver._emit(state)))
            order_counter += 1
            continue
        o = solver.choose_branch()
        solver.report.branch_nodes += 1
        clone = state.clone()
        stack.append((state, o, 2))
        stack.append((clone, o, 1))
    # settle whatever is left on the stack into frontier entries
    for state, orbit, op in reversed(stack):
        frontier.append((order_counter, state, orbit, op))
        order_counter += 1
    solver.st = None
    if not frontier:
        return [s for _, s in sorted(solutions)]

    global _WORKER_SOLVER
    _WORKER_SOLVER = solver
    ctx = mp.get_context("fork")
    with ctx.Pool(processes=jobs) as pool:
        parts = pool.map(_solve_frontier_entry, frontier)
    _WORKER_SOLVER = None
    for (idx, *_), part in zip(frontier, parts):
        for sol in part:
            solutions.append((idx, sol))
    out = []
    seen = set()
    for _, sol in sorted(solutions, key=lambda t: t[0]):
        if sol not in seen:
            seen.add(sol)
            out.append(sol)
    return out


_WORKER_SOLVER: _Solver | None = None


def _solve_frontier_entry(entry) -> list[tuple[int, ...]]:
    _, state, orbit, op = entry
    solver = _WORKER_SOLVER
    solver.st = state
    try:
        if op == 1:
            state.level += 1
            solver.take(orbit)
        elif op == 2:
            solver.remove(orbit)
    except _Inconsistent:
        return []
    return solver.run(initial=state)
