"""Triple flips, the K_S family, and bistellar-move analysis.

nu_X(sigma, v) counts facets tau with v in tau meeting the facet sigma
in a ridge; a vertex v with nu = d/2 pins down a distinguished triple
(Delta_1, Delta_2, Delta_3) of (d/2)-simplices whose links are the
boundaries of one another in cyclic order.  Replacing the subcomplex

    J = (D1 * bd D2) u (D2 * bd D3) u (D3 * bd D1)

by the mirrored J~ is the triple flip; applied across any subset S of
the 351 translates of the explicit triple below it produces the K_S
family, whose isomorphism census over subgroup stabilizers is the
big-integer computation in `subgroup_census`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as kernels
from ._kernels import shared
from .core import (
    Complex,
    SimplexLike,
    as_word,
    check_complementarity,
    link,
    neighborliness,
)
from .perm import (
    PermGroup,
    Permutation,
    apply_to_words,
    build_G351,
)


# ---------------------------------------------------------------------------
# nu-parameters


@dataclass(frozen=True)
class NuRow:
    """nu_K(sigma, v) for all v outside the facet sigma."""

    sigma: int
    m: int
    nu: tuple[tuple[int, int], ...]  # (vertex, count), vertices ascending

    @property
    def total(self) -> int:
        return sum(c for _, c in self.nu)

    @property
    def max(self) -> int:
        return max((c for _, c in self.nu), default=0)

    def count(self, value: int) -> int:
        return sum(1 for _, c in self.nu if c == value)


def nu_parameters(K: Complex, sigma: SimplexLike) -> NuRow:
    """Counts of facets through each outside vertex that meet sigma in a
    ridge; the counts sum to d+1 on a weak pseudomanifold."""
    sw = as_word(sigma)
    if sw not in K.facet_words:
        raise ValueError("sigma is not a facet")
    d = K.dim
    words = K.words_array
    hits = words[np.bitwise_count(words & sw) == d]
    outs = hits & ~sw
    counts: dict[int, int] = {}
    for w in outs:
        v = int(w).bit_length()  # 1-based vertex label
        counts[v] = counts.get(v, 0) + 1
    return NuRow(
        sigma=sw,
        m=K.m,
        nu=tuple(sorted(counts.items())),
    )


# ---------------------------------------------------------------------------
# distinguished triples


@dataclass(frozen=True)
class DistinguishedTriple:
    """Three pairwise disjoint (d/2)-simplices covering the vertex set,
    with link(D1) = bd D2, link(D2) = bd D3, link(D3) = bd D1."""

    d1: int
    d2: int
    d3: int
    m: int

    def rotated(self) -> "DistinguishedTriple":
        return DistinguishedTriple(self.d2, self.d3, self.d1, self.m)

    def canonical(self) -> "DistinguishedTriple":
        best = self
        cur = self
        for _ in range(2):
            cur = cur.rotated()
            if cur.d1 < best.d1:
                best = cur
        return best

    def vertices(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for w in (self.d1, self.d2, self.d3):
            out.append(tuple(i + 1 for i in range(self.m) if w >> i & 1))
        return tuple(out)


def _boundary_words(delta: int) -> set[int]:
    out = set()
    w = delta
    while w:
        b = w & -w
        out.add(delta ^ b)
        w ^= b
    return out


def _link_words(K: Complex, delta: int) -> set[int]:
    words = K.words_array
    mask = words[(words & delta) == delta]
    return set(int(w) ^ delta for w in mask)


def is_distinguished(K: Complex, t: DistinguishedTriple) -> bool:
    full = (1 << K.m) - 1
    if t.d1 | t.d2 | t.d3 != full:
        return False
    if t.d1 & t.d2 or t.d2 & t.d3 or t.d1 & t.d3:
        return False
    half = K.dim // 2 + 1
    if not (
        t.d1.bit_count() == t.d2.bit_count() == t.d3.bit_count() == half
    ):
        return False
    return (
        _link_words(K, t.d1) == _boundary_words(t.d2)
        and _link_words(K, t.d2) == _boundary_words(t.d3)
        and _link_words(K, t.d3) == _boundary_words(t.d1)
    )


def distinguished_triples(K: Complex) -> list[DistinguishedTriple]:
    """All distinguished triples of K, canonicalized up to cyclic
    rotation; reconstruction follows the nu = d/2 criterion.

    One argsort over all (facet, dropped-vertex) ridges pairs up the
    ridge neighbors of the whole complex at once; nu values then fall
    out of the multiplicities of the partners' extra vertices.
    """
    d = K.dim
    m = K.m
    if d % 2 or m != 3 * (d // 2) + 3:
        raise ValueError("expected a (3d/2+3)-vertex even-dimensional complex")
    if not check_complementarity(K):
        raise ValueError("complex violates complementarity")
    words = K.words_array
    n = len(words)
    full = (1 << m) - 1
    dp1 = d + 1
    drops = np.zeros((n, dp1), dtype=np.int64)
    w = words.copy()
    for j in range(dp1):
        low = w & -w
        drops[:, j] = low
        w ^= low
    ridges = (words[:, None] ^ drops).ravel()
    owner = np.repeat(np.arange(n, dtype=np.int64), dp1)
    order = np.argsort(ridges, kind="stable")
    rs = ridges[order]
    fs = owner[order]
    adj = np.nonzero(rs[1:] == rs[:-1])[0]
    if not len(adj):
        return []
    fa, fb = fs[adj], fs[adj + 1]
    wa, wb = words[fa], words[fb]
    ea = wa & ~wb  # vertex of fa missing from fb
    eb = wb & ~wa
    fac = np.concatenate([fa, fb])
    extra = np.concatenate([eb, ea])
    dropped = np.concatenate([ea, eb])
    vidx = np.bitwise_count((extra - 1).astype(np.uint64)).astype(np.int64)
    key = fac * m + vidx
    order2 = np.argsort(key, kind="stable")
    key_s = key[order2]
    drop_s = dropped[order2]
    starts = np.nonzero(np.r_[True, key_s[1:] != key_s[:-1]])[0]
    counts = np.diff(np.r_[starts, len(key_s)])
    rho_or = np.bitwise_or.reduceat(drop_s, starts)
    want = counts == d // 2
    found: dict[tuple[int, int, int], DistinguishedTriple] = {}
    for kk, rho in zip(key_s[starts[want]], rho_or[want]):
        sw = int(words[int(kk) // m])
        vw = 1 << (int(kk) % m)
        rho = int(rho)
        t = DistinguishedTriple(
            d1=sw & ~rho, d2=rho | vw, d3=full ^ sw ^ vw, m=m
        ).canonical()
        found.setdefault((t.d1, t.d2, t.d3), t)
    out = [t for t in found.values() if is_distinguished(K, t)]
    return sorted(out, key=lambda t: (t.d1, t.d2, t.d3))


def _region_facets(a: int, b: int) -> set[int]:
    # facets of a * bd b
    out = set()
    w = b
    while w:
        x = w & -w
        out.add(a | (b ^ x))
        w ^= x
    return out


def j_facets(t: DistinguishedTriple) -> set[int]:
    return (
        _region_facets(t.d1, t.d2)
        | _region_facets(t.d2, t.d3)
        | _region_facets(t.d3, t.d1)
    )


def j_tilde_facets(t: DistinguishedTriple) -> set[int]:
    return (
        _region_facets(t.d2, t.d1)
        | _region_facets(t.d3, t.d2)
        | _region_facets(t.d1, t.d3)
    )


def triple_flip(K: Complex, t: DistinguishedTriple) -> Complex:
    """Replace the distinguished subcomplex J of t by its mirror; facet
    count is preserved and the result is PL homeomorphic to K."""
    if not is_distinguished(K, t):
        raise ValueError("triple is not distinguished in this complex")
    old = j_facets(t)
    new = j_tilde_facets(t)
    have = set(K.facet_words)
    if not old <= have:
        raise ValueError("distinguished subcomplex is not contained in K")
    return Complex(sorted((have - old) | new), K.m)


# ---------------------------------------------------------------------------
# the K_S family

# vertex triple generating the 351 distinguished subcomplexes of the
# second 27-vertex complex
K2_TRIPLE = DistinguishedTriple(
    d1=sum(1 << (v - 1) for v in (1, 2, 5, 6, 9, 10, 11, 16, 25)),
    d2=sum(1 << (v - 1) for v in (3, 4, 7, 8, 12, 13, 14, 15, 17)),
    d3=sum(1 << (v - 1) for v in (18, 19, 20, 21, 22, 23, 24, 26, 27)),
    m=27,
)


def _as_elements(S: Iterable, G: PermGroup) -> list[Permutation]:
    out = []
    for s in S:
        if isinstance(s, Permutation):
            out.append(s)
        else:
            out.append(G.elements[int(s)])
    return out


def build_K_S(
    S: Iterable,
    G: PermGroup | None = None,
    base: Complex | None = None,
    triple: DistinguishedTriple = K2_TRIPLE,
    validate: bool = False,
) -> Complex:
    """The complex obtained from the base (default: second fixture) by
    flipping the translate g(J) for every g in S; S holds group elements
    or indices into the canonical element order of G."""
    from .fixtures import complex_K

    if G is None:
        G = build_G351()
    if base is None:
        base = complex_K(2)
    have = set(base.facet_words)
    jw = np.array(sorted(j_facets(triple)), dtype=np.int64)
    jtw = np.array(sorted(j_tilde_facets(triple)), dtype=np.int64)
    for g in _as_elements(S, G):
        old = apply_to_words(g, jw)
        new = apply_to_words(g, jtw)
        old_set = set(int(w) for w in old)
        if not old_set <= have:
            raise ValueError("translate of J is not present; S applied twice?")
        have -= old_set
        have |= set(int(w) for w in new)
    out = Complex(sorted(have), base.m)
    if validate:
        from .core import is_weak_pseudomanifold

        if not is_weak_pseudomanifold(out) or not check_complementarity(out):
            raise AssertionError("flipped complex failed structural checks")
    return out


# ---------------------------------------------------------------------------
# bistellar moves


def bistellar_options(
    L: Complex, neighborly_prune: bool = True
) -> list[tuple[int, int]]:
    """All bistellar k-moves with k > 0 available for L: pairs (sigma,
    tau) with link(sigma, L) = bd tau and tau not in L.

    With the prune enabled, k starts at the neighborliness s of L (an
    s-neighborly complex has no non-simplex of dimension < s, and tau is
    a k-dimensional non-simplex).
    """
    n = L.dim
    m = L.m
    words = L.words_array
    binom = shared.binom_table(m, m)
    k_min = max(1, neighborliness(L)) if neighborly_prune else 1
    out: list[tuple[int, int]] = []
    for k in range(k_min, n + 1):
        j = n - k + 1  # |sigma|
        counts = kernels.cover_counts(words, m, j, binom)
        (cand,) = np.nonzero(counts == k + 1)
        if not len(cand):
            continue
        # ranks are colexicographic, the ascending enumeration order
        sigmas = shared.all_k_subsets(m, j)[cand]
        for sw in sigmas:
            sw = int(sw)
            lk = words[(words & sw) == sw] ^ sw
            union = 0
            for w in lk:
                union |= int(w)
            if union.bit_count() != k + 1:
                continue
            if set(int(w) for w in lk) != _boundary_words(union):
                continue
            # tau must not already be a simplex
            if bool(((words & union) == union).any()):
                continue
            out.append((sw, union))
    return sorted(out)


# ---------------------------------------------------------------------------
# subgroup census


@dataclass(frozen=True)
class CensusRow:
    label: str
    class_size: int
    subgroup_order: int
    normalizer_order: int
    n_geq: int
    n_exact: int
    m: int


@dataclass(frozen=True)
class CensusTable:
    rows: tuple[CensusRow, ...]

    @property
    def total(self) -> int:
        return sum(r.m for r in self.rows)

    def by_label(self, label: str) -> CensusRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    def triangulation_totals(self, extra_full_symmetry: int = 2) -> dict[str, int]:
        """Tally of known triangulations per symmetry class.

        The census itself counts the flip family of K2 only.  K1 and K4
        carry the full group but are not flips of K2, so the largest
        class gains `extra_full_symmetry` members in the overall count.
        """
        out = {r.label: r.m for r in self.rows}
        top = max(self.rows, key=lambda r: r.subgroup_order).label
        out[top] += extra_full_symmetry
        return out


def subgroup_census(G: PermGroup | None = None) -> CensusTable:
    """Isomorphism counts of the K_S family per stabilizer class.

    n_{>=H} = 2^[G:H] counts coset-union subsets; strict-overgroup
    subtraction gives n_H, and m_H = n_H / [N(H):H].  Exact integers
    throughout; the class total is cross-checked against a direct
    orbit count of G acting on subsets of itself.
    """
    if G is None:
        G = build_G351()
    from .perm import subgroup_lattice

    lat = subgroup_lattice(G)
    masks = lat.masks
    sizes = [m_.bit_count() for m_ in masks]
    order = sorted(range(len(masks)), key=lambda i: -sizes[i])
    n_exact: dict[int, int] = {}
    for i in order:
        val = 1 << (G.order // sizes[i])
        for jx in order:
            if sizes[jx] > sizes[i] and masks[i] & ~masks[jx] == 0:
                val -= n_exact[jx]
        n_exact[i] = val
    rows = []
    for cid, cls in enumerate(lat.classes):
        nH = n_exact[lat.class_rep[cid]]
        over = cls.normalizer_order // cls.rep.order
        if nH % over:
            raise AssertionError("census count not divisible by [N(H):H]")
        rows.append(
            CensusRow(
                label=cls.label,
                class_size=cls.class_size,
                subgroup_order=cls.rep.order,
                normalizer_order=cls.normalizer_order,
                n_geq=1 << (G.order // cls.rep.order),
                n_exact=nH,
                m=nH // over,
            )
        )
    table = CensusTable(rows=tuple(sorted(rows, key=lambda r: -r.subgroup_order)))
    if table.total != _burnside_subset_orbits(G):
        raise AssertionError("census total disagrees with the orbit count")
    return table


def _burnside_subset_orbits(G: PermGroup) -> int:
    """Number of G-orbits on subsets of G under left shifts."""
    from .perm import group_table

    tab = group_table(G)
    n = tab.n
    total = 0
    for g in range(n):
        perm = tab.rows[g]
        seen = bytearray(n)
        cycles = 0
        for i in range(n):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = 1
                    j = perm[j]
        total += 1 << cycles
    q, r = divmod(total, n)
    if r:
        raise AssertionError("orbit-count sum not divisible by the group order")
    return q
