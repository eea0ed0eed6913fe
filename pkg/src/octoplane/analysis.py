"""Fingerprints and symmetry analysis.

Incidence histograms over low-codimension faces, per-edge incidence
matrices, the residue tournament on the 27-element field with its
automorphism group, symmetry groups of complexes (by supergroup
filtering or generic backtracking), fixed-point complexes of group
actions, and facet-orbit intersection counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core import (
    Complex,
    DomainError,
    as_word,
    subface_multiplicities,
)
from .perm import (
    PermGroup,
    Permutation,
    _f27_add,
    _f27_neg,
    _mulclose,
    apply_to_words,
    canonical_rep_words,
    f27_numbering,
    standard_generators,
)


# ---------------------------------------------------------------------------
# incidence fingerprints


def s_distribution(K: Complex, codim: int = 2) -> dict[int, int]:
    """Histogram of facet-incidence counts over the faces obtained by
    dropping `codim` vertices from a facet.

    For a pure complex whose facets have d+1 vertices, the default
    codim=2 counts, for every (d-2)-dimensional face rho, the number
    s(rho) of facets containing rho, and returns {s: how many rho}.
    """
    if not K.is_pure:
        raise DomainError("incidence histogram requires a pure complex")
    if not K.facet_words:
        return {}
    _, counts = subface_multiplicities(K, codim)
    values, mult = np.unique(counts, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, mult)}


@dataclass(frozen=True)
class NpqMatrix:
    """Counts N[p][q] of codimension-1 faces tau over a fixed edge
    {a, b}, classified by the pair (s(tau - a), s(tau - b))."""

    a: int
    b: int
    smin: int
    smax: int
    counts: np.ndarray

    def count(self, p: int, q: int) -> int:
        if not (self.smin <= p <= self.smax and self.smin <= q <= self.smax):
            return 0
        return int(self.counts[p - self.smin, q - self.smin])

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.counts, self.counts.T))

    def rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.counts]

    def render(self) -> str:
        labels = list(range(self.smin, self.smax + 1))
        cells = [[""] + [str(q) for q in labels]]
        for p, row in zip(labels, self.counts):
            cells.append([str(p)] + [str(int(x)) for x in row])
        widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
        return "\n".join(
            "  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NpqMatrix)
            and (self.a, self.b, self.smin, self.smax)
            == (other.a, other.b, other.smin, other.smax)
            and np.array_equal(self.counts, other.counts)
        )


def edge_matrix_Npq(K: Complex, a: int, b: int) -> NpqMatrix:
    """Incidence-pair matrix of the edge {a, b}.

    Every face tau with one vertex fewer than a facet and {a, b} <= tau
    yields the ordered pair (s(tau - a), s(tau - b)), where s counts the
    facets over the given face; entry (p, q) of the result is the number
    of such tau with pair (p, q).  An asymmetric matrix rules out any
    symmetry of K exchanging a and b.
    """
    if not K.is_pure:
        raise DomainError("edge matrix requires a pure complex")
    ew = as_word((a, b))
    if a == b or not any(w & ew == ew for w in K.facet_words):
        raise DomainError(f"{{{a}, {b}}} is not an edge of the complex")
    taus, _ = subface_multiplicities(K, 1)
    taus = taus[(taus & ew) == ew]
    rhos, s_of = subface_multiplicities(K, 2)
    ia = np.searchsorted(rhos, taus ^ (1 << (a - 1)))
    ib = np.searchsorted(rhos, taus ^ (1 << (b - 1)))
    p = s_of[ia]
    q = s_of[ib]
    smin = int(min(p.min(), q.min()))
    smax = int(max(p.max(), q.max()))
    width = smax - smin + 1
    counts = np.zeros((width, width), dtype=np.int64)
    np.add.at(counts, (p - smin, q - smin), 1)
    return NpqMatrix(a=a, b=b, smin=smin, smax=smax, counts=counts)


# ---------------------------------------------------------------------------
# the residue tournament


@dataclass(frozen=True)
class Tournament:
    """Complete oriented graph on the 27 field labels: an edge runs
    a -> b exactly when b - a is a nonzero square, so each unordered
    pair carries one direction and every out-set has 13 members."""

    m: int
    out_words: tuple[int, ...]

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.out_words[a - 1] >> (b - 1) & 1)

    def out_set(self, a: int) -> tuple[int, ...]:
        w = self.out_words[a - 1]
        return tuple(v + 1 for v in range(self.m) if w >> v & 1)

    def in_set(self, a: int) -> tuple[int, ...]:
        return tuple(
            b for b in range(1, self.m + 1) if b != a and not self.has_edge(a, b)
        )

    def reverse(self) -> "Tournament":
        rev = [0] * self.m
        for a in range(self.m):
            for b in range(self.m):
                if a != b and not (self.out_words[a] >> b & 1):
                    rev[a] |= 1 << b
        return Tournament(self.m, tuple(rev))


def build_tournament() -> Tournament:
    nb = f27_numbering()
    squares = set(nb.alpha_powers)
    elem = [nb.element(v) for v in range(1, 28)]
    out = []
    for a in range(27):
        w = 0
        for b in range(27):
            if b != a and _f27_add(elem[b], _f27_neg(elem[a])) in squares:
                w |= 1 << b
        out.append(w)
    t = Tournament(27, tuple(out))
    if any(w.bit_count() != 13 for w in t.out_words):
        raise AssertionError("tournament out-degrees are not all 13")
    return t


def _extend_edge_seed(
    out_words: tuple[int, ...], x: int, y: int, reverse: bool
) -> list[Permutation]:
    """All bijections of the vertex labels taking the base edge 27 -> 1
    to (x, y) and preserving (or, with reverse, flipping) every edge
    direction.  Plain backtracking: each next vertex is constrained
    against all previously placed ones, which in a tournament fixes the
    search almost immediately."""
    m = len(out_words)

    def edge(a: int, b: int) -> bool:
        return bool(out_words[a - 1] >> (b - 1) & 1)

    def target(a: int, b: int) -> bool:
        return edge(b, a) if reverse else edge(a, b)

    order = [27, 1] + [v for v in range(1, m + 1) if v not in (27, 1)]
    images = {27: x, 1: y}
    used = {x, y}
    found: list[Permutation] = []

    def descend(depth: int) -> None:
        if depth == m:
            out = [0] * m
            for v, u in images.items():
                out[v - 1] = u
            found.append(Permutation(tuple(out)))
            return
        v = order[depth]
        for u in range(1, m + 1):
            if u in used:
                continue
            if any(edge(v, w) != target(u, images[w]) for w in images):
                continue
            images[v] = u
            used.add(u)
            descend(depth + 1)
            used.remove(u)
            del images[v]

    descend(2)
    return found


def tournament_automorphisms(allow_reversal: bool = False) -> PermGroup:
    """The symmetry group of the residue tournament; with reversal
    allowed, maps flipping all directions at once also count.

    Seeds are the images of the directed edge 27 -> 1 (label 27 is the
    zero element): 351 choices per orientation class, each extended by
    backtracking.
    """
    t = build_tournament()
    found: list[Permutation] = []
    modes = [False, True] if allow_reversal else [False]
    for reverse in modes:
        for x in range(1, 28):
            w = t.out_words[x - 1]
            for y in t.out_set(x) if not reverse else t.in_set(x):
                found.extend(_extend_edge_seed(t.out_words, x, y, reverse))
    elements = sorted(found, key=lambda p: p.images)
    gens = standard_generators()
    gen_list = [gens["A"], gens["B"], gens["F"]]
    if allow_reversal:
        gen_list.append(gens["S"])
    group = PermGroup._from_closure(elements, gen_list, 27)
    if len(group._element_set) != len(elements):
        raise AssertionError("duplicate automorphisms in the edge-seed scan")
    return group


# ---------------------------------------------------------------------------
# symmetry groups and isomorphisms


def _vertex_profiles(K: Complex) -> list[tuple]:
    """Per-vertex invariant: facet degree, the histogram of s-values
    over codimension-2 faces through the vertex, and one refinement
    round over pairwise co-degrees."""
    words = K.words_array
    m = K.m
    bits = ((words[:, None] >> np.arange(m, dtype=np.int64)) & 1).astype(np.int64)
    codeg = bits.T @ bits
    base: list[tuple] = []
    if K.facet_words and K.facet_words[0].bit_count() >= 2:
        rhos, s_of = subface_multiplicities(K, 2)
        for v in range(m):
            sel = s_of[(rhos >> v) & 1 == 1]
            values, mult = np.unique(sel, return_counts=True)
            base.append(
                (int(codeg[v, v]), tuple(zip(values.tolist(), mult.tolist())))
            )
    else:
        base = [(int(codeg[v, v]), ()) for v in range(m)]
    ids = {p: i for i, p in enumerate(sorted(set(base)))}
    refined = []
    for v in range(m):
        around = sorted(
            (ids[base[u]], int(codeg[v, u])) for u in range(m) if u != v
        )
        refined.append((base[v], tuple(around)))
    return refined


def _isomorphisms(
    Ka: Complex, Kb: Complex, *, all_maps: bool, cap: Optional[int] = None
) -> list[Permutation]:
    """Backtracking vertex matcher.

    Candidates are filtered by the refined vertex profiles, then each
    placement is checked against all earlier ones through pairwise and
    triple facet co-degrees; a completed map is accepted only if it
    carries the facet set exactly onto the target's.
    """
    if Ka.m != Kb.m or Ka.n_facets != Kb.n_facets or Ka.dim != Kb.dim:
        return []
    m = Ka.m
    pa = _vertex_profiles(Ka)
    pb = _vertex_profiles(Kb)
    if sorted(pa) != sorted(pb):
        return []
    wa = Ka.words_array
    wb = Kb.words_array
    sorted_b = np.sort(wb)
    # rarest profile classes first: fewer candidate images per vertex
    class_size = {p: pb.count(p) for p in set(pb)}
    order = sorted(range(m), key=lambda v: (class_size[pa[v]], v))
    images = [0] * m
    placed: list[int] = []
    used = [False] * m

    def codeg_of(words: np.ndarray, subset: int) -> int:
        return int(np.count_nonzero((words & subset) == subset))

    found: list[Permutation] = []

    def descend(depth: int) -> bool:
        if depth == m:
            mapped = apply_to_words(
                Permutation(tuple(images)), wa
            )
            if np.array_equal(np.sort(mapped), sorted_b):
                found.append(Permutation(tuple(images)))
                return not all_maps and (cap is None or len(found) >= cap)
            return False
        v = order[depth]
        bv = 1 << v
        for u in range(m):
            if used[u] or pb[u] != pa[v]:
                continue
            bu = 1 << u
            ok = True
            for w in placed:
                qa = bv | (1 << w)
                qb = bu | (1 << (images[w] - 1))
                if codeg_of(wa, qa) != codeg_of(wb, qb):
                    ok = False
                    break
            if ok and depth >= 2:
                for i in range(len(placed)):
                    for j in range(i + 1, len(placed)):
                        qa = bv | (1 << placed[i]) | (1 << placed[j])
                        qb = (
                            bu
                            | (1 << (images[placed[i]] - 1))
                            | (1 << (images[placed[j]] - 1))
                        )
                        if codeg_of(wa, qa) != codeg_of(wb, qb):
                            ok = False
                            break
                    if not ok:
                        break
            if not ok:
                continue
            images[v] = u + 1
            used[u] = True
            placed.append(v)
            stop = descend(depth + 1)
            placed.pop()
            used[u] = False
            images[v] = 0
            if stop:
                return True
        return False

    descend(0)
    return found


def find_isomorphism(Ka: Complex, Kb: Complex) -> Optional[Permutation]:
    """A vertex bijection carrying Ka's facet set onto Kb's, or None."""
    maps = _isomorphisms(Ka, Kb, all_maps=False, cap=1)
    return maps[0] if maps else None


def _pick_generators(elements: list[Permutation], m: int) -> list[Permutation]:
    ident = tuple(range(1, m + 1))
    gens: list[Permutation] = []
    closed = {ident}
    for p in elements:
        if p.images in closed:
            continue
        gens.append(p)
        closed = _mulclose(m, [g.images for g in gens])
        if len(closed) == len(elements):
            break
    return gens


def symmetry_group(K: Complex, supergroup: PermGroup | None = None) -> PermGroup:
    """All vertex permutations carrying the facet set onto itself.

    With a supergroup, its elements are filtered directly, which is
    exact whenever every symmetry lies inside it (for the 27-vertex
    family the edge matrices force this containment).  Without one, the
    generic matcher searches all of S_m pruned by vertex profiles, which
    is meant for the small classical complexes.
    """
    words = K.words_array
    if supergroup is not None:
        if supergroup.m != K.m:
            raise DomainError("supergroup acts on a different vertex universe")
        sorted_words = np.sort(words)
        sample = words[: min(32, len(words))]
        kept = []
        for g in supergroup.elements:
            probe = apply_to_words(g, sample)
            pos = np.searchsorted(sorted_words, probe)
            pos[pos == len(sorted_words)] = 0
            if not np.array_equal(sorted_words[pos], probe):
                continue
            if np.array_equal(np.sort(apply_to_words(g, words)), sorted_words):
                kept.append(g)
        elements = sorted(kept, key=lambda p: p.images)
    else:
        elements = sorted(
            _isomorphisms(K, K, all_maps=True), key=lambda p: p.images
        )
    return PermGroup._from_closure(
        elements, _pick_generators(elements, K.m), K.m
    )


# ---------------------------------------------------------------------------
# fixed-point complexes


@dataclass(frozen=True)
class FixedPointComplex:
    """Abstract fixed-point complex together with its vertex dictionary:
    vertex j+1 stands for the orbit with vertex set orbit_sets[j]."""

    complex: Complex
    orbit_sets: tuple[tuple[int, ...], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.orbit_sets)


def _orbit_partition(H: PermGroup, m: int) -> list[tuple[int, ...]]:
    parent = list(range(m + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in H.generators or H.elements:
        for v in range(1, m + 1):
            a, b = find(v), find(g(v))
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(1, m + 1):
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(sorted(vs)) for vs in groups.values()), key=min)


def fixed_point_complex(K: Complex, H: PermGroup) -> FixedPointComplex:
    """The subcomplex fixed pointwise by H, on barycentre vertices.

    Vertices are the H-orbits on [m] that are simplices of K; a set of
    orbit vertices spans a simplex exactly when the union of the orbits
    is a simplex of K.  Facets are collected facet-by-facet: the orbits
    inside a facet of K always span, and every fixed simplex arises
    that way.
    """
    if H.m != K.m:
        raise DomainError("group acts on a different vertex universe")
    words = K.words_array
    sorted_words = np.sort(words)
    for g in H.generators or ():
        if not np.array_equal(np.sort(apply_to_words(g, words)), sorted_words):
            raise DomainError("group does not preserve the complex")
    orbits = _orbit_partition(H, K.m)
    orbit_words = [as_word(o) for o in orbits]
    simplex_orbits = [
        (o, ow)
        for o, ow in zip(orbits, orbit_words)
        if np.any((words & ow) == ow)
    ]
    if not simplex_orbits:
        return FixedPointComplex(Complex([], 0), ())
    n = len(simplex_orbits)
    upper = np.zeros(len(words), dtype=np.int64)
    for j, (_, ow) in enumerate(simplex_orbits):
        upper |= ((words & ow) == ow).astype(np.int64) << j
    fixed = Complex.maximal([int(u) for u in upper if u], n)
    return FixedPointComplex(fixed, tuple(o for o, _ in simplex_orbits))


# ---------------------------------------------------------------------------
# orbit intersections


def orbit_intersection_counts(Ka: Complex, Kb: Complex, G: PermGroup) -> int:
    """Number of G-orbits of facets the two complexes share, computed on
    canonical orbit representatives (inputs may be representative lists
    or fully expanded complexes)."""
    ca = np.unique(canonical_rep_words(G, Ka.words_array))
    cb = np.unique(canonical_rep_words(G, Kb.words_array))
    return int(len(np.intersect1d(ca, cb, assume_unique=True)))


def shared_orbit_complex(Ka: Complex, Kb: Complex, G: PermGroup) -> Complex:
    """Representatives (canonical words) of the facet orbits common to
    both complexes, as a pure complex ready for expansion."""
    if Ka.m != Kb.m:
        raise DomainError("complexes live on different vertex universes")
    ca = np.unique(canonical_rep_words(G, Ka.words_array))
    cb = np.unique(canonical_rep_words(G, Kb.words_array))
    return Complex([int(w) for w in np.intersect1d(ca, cb)], Ka.m)
