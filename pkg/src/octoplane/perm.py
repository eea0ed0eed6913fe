"""Permutations of [m], small groups by full enumeration, and the
concrete 27-point groups built from the field with 27 elements.

The field numbering sends the 13 powers of a root of x^3 = x + 1 to
1..13, their negatives to 14..26, and zero to 27; the affine maps
x -> ax + b with square a then generate the 351-element group used for
the orbit search.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from ._bitset import vertices_of
from ._kernels import shared
from .core import Complex, SimplexLike, VertexSet, as_word


@dataclass(frozen=True)
class Permutation:
    """Bijection of [m]; images[i] is the image of vertex i+1."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("images do not form a bijection of [m]")

    @property
    def m(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_cycles(cls, text: str, m: int) -> "Permutation":
        images = list(range(1, m + 1))
        for cyc in re.findall(r"\(([^()]*)\)", text):
            labels = [int(x) for x in cyc.replace(",", " ").split()]
            for a, b in zip(labels, labels[1:] + labels[:1]):
                images[a - 1] = b
        p = cls(tuple(images))
        return p

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """(g * h)(x) = g(h(x))."""
        return Permutation(tuple(self.images[i - 1] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Permutation(tuple(inv))

    def apply_word(self, word: int) -> int:
        out = 0
        for v in vertices_of(word):
            out |= 1 << (self.images[v - 1] - 1)
        return out

    def apply(self, s: SimplexLike, m: int | None = None) -> VertexSet:
        return VertexSet(self.apply_word(as_word(s)), m or self.m)

    def order(self) -> int:
        n, g = 1, self
        ident = Permutation.identity(self.m)
        while g != ident:
            g = g * self
            n += 1
        return n

    def cycles(self) -> str:
        seen, parts = set(), []
        for start in range(1, self.m + 1):
            if start in seen or self.images[start - 1] == start:
                continue
            cyc, v = [], start
            while v not in seen:
                seen.add(v)
                cyc.append(v)
                v = self.images[v - 1]
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Permutation[{self.cycles()}]"


def _mulclose(m: int, generators: Sequence[tuple[int, ...]]) -> set[tuple[int, ...]]:
    ident = tuple(range(1, m + 1))
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in generators:
                prod = tuple(g[i - 1] for i in e)
                if prod not in elements:
                    elements.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return elements


class PermGroup:
    """Finite permutation group on [m] with full element enumeration,
    listed in lexicographic order of the image arrays."""

    def __init__(self, generators: Sequence[Permutation], m: int | None = None):
        generators = list(generators)
        if m is None:
            if not generators:
                raise ValueError("empty generator list needs an explicit m")
            m = generators[0].m
        if any(g.m != m for g in generators):
            raise ValueError("generators act on different universes")
        self.m = m
        self.generators = tuple(generators)
        element_tuples = sorted(_mulclose(m, [g.images for g in generators]))
        self.elements = tuple(Permutation(t) for t in element_tuples)
        self._element_set = frozenset(element_tuples)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g.images in self._element_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PermGroup)
            and self.m == other.m
            and self._element_set == other._element_set
        )

    def __hash__(self) -> int:
        return hash((self.m, self._element_set))

    def __repr__(self) -> str:
        return f"PermGroup(m={self.m}, order={self.order})"

    @cached_property
    def word_tables(self) -> np.ndarray:
        return shared.group_word_tables([g.images for g in self.elements], self.m)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self._element_set <= other._element_set

    def conjugate(self, g: Permutation) -> "PermGroup":
        gi = g.inverse()
        return PermGroup([g * h * gi for h in self.generators] or [], self.m)

    @classmethod
    def _from_closure(
        cls,
        elements: Sequence[Permutation],
        generators: Sequence[Permutation],
        m: int,
    ) -> "PermGroup":
        """Wrap an already-closed, lex-sorted element list without redoing
        the closure."""
        obj = cls.__new__(cls)
        obj.m = m
        obj.generators = tuple(generators)
        obj.elements = tuple(elements)
        obj._element_set = frozenset(p.images for p in elements)
        return obj


def trivial_group(m: int) -> PermGroup:
    return PermGroup([], m)


# --- the 27-element field and the printed generators -------------------

_F27_MOD = 3


def _f27_add(a: int, b: int) -> int:
    out, mult = 0, 1
    for _ in range(3):
        out += ((a % 3 + b % 3) % 3) * mult
        a //= 3
        b //= 3
        mult *= 3
    return out


def _f27_neg(a: int) -> int:
    out, mult = 0, 1
    for _ in range(3):
        out += ((3 - a % 3) % 3) * mult
        a //= 3
        mult *= 3
    return out


def _f27_mul(a: int, b: int) -> int:
    da = [a % 3, a // 3 % 3, a // 9]
    db = [b % 3, b // 3 % 3, b // 9]
    conv = [0] * 5
    for i in range(3):
        for j in range(3):
            conv[i + j] += da[i] * db[j]
    # reduce with x^3 = x + 1
    for i in (4, 3):
        conv[i - 3] += conv[i]
        conv[i - 2] += conv[i]
        conv[i] = 0
    return conv[0] % 3 + 3 * (conv[1] % 3) + 9 * (conv[2] % 3)


@dataclass(frozen=True)
class F27Numbering:
    """Vertex numbering of the 27-element field: the 13 powers of the
    root alpha of x^3 = x + 1 get labels 1..13, their negatives 14..26,
    zero gets 27."""

    phi: tuple[int, ...]  # phi[element-code] = vertex label
    alpha_powers: tuple[int, ...]  # element codes of alpha^0..alpha^12

    @classmethod
    def build(cls) -> "F27Numbering":
        alpha = 3  # the polynomial x
        powers = [1]
        for _ in range(12):
            powers.append(_f27_mul(powers[-1], alpha))
        if _f27_mul(powers[-1], alpha) != 1:
            raise AssertionError("alpha does not have order 13")
        phi = [0] * 27
        for k, e in enumerate(powers):
            phi[e] = k + 1
            phi[_f27_neg(e)] = k + 14
        phi[0] = 27
        return cls(tuple(phi), tuple(powers))

    def label(self, element: int) -> int:
        return self.phi[element]

    def element(self, label: int) -> int:
        return self.phi.index(label)

    def field_map_to_permutation(self, fn: Callable[[int], int]) -> Permutation:
        images = [0] * 27
        for e in range(27):
            images[self.phi[e] - 1] = self.phi[fn(e)]
        return Permutation(tuple(images))


_NUMBERING: F27Numbering | None = None


def f27_numbering() -> F27Numbering:
    global _NUMBERING
    if _NUMBERING is None:
        _NUMBERING = F27Numbering.build()
    return _NUMBERING


def standard_generators() -> dict[str, Permutation]:
    """The four printed permutations: A multiplies by alpha, B adds one,
    S negates, F cubes (the field Frobenius)."""
    nb = f27_numbering()
    alpha = nb.alpha_powers[1]
    return {
        "A": nb.field_map_to_permutation(lambda x: _f27_mul(x, alpha)),
        "B": nb.field_map_to_permutation(lambda x: _f27_add(x, 1)),
        "S": nb.field_map_to_permutation(_f27_neg),
        "F": nb.field_map_to_permutation(lambda x: _f27_mul(x, _f27_mul(x, x))),
    }


def build_G351() -> PermGroup:
    gens = standard_generators()
    G = PermGroup([gens["A"], gens["B"]])
    if G.order != 351:
        raise AssertionError(f"expected order 351, got {G.order}")
    return G


def build_normalizer_2106() -> PermGroup:
    gens = standard_generators()
    G = PermGroup([gens["A"], gens["B"], gens["S"], gens["F"]])
    if G.order != 2106:
        raise AssertionError(f"expected order 2106, got {G.order}")
    return G


def a5_s15() -> PermGroup:
    """SL(2, F4) acting on the 15 nonzero vectors of F4^2; vector (a, b)
    has label 4a + b."""
    mul = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]

    def perm_of(matrix):
        images = [0] * 15
        for a in range(4):
            for b in range(4):
                if a == 0 and b == 0:
                    continue
                na = mul[matrix[0][0]][a] ^ mul[matrix[0][1]][b]
                nb = mul[matrix[1][0]][a] ^ mul[matrix[1][1]][b]
                images[4 * a + b - 1] = 4 * na + nb
        return Permutation(tuple(images))

    G = PermGroup(
        [
            perm_of([[1, 1], [0, 1]]),
            perm_of([[2, 0], [0, 3]]),
            perm_of([[0, 1], [1, 0]]),
        ]
    )
    if G.order != 60:
        raise AssertionError(f"expected order 60, got {G.order}")
    return G


# --- orbits and canonical representatives ------------------------------

def apply_to_words(g: Permutation, words: np.ndarray) -> np.ndarray:
    table = shared.perm_word_table(g.images)
    return shared.apply_table(table, np.asarray(words, dtype=np.int64))


def canonical_rep(G: PermGroup, s: SimplexLike) -> VertexSet:
    w = np.array([as_word(s)], dtype=np.int64)
    return VertexSet(int(_kernels.canonical_reps(G.word_tables, w)[0]), G.m)


def canonical_rep_words(G: PermGroup, words: np.ndarray) -> np.ndarray:
    return _kernels.canonical_reps(G.word_tables, np.asarray(words, dtype=np.int64))


@dataclass(frozen=True)
class OrbitScan:
    """Orbit decomposition of all k-subsets of [m].

    reps and sizes are indexed by orbit (ascending smallest member);
    orbit_by_rank maps the colexicographic rank of any k-subset word to
    its orbit index.
    """

    m: int
    k: int
    reps: np.ndarray
    sizes: np.ndarray
    orbit_by_rank: np.ndarray

    @property
    def n_orbits(self) -> int:
        return len(self.reps)


def orbit_scan(G: PermGroup, k: int) -> OrbitScan:
    words = shared.all_k_subsets(G.m, k)
    creps = canonical_rep_words(G, words)
    reps = words[creps == words]
    ids = np.searchsorted(reps, creps).astype(np.int32)
    sizes = np.bincount(ids, minlength=len(reps)).astype(np.int64)
    return OrbitScan(G.m, k, reps, sizes, ids)


def orbit_reps_k_subsets(G: PermGroup, k: int) -> list[tuple[VertexSet, int]]:
    scan = orbit_scan(G, k)
    return [
        (VertexSet(int(w), G.m), int(s)) for w, s in zip(scan.reps, scan.sizes)
    ]


def expand_orbit_word(G: PermGroup, word: int) -> np.ndarray:
    out = np.zeros(G.order, dtype=np.int64)
    for c in range(G.word_tables.shape[1]):
        out |= G.word_tables[:, c, (word >> (7 * c)) & 127]
    return np.unique(out)


def expand_orbits(G: PermGroup, reps: Complex) -> Complex:
    words = reps.words_array
    if not len(words):
        return Complex([], reps.m)
    images = np.empty((G.order, len(words)), dtype=np.int64)
    for i in range(G.order):
        images[i] = shared.apply_table(G.word_tables[i], words)
    return Complex(np.unique(images).tolist(), reps.m)


def transform_complex(K: Complex, g: Permutation) -> Complex:
    return Complex(apply_to_words(g, K.words_array).tolist(), K.m)


def is_invariant(K: Complex, g: Permutation) -> bool:
    imgs = apply_to_words(g, K.words_array)
    imgs.sort()
    return bool(np.array_equal(imgs, K.words_array))


def stabilizer_subgroup(
    G: PermGroup, pred: Callable[[Permutation], bool]
) -> PermGroup:
    kept = [g for g in G.elements if pred(g)]
    H = PermGroup(kept, G.m)
    if H.order != len(kept):
        raise ValueError("predicate does not define a subgroup")
    return H


# --- subgroup enumeration ---------------------------------------------

class GroupTable:
    """Integer multiplication table of an enumerated group.

    ``rows[i][j]`` is the index (into the lexicographic element order)
    of ``elements[i] * elements[j]``; row i is therefore the
    left-translation permutation by element i.  Built by index gathers:
    the row of a product g*e is the row of g composed with the row of e.
    """

    def __init__(self, G: PermGroup):
        elems = [g.images for g in G.elements]
        n = len(elems)
        index = {t: i for i, t in enumerate(elems)}
        self.n = n
        self.e_idx = index[tuple(range(1, G.m + 1))]
        L = np.empty((n, n), dtype=np.int32)
        L[self.e_idx] = np.arange(n)
        gen_idx = sorted({index[g.images] for g in G.generators})
        for gi in gen_idx:
            gt = elems[gi]
            L[gi] = [index[tuple(gt[i - 1] for i in t)] for t in elems]
        done = {self.e_idx, *gen_idx}
        frontier = [self.e_idx, *gen_idx]
        while frontier:
            nxt = []
            for e in frontier:
                for gi in gen_idx:
                    p = int(L[gi, e])
                    if p not in done:
                        L[p] = L[gi][L[e]]
                        done.add(p)
                        nxt.append(p)
            frontier = nxt
        if len(done) != n:
            raise AssertionError("left-translation table is incomplete")
        self.rows: list[list[int]] = L.tolist()
        self.inv: list[int] = [int(x) for x in np.argmax(L == self.e_idx, axis=1)]


def _mask_bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _close_mask(tab: GroupTable, gens: Sequence[int]) -> int:
    """Element-index mask of the subgroup generated by the given indices."""
    mask = 1 << tab.e_idx
    frontier = [tab.e_idx]
    for g in gens:
        if not (mask >> g) & 1:
            mask |= 1 << g
            frontier.append(g)
    grows = [tab.rows[g] for g in gens]
    while frontier:
        nxt = []
        for e in frontier:
            for row in grows:
                p = row[e]
                if not (mask >> p) & 1:
                    mask |= 1 << p
                    nxt.append(p)
        frontier = nxt
    return mask


def _subgroup_masks(tab: GroupTable) -> dict[int, tuple[int, ...]]:
    """All subgroup masks, each with a small generating index tuple;
    grows cyclic subgroups by pairwise joins to a fixpoint."""
    cyclics: dict[int, int] = {}
    for i in range(tab.n):
        if i == tab.e_idx:
            continue
        row = tab.rows[i]
        mask = 1 << tab.e_idx
        j = i
        while j != tab.e_idx:
            mask |= 1 << j
            j = row[j]
        cyclics.setdefault(mask, i)
    gen_of: dict[int, tuple[int, ...]] = {1 << tab.e_idx: ()}
    for mask, gi in cyclics.items():
        gen_of.setdefault(mask, (gi,))
    frontier = list(gen_of)
    while frontier:
        nxt = []
        for hm in frontier:
            hgens = gen_of[hm]
            for cm, gi in cyclics.items():
                if cm & ~hm == 0:
                    continue
                closed = _close_mask(tab, hgens + (gi,))
                if closed not in gen_of:
                    gen_of[closed] = hgens + (gi,)
                    nxt.append(closed)
        frontier = nxt
    return gen_of


def _structure_label(H: PermGroup) -> str:
    n = H.order
    if n == 1:
        return "1"
    if n == 3:
        return "C3"
    if n == 13:
        return "C13"
    if n == 351:
        return "G351"
    orders = sorted({g.order() for g in H.elements if g.order() > 1})
    if n == 9 and orders == [3]:
        return "C3^2"
    if n == 27 and orders == [3]:
        return "C3^3"
    return f"order{n}"


@dataclass(frozen=True)
class SubgroupClass:
    label: str
    rep: PermGroup
    class_size: int
    normalizer_order: int


@dataclass(frozen=True)
class SubgroupLattice:
    """Every subgroup of a group plus its conjugacy classes, with the
    subgroups indexed consistently across the fields."""

    group: PermGroup
    table: GroupTable
    masks: tuple[int, ...]
    groups: tuple[PermGroup, ...]
    classes: tuple[SubgroupClass, ...]
    class_rep: tuple[int, ...]
    class_of: tuple[int, ...]


_LATTICE_CACHE: dict = {}


def subgroup_lattice(G: PermGroup) -> SubgroupLattice:
    key = (G.m, G._element_set)
    lat = _LATTICE_CACHE.get(key)
    if lat is None:
        lat = _build_lattice(G)
        _LATTICE_CACHE[key] = lat
    return lat


def group_table(G: PermGroup) -> GroupTable:
    return subgroup_lattice(G).table


def _build_lattice(G: PermGroup) -> SubgroupLattice:
    tab = GroupTable(G)
    gen_of = _subgroup_masks(tab)
    masks = sorted(gen_of, key=lambda m_: (m_.bit_count(), _mask_bits(m_)))
    pos = {m_: i for i, m_ in enumerate(masks)}
    groups = []
    for m_ in masks:
        elems = [G.elements[i] for i in _mask_bits(m_)]
        gens = [G.elements[i] for i in gen_of[m_]]
        groups.append(PermGroup._from_closure(elems, gens, G.m))
    full = (1 << tab.n) - 1
    rows, inv = tab.rows, tab.inv
    class_of = [-1] * len(masks)
    classes: list[SubgroupClass] = []
    class_rep: list[int] = []
    for i, m_ in enumerate(masks):
        if class_of[i] >= 0:
            continue
        if m_ == full or m_.bit_count() == 1:
            orbit = {m_}
        else:
            bits = _mask_bits(m_)
            orbit = set()
            for g in range(tab.n):
                rg, gi = rows[g], inv[g]
                conj = 0
                for s in bits:
                    conj |= 1 << rg[rows[s][gi]]
                orbit.add(conj)
        cid = len(classes)
        for om in orbit:
            class_of[pos[om]] = cid
        H = groups[i]
        classes.append(
            SubgroupClass(
                label=_structure_label(H),
                rep=H,
                class_size=len(orbit),
                normalizer_order=G.order // len(orbit),
            )
        )
        class_rep.append(i)
    return SubgroupLattice(
        group=G,
        table=tab,
        masks=tuple(masks),
        groups=tuple(groups),
        classes=tuple(classes),
        class_rep=tuple(class_rep),
        class_of=tuple(class_of),
    )


def all_subgroups(G: PermGroup) -> list[PermGroup]:
    """Every subgroup of G; feasible for the small enumerated groups
    used here."""
    return list(subgroup_lattice(G).groups)


def conjugacy_classes_of_subgroups(G: PermGroup) -> list[SubgroupClass]:
    return list(subgroup_lattice(G).classes)


def subgroups_g351(G: PermGroup | None = None) -> list[SubgroupClass]:
    return conjugacy_classes_of_subgroups(G or build_G351())
