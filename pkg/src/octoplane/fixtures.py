"""Reference complexes.

The four 27-vertex 16-manifolds are stored as their 286 orbit
representatives, grouped into blocks by which of the four complexes
share each block; the small projective-plane triangulations are built
in code or shipped as .dat files.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ._bitset import row_to_word
from .core import Complex, parse_complex, serialize
from .perm import PermGroup, build_G351, expand_orbits

# block key -> which complexes use it; counts fixed by the data layout
BLOCK_COUNTS = {
    "1234": 112,
    "123": 89,
    "12": 23,
    "1": 62,
    "234": 37,
    "23": 21,
    "2": 4,
    "34": 22,
    "3": 5,
    "4": 115,
}

_COMPOSITION = {
    1: ("1234", "123", "12", "1"),
    2: ("1234", "123", "12", "234", "23", "2"),
    3: ("1234", "123", "234", "23", "34", "3"),
    4: ("1234", "234", "34", "4"),
}


def _data_text(name: str) -> str:
    return (resources.files(__package__) / "data" / name).read_text()


@lru_cache(maxsize=1)
def orbit_blocks() -> dict[str, list[str]]:
    blocks = json.loads(_data_text("orbit_blocks.json"))
    for key, expected in BLOCK_COUNTS.items():
        rows = blocks[key]
        if len(rows) != expected:
            raise AssertionError(f"block {key}: {len(rows)} rows, expected {expected}")
        for row in rows:
            if len(row) != 27 or row.count("1") != 17 or set(row) - {"0", "1"}:
                raise AssertionError(f"block {key}: malformed row {row!r}")
    return blocks


@lru_cache(maxsize=None)
def k_reps(i: int) -> Complex:
    """The 286 facet-orbit representatives of K_i as a pure complex."""
    if i not in _COMPOSITION:
        raise ValueError("complex index must be 1, 2, 3, or 4")
    blocks = orbit_blocks()
    rows = [row for key in _COMPOSITION[i] for row in blocks[key]]
    if len(rows) != 286:
        raise AssertionError(f"K_{i}: {len(rows)} representatives, expected 286")
    K = Complex.from_facets([row_to_word(row) for row in rows], 27)
    if K.n_facets != 286:
        raise AssertionError(f"K_{i}: duplicate representatives")
    return K


@lru_cache(maxsize=None)
def complex_K(i: int, G: PermGroup | None = None) -> Complex:
    """K_i in full: the 286 representative orbits expanded under the
    351-element group to 100386 facets."""
    K = expand_orbits(G or build_G351(), k_reps(i))
    if K.n_facets != 100386:
        raise AssertionError(f"K_{i}: expanded to {K.n_facets} facets")
    return K


_RP2_6_FACETS = [
    (1, 2, 3),
    (1, 2, 4),
    (1, 3, 5),
    (1, 4, 6),
    (1, 5, 6),
    (2, 3, 6),
    (2, 4, 5),
    (2, 5, 6),
    (3, 4, 5),
    (3, 4, 6),
]


def rp2_6() -> Complex:
    """The 6-vertex real projective plane (antipodal icosahedron
    quotient)."""
    return Complex.from_facets(_RP2_6_FACETS, 6)


def _ag23_lines() -> dict[tuple, tuple[int, ...]]:
    """Lines of the affine plane over F_3, keyed by (slope, offset);
    slope 3 stands for vertical. Point (x, y) has label 1 + x + 3y."""
    lines = {}
    for c in range(3):
        lines[(3, c)] = tuple(1 + c + 3 * y for y in range(3))
        for s in range(3):
            lines[(s, c)] = tuple(1 + x + 3 * ((s * x + c) % 3) for x in range(3))
    return lines


def cp2_9() -> Complex:
    """The 9-vertex complex projective plane, assembled from the affine
    plane over F_3 with the horizontal lines y = i special."""
    lines = _ag23_lines()
    special = {i: set(lines[(0, i)]) for i in range(3)}
    nonspecial = [set(v) for (s, _), v in lines.items() if s != 0]
    facets = []
    for a in range(len(nonspecial)):
        for b in range(a + 1, len(nonspecial)):
            u = nonspecial[a] | nonspecial[b]
            if len(u) == 5:
                facets.append(tuple(sorted(u)))
    for i in range(3):
        for w in special[i]:
            u = (special[i] | special[(i + 1) % 3]) - {w}
            facets.append(tuple(sorted(u)))
    if len(facets) != 36:
        raise AssertionError(f"affine-plane assembly gave {len(facets)} facets")
    return Complex.from_facets(facets, 9)


@lru_cache(maxsize=1)
def hp2_15() -> Complex:
    """The 15-vertex quaternionic-plane-like 8-manifold, frozen from the
    orbit search output."""
    return parse_complex(_data_text("hp2_15.dat"), m=15)


def export_all(outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for i in range(1, 5):
        p = outdir / f"k{i}_reps.dat"
        p.write_text(serialize(k_reps(i)))
        written.append(p)
    for name, K in [
        ("rp2_6.dat", rp2_6()),
        ("cp2_9.dat", cp2_9()),
        ("hp2_15.dat", hp2_15()),
    ]:
        p = outdir / name
        p.write_text(serialize(K))
        written.append(p)
    return written
