"""Command-line entry point.

Subcommands: search, verify, flips, analyze, fixtures.  Exit codes:
0 success, 1 a check ran but failed or was inconclusive, 2 usage error,
3 unreadable or corrupt data.  All output is deterministic for a fixed
invocation (timing fields in run reports excepted); worker counts never
change results.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .core import Complex, DomainError, ParseError, parse_complex, serialize

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2
EXIT_DATA = 3

NAMED_GROUPS = ("trivial", "c3", "c13", "g351", "n2106", "a5")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


def resolve_group(spec: str, m: int | None = None):
    """Build the group named by spec.

    Named groups: trivial (needs a universe size from context), c3 and
    c13 (the standard order-3 and order-13 cyclic subgroups on 27
    vertices), g351, n2106, a5 (on 15 vertices).  `file:<path>` reads
    one generator per line in cycle notation; the degree is taken from
    context or, failing that, the largest point mentioned.
    """
    from .perm import (
        PermGroup,
        Permutation,
        a5_s15,
        build_G351,
        build_normalizer_2106,
        standard_generators,
        trivial_group,
    )

    if spec == "trivial":
        if m is None:
            raise UsageError("group 'trivial' needs a universe size from context")
        return trivial_group(m)
    if spec == "c3":
        return PermGroup([standard_generators()["B"]])
    if spec == "c13":
        return PermGroup([standard_generators()["A"]])
    if spec == "g351":
        return build_G351()
    if spec == "n2106":
        return build_normalizer_2106()
    if spec == "a5":
        return a5_s15()
    if spec.startswith("file:"):
        path = spec[len("file:") :]
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise DataError(f"cannot read generator file {path}: {exc}") from exc
        lines = [
            ln.strip()
            for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")
        ]
        if not lines:
            raise DataError(f"generator file {path} is empty")
        if m is None:
            import re

            pts = [int(t) for ln in lines for t in re.findall(r"\d+", ln)]
            m = max(pts) if pts else 1
        try:
            gens = [Permutation.from_cycles(ln, m) for ln in lines]
        except (ValueError, IndexError) as exc:
            raise DataError(f"generator file {path}: {exc}") from exc
        return PermGroup(gens, m)
    raise UsageError(
        f"unknown group {spec!r}; expected one of {', '.join(NAMED_GROUPS)} or file:<path>"
    )


def _load_complex(path: str) -> Complex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_complex(text)
    except ParseError as exc:
        raise DataError(f"{path}: {exc}") from exc


def _parse_vertices(text: str, m: int) -> int:
    """Comma- or space-separated 1-based vertex list -> bit word."""
    parts = [p for chunk in text.split(",") for p in chunk.split()]
    try:
        verts = [int(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad vertex list {text!r}") from exc
    if not verts:
        raise UsageError("empty vertex list")
    word = 0
    for v in verts:
        if not 1 <= v <= m:
            raise UsageError(f"vertex {v} outside 1..{m}")
        if word >> (v - 1) & 1:
            raise UsageError(f"vertex {v} repeated")
        word |= 1 << (v - 1)
    return word


def _vertices(word: int, m: int) -> list[int]:
    return [i + 1 for i in range(m) if word >> i & 1]


def _vstr(word: int, m: int) -> str:
    return " ".join(str(v) for v in _vertices(word, m))


def _emit(args, lines: list[str], payload: dict) -> None:
    if args.format == "json":
        body = json.dumps(payload, indent=2)
    else:
        body = "\n".join(lines)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(body + "\n")
        print(f"wrote {out}")
    else:
        print(body)


def _write_complex(args, K: Complex, what: str) -> None:
    """Serialize K to --out, or to stdout when no --out was given."""
    if args.out:
        Path(args.out).write_text(serialize(K))
        fv = K.f_vector().f
        print(f"{what}: {len(K.facet_words)} facets, f={fv} -> {args.out}")
    else:
        sys.stdout.write(serialize(K))


# --- search ------------------------------------------------------------


def cmd_search(args) -> int:
    from .search import SearchConfig, run_search

    G = resolve_group(args.group, m=args.m)
    if G.m != args.m:
        raise UsageError(f"group acts on {G.m} points but --m is {args.m}")
    try:
        cfg = SearchConfig(
            args.m,
            args.d,
            G,
            args.min_facets,
            branch_weight=args.branch_weight,
            budget_factor=args.budget_factor,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = run_search(cfg, jobs=args.jobs)

    files: list[str] = []
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, K in enumerate(res.complexes, 1):
            p = outdir / f"complex_{i:03d}.dat"
            p.write_text(serialize(K))
            files.append(str(p))
        if G.order > 1:
            for i, K in enumerate(res.rep_complexes, 1):
                p = outdir / f"complex_{i:03d}_reps.dat"
                p.write_text(serialize(K))
                files.append(str(p))

    config_echo = (
        f"m={args.m} d={args.d} group={args.group}(order {G.order}) "
        f"min-facets={args.min_facets} branch-weight={args.branch_weight} "
        f"budget-factor={args.budget_factor} jobs={args.jobs}"
    )
    lines = ["command: search", config_echo]
    lines += res.report.lines()
    if files:
        lines.append(f"results: {len(files)} files")
        lines += [f"  {f}" for f in files]
    elif res.complexes:
        lines.append("results: not written (no --out)")
    payload = {
        "command": "search",
        "config": {
            "m": args.m,
            "d": args.d,
            "group": args.group,
            "group_order": G.order,
            "min_facets": args.min_facets,
            "branch_weight": args.branch_weight,
            "budget_factor": args.budget_factor,
            "jobs": args.jobs,
        },
        "report": asdict(res.report),
        "files": files,
    }
    # reports go to stdout; --out already holds the .dat files
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK


# --- verify ------------------------------------------------------------


def cmd_verify(args) -> int:
    from .verify import certify_manifold

    K = _load_complex(args.complex)
    G = resolve_group(args.group, m=K.m)
    if G.m != K.m:
        raise UsageError(f"group acts on {G.m} points but the complex has m={K.m}")
    cert = certify_manifold(K, G, jobs=args.jobs, with_traces=args.trace is not None)

    if args.trace:
        traces = {str(c): e.trace for c, e in sorted(cert.entries.items())}
        Path(args.trace).write_text(json.dumps(traces))

    lines = cert.lines()
    if args.format == "json":
        body = json.dumps(
            {
                "command": "verify",
                "m": cert.m,
                "group_order": cert.group_order,
                "complete": cert.complete,
                "n_entries": len(cert.entries),
                "n_uncovered": len(cert.uncovered),
                "certificate": lines,
            },
            indent=2,
        )
    else:
        body = "\n".join(lines)
    if args.out:
        Path(args.out).write_text(body + "\n")
        state = "complete" if cert.complete else f"{len(cert.uncovered)} uncovered"
        print(f"certificate: {len(cert.entries)} entries, {state} -> {args.out}")
    else:
        print(body)
    return EXIT_OK if cert.complete else EXIT_FINDING


# --- flips -------------------------------------------------------------


def cmd_flips_nu(args) -> int:
    from .flips import nu_parameters

    K = _load_complex(args.complex)
    if args.facet:
        sigmas = [_parse_vertices(args.facet, K.m)]
        if sigmas[0] not in set(K.facet_words):
            raise UsageError("--facet is not a facet of the complex")
    else:
        sigmas = list(K.facet_words)
    rows = [nu_parameters(K, s) for s in sigmas]
    overall = max((r.max for r in rows), default=0)
    peak = sum(1 for r in rows if r.max == overall)
    lines = []
    for r in rows:
        vals = " ".join(f"{v}:{c}" for v, c in r.nu)
        lines.append(f"{_vstr(r.sigma, r.m)} | {vals}")
    lines.append(f"facets: {len(rows)}, max nu: {overall} (on {peak})")
    payload = {
        "command": "flips nu",
        "facets": [
            {"sigma": _vertices(r.sigma, r.m), "nu": [list(p) for p in r.nu]}
            for r in rows
        ],
        "max": overall,
        "n_at_max": peak,
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_flips_triples(args) -> int:
    from .flips import distinguished_triples

    K = _load_complex(args.complex)
    ts = distinguished_triples(K)
    lines = [f"distinguished triples: {len(ts)}"]
    for t in ts:
        a, b, c = t.vertices()
        lines.append(
            " ".join(map(str, a)) + " / " + " ".join(map(str, b)) + " / " + " ".join(map(str, c))
        )
    payload = {
        "command": "flips triples",
        "count": len(ts),
        "triples": [[list(part) for part in t.vertices()] for t in ts],
    }
    _emit(args, lines, payload)
    return EXIT_OK


def _parse_triple(text: str, m: int):
    from .flips import DistinguishedTriple

    parts = text.split("/")
    if len(parts) != 3:
        raise UsageError("--triple wants three vertex lists separated by '/'")
    w = [_parse_vertices(p, m) for p in parts]
    if w[0] & w[1] or w[0] & w[2] or w[1] & w[2]:
        raise UsageError("triple parts must be pairwise disjoint")
    return DistinguishedTriple(w[0], w[1], w[2], m)


def cmd_flips_apply(args) -> int:
    from .flips import is_distinguished, triple_flip

    K = _load_complex(args.complex)
    t = _parse_triple(args.triple, K.m)
    if not is_distinguished(K, t):
        raise UsageError("the given triple is not distinguished in this complex")
    _write_complex(args, triple_flip(K, t), "flipped complex")
    return EXIT_OK


def cmd_flips_ks(args) -> int:
    from .flips import build_K_S

    try:
        text = Path(args.subset_file).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {args.subset_file}: {exc}") from exc
    tokens = text.replace(",", " ").split()
    try:
        idx = sorted({int(t) for t in tokens})
    except ValueError as exc:
        raise DataError(f"{args.subset_file}: expected integer indices") from exc
    if idx and not 0 <= idx[0] <= idx[-1] <= 350:
        raise UsageError("subset indices must lie in 0..350")
    _write_complex(args, build_K_S(idx, validate=args.validate), f"K_S for |S|={len(idx)}")
    return EXIT_OK


def cmd_flips_census(args) -> int:
    from .flips import subgroup_census

    table = subgroup_census()
    totals = table.triangulation_totals()
    head = f"{'class':<8}{'|H|':>6}{'|N(H)|':>8}{'size':>6}{'m_H':>8}"
    lines = [head]
    for r in table.rows:
        lines.append(
            f"{r.label:<8}{r.subgroup_order:>6}{r.normalizer_order:>8}"
            f"{r.class_size:>6}{r.m:>8}"
        )
    lines.append(f"census total: {table.total}")
    lines.append(f"known total: {sum(totals.values())}")
    payload = {
        "command": "flips census",
        "rows": [asdict(r) for r in table.rows],
        "census_total": table.total,
        "known_totals": totals,
        "known_total": sum(totals.values()),
    }
    # n_geq / n_exact are hundreds of digits; JSON carries them as strings
    for row in payload["rows"]:
        row["n_geq"] = str(row["n_geq"])
        row["n_exact"] = str(row["n_exact"])
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_flips_options(args) -> int:
    from .flips import bistellar_options

    K = _load_complex(args.complex)
    opts = bistellar_options(K)
    lines = [f"bistellar options: {len(opts)}"]
    for sig, tau in opts:
        lines.append(f"{_vstr(sig, K.m)} -> {_vstr(tau, K.m)}")
    payload = {
        "command": "flips options",
        "count": len(opts),
        "options": [
            {"face": _vertices(s, K.m), "replacement": _vertices(t, K.m)}
            for s, t in opts
        ],
    }
    _emit(args, lines, payload)
    return EXIT_OK


# --- analyze -----------------------------------------------------------


def cmd_analyze_sdist(args) -> int:
    from .analysis import s_distribution

    K = _load_complex(args.complex)
    dist = s_distribution(K, codim=args.codim)
    lines = [f"{'s':>4}{'count':>12}"]
    for s in sorted(dist):
        lines.append(f"{s:>4}{dist[s]:>12}")
    lines.append(f"total: {sum(dist.values())}")
    payload = {
        "command": "analyze sdist",
        "codim": args.codim,
        "distribution": {str(s): dist[s] for s in sorted(dist)},
        "total": sum(dist.values()),
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_analyze_npq(args) -> int:
    from .analysis import edge_matrix_Npq

    K = _load_complex(args.complex)
    edge = _vertices(_parse_vertices(args.edge, K.m), K.m)
    if len(edge) != 2:
        raise UsageError("--edge wants exactly two vertices")
    M = edge_matrix_Npq(K, edge[0], edge[1])
    lines = M.render().splitlines()
    lines.append(f"total: {M.total}, symmetric: {'yes' if M.is_symmetric else 'no'}")
    payload = {
        "command": "analyze npq",
        "edge": edge,
        "s_range": [M.smin, M.smax],
        "rows": M.rows(),
        "total": M.total,
        "symmetric": M.is_symmetric,
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_analyze_sym(args) -> int:
    from .analysis import symmetry_group

    K = _load_complex(args.complex)
    sup = None
    if args.supergroup:
        sup = resolve_group(args.supergroup, m=K.m)
        if sup.m != K.m:
            raise UsageError("supergroup acts on the wrong universe")
    G = symmetry_group(K, supergroup=sup)
    lines = [f"order: {G.order}", "generators:"]
    lines += [f"  {g.cycles()}" for g in G.generators] or ["  ()"]
    payload = {
        "command": "analyze sym",
        "order": G.order,
        "generators": [g.cycles() for g in G.generators],
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_analyze_fixed(args) -> int:
    from .analysis import fixed_point_complex

    K = _load_complex(args.complex)
    H = resolve_group(args.group, m=K.m)
    if H.m != K.m:
        raise UsageError("group acts on the wrong universe")
    try:
        fp = fixed_point_complex(K, H)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    lines = [f"fixed-point complex: {fp.n_vertices} vertices, "
             f"{len(fp.complex.facet_words)} facets"]
    for i, orb in enumerate(fp.orbit_sets, 1):
        lines.append(f"vertex {i} = orbit {{{' '.join(map(str, orb))}}}")
    if fp.complex.facet_words:
        lines.append("facets:")
        lines += [f"  {_vstr(w, fp.complex.m)}" for w in fp.complex.facet_words]
    payload = {
        "command": "analyze fixed",
        "n_vertices": fp.n_vertices,
        "orbits": [list(o) for o in fp.orbit_sets],
        "facets": [_vertices(w, fp.complex.m) for w in fp.complex.facet_words],
    }
    if args.out:
        Path(args.out).write_text(serialize(fp.complex))
        lines.append(f"wrote {args.out}")
        payload["file"] = args.out
        print("\n".join(lines) if args.format == "text" else json.dumps(payload, indent=2))
    else:
        _emit(args, lines, payload)
    return EXIT_OK


def cmd_analyze_intersect(args) -> int:
    from .analysis import orbit_intersection_counts
    from .perm import apply_to_words, standard_generators

    Ka = _load_complex(args.a)
    Kb = _load_complex(args.b)
    if Ka.m != Kb.m:
        raise UsageError("complexes live on different universes")
    G = resolve_group(args.group, m=Ka.m)
    if G.m != Ka.m:
        raise UsageError("group acts on the wrong universe")
    if args.twist:
        gens = standard_generators()
        p = gens["S"] if "s" in args.twist else None
        if "f" in args.twist:
            p = gens["F"] if p is None else p * gens["F"]
        Kb = Complex(
            sorted(int(w) for w in apply_to_words(p, Kb.words_array)), Kb.m
        )
    n = orbit_intersection_counts(Ka, Kb, G)
    lines = [f"shared facet orbits: {n}"]
    payload = {
        "command": "analyze intersect",
        "twist": args.twist or "none",
        "group_order": G.order,
        "shared_orbits": n,
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_analyze_tournament(args) -> int:
    from .analysis import tournament_automorphisms

    G = tournament_automorphisms(allow_reversal=args.reversal)
    kind = "automorphisms and reversals" if args.reversal else "automorphisms"
    lines = [f"{kind}: order {G.order}", "generators:"]
    lines += [f"  {g.cycles()}" for g in G.generators]
    payload = {
        "command": "analyze tournament",
        "reversal": args.reversal,
        "order": G.order,
        "generators": [g.cycles() for g in G.generators],
    }
    _emit(args, lines, payload)
    return EXIT_OK


# --- fixtures ----------------------------------------------------------


def cmd_fixtures(args) -> int:
    from . import fixtures as fx

    lines = []
    try:
        blocks = fx.orbit_blocks()
        counts = " ".join(f"{k}={len(v)}" for k, v in blocks.items())
        lines.append(f"blocks: {counts}")
        for i in range(1, 5):
            K = fx.k_reps(i)
            words = list(K.facet_words)
            if len(words) != 286:
                raise AssertionError(f"complex {i}: {len(words)} rows, expected 286")
            if any(w.bit_count() != 17 for w in words):
                raise AssertionError(f"complex {i}: row without 17 vertices")
            if words != sorted(set(words)):
                raise AssertionError(f"complex {i}: rows not sorted and distinct")
            total = sum(fx.BLOCK_COUNTS[k] for k in fx._COMPOSITION[i])
            if total != 286:
                raise AssertionError(f"complex {i}: block arithmetic {total} != 286")
            parts = "+".join(str(fx.BLOCK_COUNTS[k]) for k in fx._COMPOSITION[i])
            lines.append(f"complex {i}: 286 rows ({parts}) OK")
        for name, K in (("rp2_6", fx.rp2_6()), ("cp2_9", fx.cp2_9()), ("hp2_15", fx.hp2_15())):
            lines.append(f"{name}: {len(K.facet_words)} facets on {K.m} vertices")
    except (AssertionError, KeyError, OSError, json.JSONDecodeError) as exc:
        raise DataError(f"fixture corruption: {exc}") from exc
    lines.append("self-check: OK")

    written: list[str] = []
    if args.out:
        written = [str(p) for p in fx.export_all(args.out)]
        lines.append(f"exported {len(written)} files")
        lines += [f"  {p}" for p in written]
    payload = {
        "command": "fixtures",
        "blocks": {k: len(v) for k, v in fx.orbit_blocks().items()},
        "self_check": "OK",
        "files": written,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK


# --- dispatch ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, metavar="K",
                        help="worker processes (default 1)")
    common.add_argument("--out", metavar="PATH",
                        help="output file or directory")
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="report format (default text)")

    ap = argparse.ArgumentParser(
        prog="octoplane",
        description="Search, verify, flip, and analyze highly symmetric "
        "triangulated manifolds on few vertices.",
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("search", parents=[common],
                       help="orbit-selection search for neighborly pseudomanifolds")
    p.add_argument("--m", type=int, required=True, help="number of vertices")
    p.add_argument("--d", type=int, required=True, help="dimension")
    p.add_argument("--group", default="trivial",
                   help="symmetry group to impose (default trivial)")
    p.add_argument("--min-facets", type=int, required=True, metavar="N",
                   help="required facet count of a solution")
    p.add_argument("--branch-weight", type=int, default=10,
                   help="adjacency-group weight bound for branching (default 10)")
    p.add_argument("--budget-factor", type=int, default=5,
                   help="budget multiplier for the pruning pass (default 5)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common],
                       help="combinatorial-manifold certificate via nonevasive links")
    p.add_argument("--complex", required=True, metavar="FILE",
                   help=".dat file; orbit representatives when --group is nontrivial")
    p.add_argument("--group", default="trivial",
                   help="group whose orbits the file represents (default trivial)")
    p.add_argument("--trace", metavar="FILE",
                   help="write nonevasiveness traces as JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("flips", help="nu-parameters, distinguished triples, census")
    fsub = p.add_subparsers(dest="subcommand", required=True, metavar="SUB")

    q = fsub.add_parser("nu", parents=[common], help="branching parameters per facet")
    q.add_argument("--complex", required=True, metavar="FILE")
    q.add_argument("--facet", metavar="V,V,...", help="restrict to one facet")
    q.set_defaults(func=cmd_flips_nu)

    q = fsub.add_parser("triples", parents=[common],
                        help="list distinguished vertex triples")
    q.add_argument("--complex", required=True, metavar="FILE")
    q.set_defaults(func=cmd_flips_triples)

    q = fsub.add_parser("apply", parents=[common], help="apply one triple flip")
    q.add_argument("--complex", required=True, metavar="FILE")
    q.add_argument("--triple", required=True, metavar="A/B/C",
                   help="three '/'-separated vertex lists")
    q.set_defaults(func=cmd_flips_apply)

    q = fsub.add_parser("ks", parents=[common],
                        help="build the flip-family member for a subset S")
    q.add_argument("--subset-file", required=True, metavar="FILE",
                   help="indices into the canonical order of the 351 group elements")
    q.add_argument("--validate", action="store_true",
                   help="check the result is a weak pseudomanifold")
    q.set_defaults(func=cmd_flips_ks)

    q = fsub.add_parser("census", parents=[common],
                        help="count flip-family members per symmetry class")
    q.set_defaults(func=cmd_flips_census)

    q = fsub.add_parser("options", parents=[common],
                        help="enumerate available bistellar moves")
    q.add_argument("--complex", required=True, metavar="FILE")
    q.set_defaults(func=cmd_flips_options)

    p = sub.add_parser("analyze", help="fingerprints, symmetries, fixed points")
    asub = p.add_subparsers(dest="subcommand", required=True, metavar="SUB")

    q = asub.add_parser("sdist", parents=[common],
                        help="histogram of codimension-k face multiplicities")
    q.add_argument("--complex", required=True, metavar="FILE")
    q.add_argument("--codim", type=int, default=2)
    q.set_defaults(func=cmd_analyze_sdist)

    q = asub.add_parser("npq", parents=[common],
                        help="pair matrix of ridge multiplicities through an edge")
    q.add_argument("--complex", required=True, metavar="FILE")
    q.add_argument("--edge", default="1,2", metavar="A,B")
    q.set_defaults(func=cmd_analyze_npq)

    q = asub.add_parser("sym", parents=[common], help="symmetry group of a complex")
    q.add_argument("--complex", required=True, metavar="FILE")
    q.add_argument("--supergroup", metavar="GROUP",
                   help="filter this group instead of the generic search")
    q.set_defaults(func=cmd_analyze_sym)

    q = asub.add_parser("fixed", parents=[common],
                        help="fixed-point complex of a vertex group action")
    q.add_argument("--complex", required=True, metavar="FILE")
    q.add_argument("--group", required=True, metavar="GROUP")
    q.set_defaults(func=cmd_analyze_fixed)

    q = asub.add_parser("intersect", parents=[common],
                        help="count shared facet orbits of two complexes")
    q.add_argument("--a", required=True, metavar="FILE")
    q.add_argument("--b", required=True, metavar="FILE")
    q.add_argument("--group", default="g351")
    q.add_argument("--twist", choices=("s", "f", "sf"),
                   help="apply the sign or field twist to the second complex")
    q.set_defaults(func=cmd_analyze_intersect)

    q = asub.add_parser("tournament", parents=[common],
                        help="automorphisms of the difference tournament")
    q.add_argument("--reversal", action="store_true",
                   help="also allow orientation reversal")
    q.set_defaults(func=cmd_analyze_tournament)

    p = sub.add_parser("fixtures", parents=[common],
                       help="self-check and export the bundled reference complexes")
    p.set_defaults(func=cmd_fixtures)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
