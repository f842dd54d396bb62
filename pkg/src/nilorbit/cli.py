"""Command-line driver.

Subcommands: roots | gkm-graph | betti | ring | polytope | center | selftest.
Reports are emitted either as human-readable text or as canonical JSON
(sorted keys, rationals as exact "p/q" strings), so JSON output is stable
enough for golden files and round-trips byte-identically.

Exit codes: 0 success, 1 usage or parse error, 2 enumeration cap exceeded,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .errors import CapExceededError, InternalInvariantError, InvalidLieTypeError
from .gkm import (
    GKMClass,
    build_gkm_graph,
    equivariant_basis,
    predicted_equiv_betti,
    satisfies_gkm_conditions,
)
from .lie import (
    DEFAULT_CAP,
    LieType,
    Weight,
    build_root_system,
    coset_representatives,
    inner_product,
)
from .moment import moment_polytope
from .orbit import (
    BettiTable,
    center_group,
    center_group_cohomology,
    euler_class,
    minimal_orbit_betti,
    minimal_orbit_cohomology,
    regular_orbit_betti,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_INVARIANT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; we reserve 2 for blown caps
    def error(self, message):
        raise _UsageError(message)


@dataclass
class RunConfig:
    lie_type: LieType
    max_degree: int
    fmt: str
    cap: int
    jobs: int
    parabolic: str


def _weight_json(w: Weight) -> list[str]:
    return [str(c) for c in w.coords]


def _parse_parabolic(cfg: RunConfig, rs) -> frozenset[int]:
    text = cfg.parabolic
    if text == "xi":
        return rs.xi
    if text == "borel":
        return frozenset()
    try:
        indices = frozenset(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise _UsageError(f"cannot parse parabolic spec {text!r}") from None
    bad = [i for i in indices if not 1 <= i <= rs.rank]
    if bad:
        raise _UsageError(f"parabolic indices {sorted(bad)} outside 1..{rs.rank}")
    return indices


def _emit(cfg: RunConfig, report: dict, render_text) -> None:
    if cfg.fmt == "json":
        sys.stdout.write(canonical_json(report))
    else:
        render_text(report)


def canonical_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_roots(cfg: RunConfig) -> int:
    rs = build_root_system(cfg.lie_type)
    longs = sorted(rs.long_roots, key=Weight.sort_key)
    report = {
        "command": "roots",
        "type": str(cfg.lie_type),
        "rank": rs.rank,
        "num_roots": len(rs.all_roots),
        "num_positive": len(rs.positive_roots),
        "num_long": len(longs),
        "highest_root": _weight_json(rs.highest_root),
        "long_roots": [_weight_json(w) for w in longs],
        "xi": sorted(rs.xi),
    }

    def text(rep):
        print(f"type {rep['type']}: {rep['num_roots']} roots "
              f"({rep['num_positive']} positive, {rep['num_long']} long)")
        print(f"highest root: {tuple(rep['highest_root'])} (simple-root coordinates)")
        print(f"orthogonal simple roots (Xi): {rep['xi'] or 'none'}")

    _emit(cfg, report, text)
    return EXIT_OK


def cmd_gkm_graph(cfg: RunConfig) -> int:
    rs = build_root_system(cfg.lie_type)
    lam = _parse_parabolic(cfg, rs)
    graph = build_gkm_graph(rs, lam, cap=cfg.cap)
    vertices = []
    for v in graph.vertices:
        entry = {
            "id": v.index,
            "word": list(v.word.letters),
            "tag": _weight_json(v.tag),
        }
        if v.long_root is not None:
            entry["long_root"] = _weight_json(v.long_root)
        vertices.append(entry)
    report = {
        "command": "gkm-graph",
        "type": str(cfg.lie_type),
        "parabolic": sorted(lam),
        "vertices": vertices,
        "edges": [
            {"v": e.v, "u": e.u, "beta": _weight_json(e.beta),
             "label": _weight_json(e.label)}
            for e in graph.edges
        ],
    }

    def text(rep):
        print(f"GKM graph of {rep['type']}, parabolic {rep['parabolic'] or 'borel'}: "
              f"{len(rep['vertices'])} vertices, {len(rep['edges'])} directed edges")
        for v in rep["vertices"]:
            word = "".join(f"s{i}" for i in v["word"]) or "e"
            line = f"  [{v['id']:3d}] {word:16s} tag {tuple(v['tag'])}"
            if "long_root" in v:
                line += f"  long root {tuple(v['long_root'])}"
            print(line)

    _emit(cfg, report, text)
    return EXIT_OK


def cmd_betti(cfg: RunConfig, target: str) -> int:
    rs = build_root_system(cfg.lie_type)
    if target == "min-orbit":
        table = minimal_orbit_betti(rs, cfg.max_degree, cap=cfg.cap)
    elif target == "reg-orbit":
        table = regular_orbit_betti(rs, cfg.max_degree, cap=cfg.cap)
    else:  # equivariant Betti numbers of the flag variety G/P
        lam = _parse_parabolic(cfg, rs)
        graph = build_gkm_graph(rs, lam, cap=cfg.cap)
        table = BettiTable(cfg.max_degree, {
            2 * d: predicted_equiv_betti(graph, d)
            for d in range(cfg.max_degree // 2 + 1)})
    report = {
        "command": "betti",
        "target": target,
        "type": str(cfg.lie_type),
        "max_degree": cfg.max_degree,
        "dims_by_even_degree": table.as_list(),
    }

    def text(rep):
        print(f"{rep['target']} Betti numbers of {rep['type']} "
              f"(even degrees 0..{rep['max_degree']}):")
        dims = rep["dims_by_even_degree"]
        print("  degree: " + "  ".join(f"{2 * i:4d}" for i in range(len(dims))))
        print("  dim   : " + "  ".join(f"{b:4d}" for b in dims))

    _emit(cfg, report, text)
    return EXIT_OK


def _class_values(cls: GKMClass) -> list[str]:
    return [value.to_string() for value in cls.values]


def cmd_ring(cfg: RunConfig, target: str) -> int:
    rs = build_root_system(cfg.lie_type)
    degrees = list(range(0, cfg.max_degree + 1, 2))
    report = {
        "command": "ring",
        "target": target,
        "type": str(cfg.lie_type),
        "max_degree": cfg.max_degree,
    }
    if target == "min-orbit":
        ring = minimal_orbit_cohomology(rs, cfg.max_degree, cap=cfg.cap, jobs=cfg.jobs)
        report["euler_class"] = _class_values(ring.euler)
        report["degrees"] = [
            {
                "degree": d,
                "dimension": len(piece.ambient),
                "basis": [_class_values(c) for c in piece.ambient],
                "ideal_dimension": len(piece.image),
                "quotient_dimension": piece.quotient_dimension,
                "quotient_representatives": [
                    _class_values(c) for c in piece.representatives],
            }
            for d, piece in sorted(ring.degreewise.items())
        ]
    else:  # flag-xi: the ambient equivariant cohomology of G/P_Xi
        graph = build_gkm_graph(rs, rs.xi, cap=cfg.cap)
        if cfg.jobs > 1:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                bases = list(pool.map(
                    lambda d: equivariant_basis(graph, d, cap=cfg.cap), degrees))
        else:
            bases = [equivariant_basis(graph, d, cap=cfg.cap) for d in degrees]
        report["degrees"] = [
            {
                "degree": d,
                "dimension": len(basis),
                "basis": [_class_values(c) for c in basis],
            }
            for d, basis in zip(degrees, bases)
        ]

    def text(rep):
        print(f"{rep['target']} ring of {rep['type']} up to degree {rep['max_degree']}")
        if "euler_class" in rep:
            print(f"Euler class: ({', '.join(rep['euler_class'])})")
        for entry in rep["degrees"]:
            print(f"degree {entry['degree']}: dimension {entry['dimension']}")
            for cls in entry["basis"]:
                print(f"    ({', '.join(cls)})")
            if "quotient_representatives" in entry:
                print(f"  quotient dimension {entry['quotient_dimension']}; "
                      "representatives:")
                for cls in entry["quotient_representatives"]:
                    print(f"    ({', '.join(cls)})")

    _emit(cfg, report, text)
    return EXIT_OK


def cmd_polytope(cfg: RunConfig) -> int:
    rs = build_root_system(cfg.lie_type)
    poly = moment_polytope(rs)
    report = {
        "command": "polytope",
        "type": str(cfg.lie_type),
        "rank": poly.rank,
        "num_vertices": len(poly),
        "vertices": [_weight_json(v) for v in poly.vertices],
        "certified": True,
    }

    def text(rep):
        print(f"moment polytope of the projectivized minimal orbit of {rep['type']}: "
              f"{rep['num_vertices']} vertices in rank {rep['rank']}")
        for v in rep["vertices"]:
            print(f"  {tuple(v)}")
        print("extremality of every vertex certified exactly")

    _emit(cfg, report, text)
    return EXIT_OK


def cmd_center(cfg: RunConfig) -> int:
    centre = center_group(cfg.lie_type)
    cohomology = [center_group_cohomology(centre, n)
                  for n in range(cfg.max_degree + 1)]
    report = {
        "command": "center",
        "type": str(cfg.lie_type),
        "invariant_factors": list(centre.invariant_factors),
        "order": centre.order,
        "cohomology": [
            {"degree": n, "free_rank": g.free_rank, "torsion": list(g.torsion)}
            for n, g in enumerate(cohomology)
        ],
    }

    def text(rep):
        print(f"centre of the simply-connected group of type {rep['type']}: "
              f"{centre} (order {rep['order']})")
        print("group cohomology with integer coefficients:")
        for row in rep["cohomology"]:
            group = _abelian_label(row["free_rank"], row["torsion"])
            print(f"  H^{row['degree']} = {group}")

    _emit(cfg, report, text)
    return EXIT_OK


def _abelian_label(free_rank: int, torsion) -> str:
    parts = ["Z"] * free_rank + [f"Z/{m}" for m in torsion]
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# selftest


def _det(matrix) -> Fraction:
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def cmd_selftest(cfg: RunConfig) -> int:
    """Run the package's consistency suites for one type; 0 iff all pass."""
    rs = build_root_system(cfg.lie_type)
    checks = []

    def check(name, fn):
        checks.append((name, fn))

    check("root splitting", lambda: (
        len(rs.all_roots) % 2 == 0
        and rs.negative_roots == frozenset(-r for r in rs.positive_roots)))
    check("highest root dominance", lambda: all(
        inner_product(rs, rs.highest_root, s) >= 0 for s in rs.simple_roots))
    check("orbit-coset bijection", lambda: _bijection_ok(rs, cfg.cap))
    check("graph regularity and symmetry", lambda: _graph_ok(rs, cfg.cap))
    check("dimension oracle", lambda: _oracle_ok(rs, cfg.max_degree, cfg.cap))
    check("euler class validity", lambda: _euler_ok(rs, cfg.cap))
    check("quotient against counting", lambda: _quotient_ok(rs, cfg.max_degree, cfg.cap))
    check("polytope certification", lambda: _polytope_ok(rs))
    check("center order equals Cartan determinant", lambda: (
        center_group(cfg.lie_type).order == abs(_det(rs.cartan_matrix))))

    failed = []
    for name, fn in checks:
        ok = bool(fn())
        print(("ok   " if ok else "FAIL ") + name)
        if not ok:
            failed.append(name)
            break
    if failed:
        print(f"selftest failed at: {failed[0]}", file=sys.stderr)
        return EXIT_INVARIANT
    print(f"selftest passed for {cfg.lie_type} up to degree {cfg.max_degree}")
    return EXIT_OK


def _bijection_ok(rs, cap) -> bool:
    cosets = coset_representatives(rs, rs.xi, cap=cap)
    graph = build_gkm_graph(rs, rs.xi, cap=cap)
    tags = {v.long_root for v in graph.vertices}
    return len(cosets) == len(rs.long_roots) and tags == rs.long_roots


def _graph_ok(rs, cap) -> bool:
    graph = build_gkm_graph(rs, rs.xi, cap=cap)
    normalized_roots = {r.sign_normalized() for r in rs.all_roots}
    degree = {}
    for e in graph.edges:
        degree[e.v] = degree.get(e.v, 0) + 1
        if e.label.sign_normalized() not in normalized_roots:
            return False
    return len(set(degree.values())) == 1


def _oracle_ok(rs, max_degree, cap) -> bool:
    graph = build_gkm_graph(rs, rs.xi, cap=cap)
    return all(
        len(equivariant_basis(graph, 2 * d, cap=cap)) == predicted_equiv_betti(graph, d)
        for d in range(max_degree // 2 + 1))


def _euler_ok(rs, cap) -> bool:
    graph = build_gkm_graph(rs, rs.xi, cap=cap)
    return satisfies_gkm_conditions(euler_class(graph))


def _quotient_ok(rs, max_degree, cap) -> bool:
    ring = minimal_orbit_cohomology(rs, max_degree, cap=cap)
    counted = minimal_orbit_betti(rs, max_degree, cap=cap)
    return all(piece.quotient_dimension == counted[d]
               for d, piece in ring.degreewise.items())


def _polytope_ok(rs) -> bool:
    try:
        moment_polytope(rs)
    except InternalInvariantError:
        return False
    return True


# ---------------------------------------------------------------------------
# argument plumbing


def build_parser() -> _Parser:
    parser = _Parser(prog="nilorbit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"nilorbit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", required=True, metavar="STR",
                       help="simple type, e.g. A3, B2, G2, E6")
        p.add_argument("--max-degree", type=int, default=8, metavar="EVEN_INT")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--parabolic", default="xi", metavar="xi|borel|I,J,...",
                       help="subset of simple indices defining the parabolic")
        p.add_argument("--jobs", type=int, default=1, metavar="N")
        p.add_argument("--cap", type=int, default=None, metavar="N",
                       help="orbit/coset safety cap (env NILORBIT_CAP overrides default)")

    common(sub.add_parser("roots", help="root counts, highest root, orthogonal simples"))
    common(sub.add_parser("gkm-graph", help="vertices and labelled edges of G/P"))
    p = sub.add_parser("betti", help="Betti tables")
    p.add_argument("target", choices=("min-orbit", "reg-orbit", "flag"))
    common(p)
    p = sub.add_parser("ring", help="equivariant cohomology bases per degree")
    p.add_argument("target", choices=("flag-xi", "min-orbit"))
    common(p)
    common(sub.add_parser("polytope", help="moment polytope of the projectivized orbit"))
    common(sub.add_parser("center", help="centre and its group cohomology"))
    common(sub.add_parser("selftest", help="run consistency suites for one type"))
    return parser


def _config_from(args) -> RunConfig:
    lie_type = LieType.from_string(args.type)
    if args.max_degree < 0 or args.max_degree % 2:
        raise _UsageError(f"--max-degree must be even and nonnegative, got {args.max_degree}")
    if args.jobs < 1:
        raise _UsageError(f"--jobs must be positive, got {args.jobs}")
    cap = args.cap
    if cap is None:
        cap = int(os.environ.get("NILORBIT_CAP", DEFAULT_CAP))
    if cap < 1:
        raise _UsageError(f"cap must be positive, got {cap}")
    return RunConfig(lie_type=lie_type, max_degree=args.max_degree,
                     fmt=args.format, cap=cap, jobs=args.jobs,
                     parabolic=args.parabolic)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from(args)
        if args.command == "roots":
            return cmd_roots(cfg)
        if args.command == "gkm-graph":
            return cmd_gkm_graph(cfg)
        if args.command == "betti":
            return cmd_betti(cfg, args.target)
        if args.command == "ring":
            return cmd_ring(cfg, args.target)
        if args.command == "polytope":
            return cmd_polytope(cfg)
        if args.command == "center":
            return cmd_center(cfg)
        if args.command == "selftest":
            return cmd_selftest(cfg)
        raise _UsageError(f"unknown command {args.command!r}")
    except (_UsageError, InvalidLieTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
