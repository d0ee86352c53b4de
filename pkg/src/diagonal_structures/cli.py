"""Command-line interface.

Exit codes: 0 success, 1 a check failed or the input is invalid (the report
carries the witness), 2 a size cap was hit, 64 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import diagonal, diagraph, groups, latin
from .errors import SizeLimitExceeded, StructureError, ValidationError
from .graphs import chromatic_number_exact, srg_parameters
from .partitions import join, load_partition

EXIT_OK, EXIT_INVALID, EXIT_LIMIT, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- input helpers -----------------------------------------------------------

def data_dir():
    return resources.files("diagonal_structures") / "data"


def bundled_names(kind: str) -> list[str]:
    return sorted(p.name for p in (data_dir() / kind).iterdir())


def _read_text(path: str, kind: str, suffix: str) -> tuple[str, str]:
    """Text of ``path`` (``-`` for stdin), falling back to a bundled fixture of that name."""
    if path == "-":
        return sys.stdin.read(), "stdin"
    p = Path(path)
    if p.is_file():
        return p.read_text(), p.stem
    bundled = data_dir() / kind / (p.name if p.name.endswith(suffix) else p.name + suffix)
    if bundled.is_file():
        return bundled.read_text(), Path(str(bundled)).stem
    raise UsageError(f"cannot read {path!r}")


def read_group(path: str) -> groups.Group:
    text, name = _read_text(path, "groups", ".group")
    return groups.parse_group(text, name=name)


def read_cube(path: str) -> latin.LatinCube:
    text, _ = _read_text(path, "cubes", ".cube")
    return latin.parse_cube(text)


def identify(g: groups.Group) -> Optional[str]:
    """Name of the bundled group isomorphic to ``g``, if any."""
    for name in bundled_names("groups"):
        h = groups.parse_group((data_dir() / "groups" / name).read_text())
        if h.order == g.order and groups.are_isomorphic(g, h) is not None:
            return name.rsplit(".", 1)[0]
    return None


def _table_rows(g: groups.Group) -> list[str]:
    return groups.format_group(g).splitlines()[1:]


# --- commands ------------------------------------------------------------

def cmd_check_square(args) -> tuple[dict, int]:
    text, _ = _read_text(args.file, "groups", ".group")
    raw = groups.parse_table(text)
    t = groups.validate_quasigroup(raw)
    sq = latin.latin_square_from_table(t)
    g = latin.latin_square_graph(sq)
    report = {"verdict": "LATIN", "order": sq.n,
              "srg_parameters": list(srg_parameters(g) or ()),
              "group_isotopic": groups.quadrangle_criterion(t)}
    bad = groups.quadrangle_counterexample(t)
    if bad is not None:
        report["quadrangle_counterexample"] = list(bad)
    if args.graph_out:
        lines = [f"vertices {g.n} types 3"]
        kinds = [sq.rows.labels, sq.columns.labels, sq.letters.labels]
        for u, v in g.edges():
            k = next(i for i, lab in enumerate(kinds) if lab[u] == lab[v])
            lines.append(f"{u} {v} {k}")
        Path(args.graph_out).write_text("\n".join(lines) + "\n")
        report["graph_file"] = args.graph_out
    return report, EXIT_OK


def cmd_check_cube(args) -> tuple[dict, int]:
    c = read_cube(args.file)
    sort = latin.classify_sort(c)
    report: dict = {"side": c.n, "letters": c.letters.num_parts, "sort": sort.value}
    if sort is not latin.CubeSort.LC2:
        report["verdict"] = "WRONG_SORT"
        report["reason"] = "regularity is defined for LC2 cubes"
        return report, EXIT_INVALID
    witnesses = {}
    for i, j in latin.PAIRS:
        w = latin.ij_regularity_witness(c, i, j)
        report[f"regular_{i}{j}"] = w is None
        if w is not None:
            witnesses[f"{i}{j}"] = {"lines": [w.line_a, w.line_b],
                                    "letter_sets": [list(w.letters_a), list(w.letters_b)]}
    if witnesses:
        report["verdict"] = "NOT_REGULAR"
        report["witnesses"] = witnesses
        return report, EXIT_INVALID
    report["verdict"] = "REGULAR"
    return report, EXIT_OK


def cmd_cube_to_group(args) -> tuple[dict, int]:
    c = read_cube(args.file)
    g, cert = latin.group_from_regular_cube(c)
    report = {"verdict": "GROUP", "order": g.order, "identified_as": identify(g),
              "cayley_table": _table_rows(g),
              "certificate": {
                  "distinguished_part": cert.distinguished_part,
                  "p1_labels": list(cert.p1_labels), "p2_labels": list(cert.p2_labels),
                  "p3_labels": list(cert.p3_labels), "sigma": list(cert.sigma),
                  "verified": latin.verify_certificate(c, cert),
              }}
    if args.output:
        Path(args.output).write_text(groups.format_group(g))
        report["table_file"] = args.output
    return report, EXIT_OK


def cmd_group_to_cube(args) -> tuple[dict, int]:
    g = read_group(args.file)
    c = latin.cube_from_group(g)
    text = latin.format_cube(c)
    if not args.output:
        return {"_raw": text}, EXIT_OK
    Path(args.output).write_text(text)
    return {"verdict": "CUBE", "side": c.n, "letters": c.letters.num_parts,
            "sort": latin.classify_sort(c).value, "cube_file": args.output}, EXIT_OK


def cmd_build_diagonal(args) -> tuple[dict, int]:
    g = read_group(args.file)
    limit = args.limit or diagonal.SEMILATTICE_POINT_LIMIT
    s = diagonal.build_semilattice(g, args.m, limit=limit)
    report: dict = {"group": g.name, "order": g.order, "m": args.m, "points": s.codec.size,
                    "minimal_parts": [q.num_parts for q in s.minimal],
                    "suprema": len(s.suprema)}
    ok = True
    for a, b in ((a, b) for a in s.suprema for b in s.suprema if a and b):
        if join(s.suprema[a], s.suprema[b]) != s[a | b]:
            ok = False
            break
    report["join_closed"] = ok
    if args.m >= 3:
        w = diagonal.verify_not_meet_closed(s)
        report["meet_counterexample"] = {"q01_parts": w.q01.num_parts, "q23_parts": w.q23.num_parts,
                                         "meet_parts": w.meet.num_parts, "meet_part_size": w.part_size,
                                         "in_semilattice": False}
    report["verdict"] = "OK" if ok else "JOIN_FAILURE"
    return report, EXIT_OK if ok else EXIT_INVALID


def cmd_extract_group(args) -> tuple[dict, int]:
    d = Path(args.dir)
    if not d.is_dir():
        bundled = data_dir() / "partitions" / args.dir
        if not bundled.is_dir():
            raise UsageError(f"{args.dir!r} is not a directory")
        files = sorted((p for p in bundled.iterdir() if p.name.endswith(".part")), key=lambda p: p.name)
    else:
        files = sorted(d.glob("*.part"))
    if not files:
        raise UsageError(f"no .part files in {args.dir!r}")
    parts = [load_partition(f) for f in files]
    special = diagonal.verify_special_set(parts)
    g = diagonal.extract_group(special)
    report = {"verdict": "GROUP", "m": special.m, "points": special.size, "order": g.order,
              "identified_as": identify(g), "cayley_table": _table_rows(g)}
    if args.output:
        Path(args.output).write_text(groups.format_group(g))
        report["table_file"] = args.output
    return report, EXIT_OK


def cmd_graph_stats(args) -> tuple[dict, int]:
    g = read_group(args.file)
    limit = args.limit or diagraph.GRAPH_VERTEX_LIMIT
    dg = diagraph.build_graph(g, args.m, limit=limit)
    n = dg.num_vertices
    report: dict = {"group": g.name, "m": args.m, "vertices": n,
                    "valency": dg.graph.degree(0),
                    "diameter": diagraph.diameter_formula(g.order, args.m)}
    if n <= diagraph.BFS_VERTEX_LIMIT:
        report["diameter_bfs"] = max(dg.graph.bfs(0))
    try:
        _, omega = diagraph.lines_and_clique_number(dg)
        report["clique_number"] = omega
    except ValidationError:
        report["clique_number"] = n   # the complete graph K4
    coloring = diagraph.proper_coloring(g, args.m, dg=dg)
    report["coloring_palette"] = coloring.palette
    report["coloring_method"] = coloring.method
    if n <= chromatic_limit(args):
        report["chromatic"] = chromatic_number_exact(dg.graph, limit=chromatic_limit(args))
    elif report["clique_number"] == coloring.palette:
        report["chromatic"] = coloring.palette
    else:
        report["chromatic_bounds"] = [report["clique_number"], coloring.palette]
    if args.export:
        Path(args.export).write_text(diagraph.export_graph(dg))
        report["graph_file"] = args.export
    return report, EXIT_OK


def chromatic_limit(args) -> int:
    return max(args.limit or 0, diagraph.CHROMATIC_LIMIT)


def cmd_classify(args) -> tuple[dict, int]:
    g = read_group(args.file)
    v = diagonal.classify_primitivity(g, args.m)
    report: dict = {"group": g.name, "m": args.m, "verdict": v.verdict, "reason": v.reason}
    degree = g.order ** args.m
    oracle_limit = args.limit or diagonal.ORACLE_DEGREE_LIMIT
    if degree <= oracle_limit:
        gens = diagonal.diagonal_group_generators(g, args.m)
        report["oracle_primitive"] = diagonal.primitivity_oracle(gens, limit=oracle_limit)
        report["oracle_agrees"] = report["oracle_primitive"] == v.primitive
    return report, EXIT_OK


def cmd_sync_witness(args) -> tuple[dict, int]:
    g = read_group(args.file)
    limit = args.limit or diagraph.GRAPH_VERTEX_LIMIT
    cert = diagraph.synchronization_witness(g, args.m, limit=limit)
    codec = diagonal.tuple_codec(g, args.m)
    clique = [[g.symbols[x] for x in codec.decode(v)] for v in cert.clique]
    return {"verdict": "NON_SYNCHRONIZING", "group": g.name, "m": args.m,
            "clique_size": cert.clique_size, "clique": clique,
            "palette": cert.coloring.palette, "coloring_method": cert.coloring.method}, EXIT_OK


# --- parser and driver -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--limit", type=int, default=None, metavar="N",
                        help="override the size cap of the main computation")
    common.add_argument("--timings", action="store_true", help="include elapsed time in the report")

    p = _Parser(prog="diagonal-structures",
                description="Partitions, Latin cubes, diagonal semilattices and diagonal graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check-square", parents=[common], help="validate a Latin square")
    s.add_argument("file")
    s.add_argument("--graph-out", metavar="PATH", help="write the Latin-square graph edge list")
    s.set_defaults(func=cmd_check_square)

    s = sub.add_parser("check-cube", parents=[common], help="classify a Latin cube and test regularity")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_cube)

    s = sub.add_parser("cube-to-group", parents=[common], help="recover the group of a regular cube")
    s.add_argument("file", help="cube file, or - for stdin")
    s.add_argument("--output", metavar="PATH", help="write the Cayley table here")
    s.set_defaults(func=cmd_cube_to_group)

    s = sub.add_parser("group-to-cube", parents=[common], help="build the coset cube of a group")
    s.add_argument("file")
    s.add_argument("--output", metavar="PATH", help="write the cube here instead of stdout")
    s.set_defaults(func=cmd_group_to_cube)

    s = sub.add_parser("build-diagonal", parents=[common], help="diagonal semilattice report")
    s.add_argument("file")
    s.add_argument("-m", "--dimension", dest="m", type=int, required=True)
    s.set_defaults(func=cmd_build_diagonal)

    s = sub.add_parser("extract-group", parents=[common], help="group from a special set of partition files")
    s.add_argument("dir")
    s.add_argument("--output", metavar="PATH", help="write the Cayley table here")
    s.set_defaults(func=cmd_extract_group)

    s = sub.add_parser("graph-stats", parents=[common], help="diagonal graph statistics")
    s.add_argument("file")
    s.add_argument("-m", "--dimension", dest="m", type=int, required=True)
    s.add_argument("--export", metavar="PATH", help="write the typed edge list")
    s.set_defaults(func=cmd_graph_stats)

    s = sub.add_parser("classify", parents=[common], help="primitivity of the diagonal group")
    s.add_argument("file")
    s.add_argument("-m", "--dimension", dest="m", type=int, required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("sync-witness", parents=[common], help="clique and colouring of equal size")
    s.add_argument("file")
    s.add_argument("-m", "--dimension", dest="m", type=int, required=True)
    s.set_defaults(func=cmd_sync_witness)
    return p


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "tolist"):
        return x.tolist()
    if hasattr(x, "describe"):
        return x.describe()
    return str(x)


def render(report: dict, as_json: bool) -> str:
    report = _jsonable(report)
    if as_json:
        return json.dumps(report, indent=2)
    lines = []
    for key, value in report.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value, separators=(",", ":"))
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitExceeded as exc:
        report, code = {"verdict": "SIZE_LIMIT", "error": str(exc), "limit": exc.limit}, EXIT_LIMIT
    except ValidationError as exc:
        report = {"verdict": "INVALID", "error_type": type(exc).__name__, "error": str(exc)}
        if exc.witness is not None:
            report["witness"] = exc.witness
        code = EXIT_INVALID
    except StructureError as exc:  # pragma: no cover - all raised errors are subclasses above
        report, code = {"verdict": "ERROR", "error": str(exc)}, EXIT_INVALID
    if "_raw" in report:
        out.write(report["_raw"])
        return code
    if args.timings:
        report["elapsed_seconds"] = round(time.perf_counter() - start, 4)
    print(render(report, args.json), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
