"""Command-line interface: generate, search, verify, chain and export.

File formats
------------
Graph files:  a header line ``cubic <n> <m>`` followed by one line
``<edge_id> <u> <v>`` per edge; ``#`` starts a comment.  Certificate files:
``certificate <kind>`` with kind fr-triple, covering or ffamily, followed
by ``matching <ids>`` lines (three or six), or for ffamily by one ``m``,
four ``member`` and one ``n`` line.  Both formats round-trip bit-exactly.

Exit codes: 0 success/found, 1 verified-absent or invalid certificate,
2 usage or parse error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from .budget import Budget, DEFAULT_BUDGET_ENV
from .ffamily import (
    DotStep,
    FFamily,
    enumerate_ffamilies,
    find_ffamily,
    iterate_dot_sequence,
    verify_ffamily,
)
from .fulkerson import (
    AUTO,
    FRTriple,
    FulkersonCovering,
    enumerate_fulkerson_coverings,
    find_fr_triple,
    find_fulkerson_covering,
    verify_covering,
    _STRATEGIES,
)
from .generators import (
    cube_q3,
    doubled_matching_cycle,
    flower_snark,
    goldberg,
    k4,
    k33,
    petersen,
    ten_vertex_c5_example,
    theta,
)
from .graph_core import CubicGraph, GraphError, Matching, MultiGraph
from .matchcolor import PerfectMatching
from itertools import combinations_with_replacement
from .matchcolor import enumerate_perfect_matchings


class ParseError(ValueError):
    """A graph or certificate file failed to parse."""


EXIT_FOUND = 0
EXIT_NONE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def write_graph_file(g: MultiGraph) -> str:
    out = [f"cubic {g.num_vertices} {g.num_edges}"]
    for eid, u, v in g.edges:
        out.append(f"{eid} {u} {v}")
    return "\n".join(out) + "\n"


def parse_graph_file(text: str) -> CubicGraph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty graph file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "cubic":
        raise ParseError(f"bad header {lines[0]!r}; expected 'cubic <n> <m>'")
    try:
        n, m = int(header[1]), int(header[2])
    except ValueError as exc:
        raise ParseError(f"bad header numbers in {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}")
    slots: list[tuple[int, int] | None] = [None] * m
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"bad edge line {line!r}")
        try:
            eid, u, v = (int(p) for p in parts)
        except ValueError as exc:
            raise ParseError(f"bad edge line {line!r}") from exc
        if not 0 <= eid < m or slots[eid] is not None:
            raise ParseError(f"edge id {eid} missing, repeated or out of range")
        slots[eid] = (u, v)
    try:
        return CubicGraph(n, [s for s in slots if s is not None])
    except GraphError as exc:
        raise ParseError(f"not a cubic graph: {exc}") from exc


@dataclass(frozen=True)
class Certificate:
    """Parsed certificate: plain edge-id lists, not yet bound to a graph."""

    kind: str
    matchings: tuple[tuple[int, ...], ...]
    m: tuple[int, ...] | None = None
    n: tuple[int, ...] | None = None


def write_certificate(cert: Certificate) -> str:
    out = [f"certificate {cert.kind}"]
    if cert.kind == "ffamily":
        out.append("m " + " ".join(str(e) for e in cert.m))
        for mem in cert.matchings:
            out.append(("member " + " ".join(str(e) for e in mem)).rstrip())
        out.append(("n " + " ".join(str(e) for e in cert.n)).rstrip())
    else:
        for mem in cert.matchings:
            out.append(("matching " + " ".join(str(e) for e in mem)).rstrip())
    return "\n".join(out) + "\n"


def certificate_of_triple(t: FRTriple) -> Certificate:
    return Certificate("fr-triple", tuple(tuple(sorted(m.members)) for m in t.matchings))


def certificate_of_covering(c: FulkersonCovering) -> Certificate:
    return Certificate("covering", tuple(tuple(sorted(m.members)) for m in c.matchings))


def certificate_of_family(f: FFamily) -> Certificate:
    return Certificate("ffamily",
                       tuple(tuple(sorted(m.members)) for m in f.members),
                       m=tuple(sorted(f.m.members)),
                       n=tuple(sorted(f.n_edges.members)))


def parse_certificate(text: str) -> Certificate:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty certificate file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "certificate":
        raise ParseError(f"bad header {lines[0]!r}")
    kind = header[1]

    def ids(parts: list[str]) -> tuple[int, ...]:
        try:
            return tuple(int(p) for p in parts)
        except ValueError as exc:
            raise ParseError(f"bad edge ids in {' '.join(parts)!r}") from exc

    if kind in ("fr-triple", "covering"):
        want = 3 if kind == "fr-triple" else 6
        matchings = []
        for line in lines[1:]:
            parts = line.split()
            if parts[0] != "matching":
                raise ParseError(f"unexpected line {line!r}")
            matchings.append(ids(parts[1:]))
        if len(matchings) != want:
            raise ParseError(f"{kind} needs {want} matchings, found {len(matchings)}")
        return Certificate(kind, tuple(matchings))
    if kind == "ffamily":
        m_ids = None
        n_ids = None
        members = []
        for line in lines[1:]:
            parts = line.split()
            if parts[0] == "m":
                if m_ids is not None:
                    raise ParseError("duplicate m line")
                m_ids = ids(parts[1:])
            elif parts[0] == "member":
                members.append(ids(parts[1:]))
            elif parts[0] == "n":
                if n_ids is not None:
                    raise ParseError("duplicate n line")
                n_ids = ids(parts[1:])
            else:
                raise ParseError(f"unexpected line {line!r}")
        if m_ids is None or n_ids is None or len(members) != 4:
            raise ParseError("ffamily certificate needs m, four members and n")
        return Certificate(kind, tuple(members), m=m_ids, n=n_ids)
    raise ParseError(f"unknown certificate kind {kind!r}")


GEN_FAMILIES = ("petersen", "flower", "goldberg", "theta", "k4", "k33", "cube",
                "doubled-cycle", "ten-c5")


def _generate(family: str, params: Sequence[int]) -> CubicGraph:
    simple = {"petersen": petersen, "theta": theta, "k4": k4, "k33": k33,
              "cube": cube_q3, "ten-c5": ten_vertex_c5_example}
    if family in simple:
        if params:
            raise GraphError(f"{family} takes no parameter")
        return simple[family]()
    if family in ("flower", "goldberg", "doubled-cycle"):
        if len(params) != 1:
            raise GraphError(f"{family} takes exactly one integer parameter")
        k = params[0]
        return {"flower": flower_snark, "goldberg": goldberg,
                "doubled-cycle": doubled_matching_cycle}[family](k)
    raise GraphError(f"unknown family {family!r}")


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        g = _generate(args.family, args.params)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(write_graph_file(g))
    return EXIT_FOUND


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _bind_matchings(g: CubicGraph, cert: Certificate) -> list[PerfectMatching]:
    return [PerfectMatching(g, mem) for mem in cert.matchings]


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        g = parse_graph_file(_read(args.graph))
        cert = parse_certificate(_read(args.certificate))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if cert.kind == "fr-triple":
            m1, m2, m3 = _bind_matchings(g, cert)
            triple = FRTriple(m1, m2, m3)
            print("fr-triple: valid (empty common intersection)")
            return EXIT_FOUND
        if cert.kind == "covering":
            covering = FulkersonCovering(tuple(_bind_matchings(g, cert)))
            report = verify_covering(g, covering)
            if report.ok:
                print("covering: valid (every edge covered exactly twice)")
                return EXIT_FOUND
            for e in report.violations():
                print(f"edge {e}: covered {report.coverage[e]} times")
            return EXIT_NONE
        fam = FFamily(PerfectMatching(g, cert.m),
                      *(Matching(g, mem) for mem in cert.matchings),
                      Matching(g, cert.n))
        report = verify_ffamily(g, fam)
        if report.ok:
            print("ffamily: valid")
            return EXIT_FOUND
        for line in report.diagnostics:
            print(line)
        return EXIT_NONE
    except GraphError as exc:
        print(f"invalid certificate: {exc}")
        return EXIT_NONE


def _search_budget(args: argparse.Namespace) -> Budget:
    return Budget(limit=args.budget)


def cmd_search(args: argparse.Namespace) -> int:
    try:
        g = parse_graph_file(_read(args.graph))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    budget = _search_budget(args)
    certs: list[Certificate] = []
    complete = True
    if args.target == "fr-triple":
        if args.all:
            pms = enumerate_perfect_matchings(g, limit=budget.limit)
            for i, j, k in combinations_with_replacement(range(len(pms)), 3):
                if not budget.spend():
                    break
                if pms[i].members & pms[j].members & pms[k].members:
                    continue
                certs.append(certificate_of_triple(FRTriple(pms[i], pms[j], pms[k])))
            complete = not pms.truncated and not budget.exhausted
        else:
            res = find_fr_triple(g, budget=budget)
            complete = res.complete
            if res.found:
                certs.append(certificate_of_triple(res.value))
    elif args.target == "covering":
        if args.all:
            res_all = enumerate_fulkerson_coverings(g, budget=budget)
            certs = [certificate_of_covering(c) for c in res_all.value]
            complete = res_all.complete
        else:
            res = find_fulkerson_covering(g, strategy=args.strategy, budget=budget)
            complete = res.complete
            if res.found:
                certs.append(certificate_of_covering(res.value))
    else:
        if args.all:
            fam_all = enumerate_ffamilies(g, budget=budget)
            certs = [certificate_of_family(f) for f in fam_all.value]
            complete = fam_all.complete
        else:
            res = find_ffamily(g, budget=budget)
            complete = res.complete
            if res.found:
                certs.append(certificate_of_family(res.value))
    for i, cert in enumerate(certs):
        if i:
            sys.stdout.write("\n")
        sys.stdout.write(write_certificate(cert))
    if certs:
        return EXIT_FOUND
    return EXIT_NONE if complete else EXIT_BUDGET


def _parse_recipe(text: str) -> tuple[CubicGraph, list[DotStep]]:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty recipe")
    base: CubicGraph | None = None
    steps: list[DotStep] = []
    for line in lines:
        parts = line.split()
        fixed = {}
        words = []
        for p in parts:
            if "=" in p:
                key, _, val = p.partition("=")
                if key not in ("e1", "e2", "e3"):
                    raise ParseError(f"unknown step option {key!r}")
                try:
                    fixed[key] = int(val)
                except ValueError as exc:
                    raise ParseError(f"bad value in {p!r}") from exc
            else:
                words.append(p)
        if words[0] == "base":
            if base is not None:
                raise ParseError("duplicate base line")
            try:
                base = _generate(words[1], [int(w) for w in words[2:]])
            except (GraphError, IndexError, ValueError) as exc:
                raise ParseError(f"bad base line {line!r}: {exc}") from exc
        elif words[0] == "dot":
            if len(words) < 3 or words[1] not in ("type1", "type2"):
                raise ParseError(f"bad dot line {line!r}")
            try:
                factor = _generate(words[2], [int(w) for w in words[3:]])
            except (GraphError, ValueError) as exc:
                raise ParseError(f"bad dot factor in {line!r}: {exc}") from exc
            steps.append(DotStep(words[1], factor, **fixed))
        else:
            raise ParseError(f"unknown recipe line {line!r}")
    if base is None:
        raise ParseError("recipe has no base line")
    return base, steps


def cmd_pipeline(args: argparse.Namespace) -> int:
    try:
        base, steps = _parse_recipe(_read(args.recipe))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = iterate_dot_sequence(base, steps)
    except GraphError as exc:
        print(f"pipeline failed: {exc}", file=sys.stderr)
        return EXIT_NONE
    if args.emit_intermediate:
        os.makedirs(args.emit_intermediate, exist_ok=True)
        for i, (graph, _fam) in enumerate(result.stages):
            path = os.path.join(args.emit_intermediate, f"stage{i}.graph")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(write_graph_file(graph))
    sys.stdout.write(write_graph_file(result.graph))
    sys.stdout.write("\n")
    sys.stdout.write(write_certificate(certificate_of_family(result.family)))
    sys.stdout.write("\n")
    sys.stdout.write(write_certificate(certificate_of_covering(result.covering)))
    return EXIT_FOUND


def _edge_annotations(g: CubicGraph, cert: Certificate | None) -> dict[int, str]:
    notes: dict[int, str] = {}
    if cert is None:
        return notes
    if cert.kind in ("fr-triple", "covering"):
        for idx, mem in enumerate(cert.matchings):
            for e in mem:
                notes[e] = notes.get(e, "") + (f",{idx}" if e in notes else f"{idx}")
    else:
        for e in cert.m or ():
            notes[e] = "m"
        for idx, mem in enumerate(cert.matchings):
            for e in mem:
                notes[e] = "ABCD"[idx]
        for e in cert.n or ():
            notes[e] = "n"
    return notes


def cmd_export(args: argparse.Namespace) -> int:
    try:
        g = parse_graph_file(_read(args.graph))
        cert = parse_certificate(_read(args.certificate)) if args.certificate else None
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    notes = _edge_annotations(g, cert)
    if args.format == "dot":
        lines = ["graph cubic {"]
        for v in g.vertices():
            lines.append(f"  {v};")
        for eid, u, v in g.edges:
            label = str(eid) if eid not in notes else f"{eid}:{notes[eid]}"
            lines.append(f'  {u} -- {v} [label="{label}"];')
        lines.append("}")
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_FOUND
    import json

    payload: dict = {
        "n": g.num_vertices,
        "m": g.num_edges,
        "edges": [[eid, u, v] for eid, u, v in g.edges],
    }
    if notes:
        payload["annotations"] = {str(e): notes[e] for e in sorted(notes)}
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fulkerson-lab",
        description="Constructions, searches and verifications around perfect-matching "
                    "coverings of bridgeless cubic graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a named graph family member")
    p_gen.add_argument("family", choices=GEN_FAMILIES)
    p_gen.add_argument("params", nargs="*", type=int)
    p_gen.set_defaults(func=cmd_gen)

    p_verify = sub.add_parser("verify", help="check a certificate against a graph")
    p_verify.add_argument("graph")
    p_verify.add_argument("certificate")
    p_verify.set_defaults(func=cmd_verify)

    p_search = sub.add_parser("search", help="search for a certificate")
    p_search.add_argument("graph")
    p_search.add_argument("target", choices=("fr-triple", "covering", "ffamily"))
    p_search.add_argument("--strategy", choices=_STRATEGIES, default=AUTO)
    p_search.add_argument("--budget", type=int,
                          default=None,
                          help=f"search node budget (default from ${DEFAULT_BUDGET_ENV})")
    p_search.add_argument("--all", action="store_true",
                          help="emit every certificate found, not just the first")
    p_search.add_argument("--threads", type=int, default=1,
                          help="reserved; searches currently run sequentially")
    p_search.set_defaults(func=cmd_search)

    p_pipe = sub.add_parser("pipeline", help="run a dot-product recipe")
    p_pipe.add_argument("recipe")
    p_pipe.add_argument("--emit-intermediate", metavar="DIR",
                        help="write every intermediate graph into DIR")
    p_pipe.add_argument("--threads", type=int, default=1,
                        help="reserved; searches currently run sequentially")
    p_pipe.set_defaults(func=cmd_pipeline)

    p_export = sub.add_parser("export", help="render a graph as DOT or JSON")
    p_export.add_argument("graph")
    p_export.add_argument("--format", choices=("dot", "json"), required=True)
    p_export.add_argument("--certificate", help="annotate edges from a certificate")
    p_export.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
