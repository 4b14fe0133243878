"""F-families: verification, search, covering assembly and dot-product transport.

An F-family for a perfect matching M is four pairwise disjoint M-balanced
matchings whose endpoints meet every odd cycle of the complementary
2-factor once per member, meet even cycles in a 2+2 or 4+0 pattern, and
whose determined vertices pair up along cycle edges (the set N).  Such a
family assembles into a Fulkerson covering, and suitable dot products
transport it to bigger graphs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .budget import Budget, SearchResult
from .generators import DotProductResult, DotProductSpec, dot_product, petersen
from .graph_core import CubicGraph, Cycle, CycleSet, GraphError, Matching
from .matchcolor import (
    PerfectMatching,
    enumerate_perfect_matchings,
    find_c5_two_factor,
    five_edge_coloring,
    is_m_balanced,
    shrink_to_gstar,
    two_factor_cycles,
    _as_matching,
    _as_perfect,
)
from .fulkerson import FulkersonCovering, verify_covering, is_proper


class TransportError(GraphError):
    """A precondition of an F-family-preserving dot product failed."""


@dataclass(frozen=True)
class FFamily:
    """A perfect matching m with four disjoint sub-matchings and the pair set N."""

    m: PerfectMatching
    a: Matching
    b: Matching
    c: Matching
    d: Matching
    n_edges: Matching

    def __post_init__(self) -> None:
        g = self.m.graph
        seen: set[int] = set()
        for mem in self.members:
            if mem.graph != g:
                raise GraphError("family members live on different graphs")
            if not mem.members <= self.m.members:
                raise GraphError("family members must be subsets of the perfect matching")
            if mem.members & seen:
                raise GraphError("family members are not pairwise disjoint")
            seen |= mem.members
        if self.n_edges.graph != g:
            raise GraphError("N lives on a different graph")
        if self.n_edges.members & self.m.members:
            raise GraphError("N must avoid the perfect matching")

    @property
    def members(self) -> tuple[Matching, Matching, Matching, Matching]:
        return (self.a, self.b, self.c, self.d)

    @property
    def graph(self) -> CubicGraph:
        return self.m.graph


@dataclass(frozen=True)
class FFamilyReport:
    ok: bool
    diagnostics: tuple[str, ...]


def _member_positions(g: CubicGraph, cycles: CycleSet,
                      members: Sequence[Matching]) -> list[list[list[int]]]:
    """positions[ci][mi] = sorted cycle positions whose vertex ends an edge of member mi."""
    where = {}
    for ci, cyc in enumerate(cycles):
        for pos, v in enumerate(cyc.vertices):
            where[v] = (ci, pos)
    positions = [[[] for _ in members] for _ in cycles]
    for mi, mem in enumerate(members):
        for e in mem:
            for v in g.endpoints(e):
                ci, pos = where[v]
                positions[ci][mi].append(pos)
    for per_cycle in positions:
        for lst in per_cycle:
            lst.sort()
    return positions


def _arc_gaps(length: int, posns: Sequence[int]) -> list[int]:
    if len(posns) == 1:
        return [length]
    return [(posns[(i + 1) % len(posns)] - p) % length for i, p in enumerate(posns)]


def _pairing_candidates(cycle: Cycle, posns: Sequence[int]) -> list[frozenset[int]]:
    """2-edge cycle matchings covering the four given positions, canonical order."""
    length = len(cycle)
    p1, p2, p3, p4 = sorted(posns)
    cands = []
    if (p2 - p1) % length == 1 and (p4 - p3) % length == 1:
        cands.append(frozenset((cycle.edges[p1], cycle.edges[p3])))
    if (p3 - p2) % length == 1 and (p1 - p4) % length == 1:
        cands.append(frozenset((cycle.edges[p2], cycle.edges[p4])))
    cands.sort(key=lambda s: tuple(sorted(s)))
    return cands


def _cycle_condition(cycle: Cycle, per_member: Sequence[Sequence[int]]) -> str | None:
    """First violated incidence condition on one cycle, or None."""
    counts = [len(p) for p in per_member]
    total = sum(counts)
    if cycle.is_odd:
        if counts != [1, 1, 1, 1]:
            return "an odd cycle must meet each member exactly once"
    else:
        if total == 0:
            return None
        if total != 4 or sorted(c for c in counts if c) not in ([2, 2], [4]):
            return "an even cycle must meet the family in a 2+2 or 4+0 pattern"
    for mi, posns in enumerate(per_member):
        if posns and any(gap % 2 == 0 for gap in _arc_gaps(len(cycle), posns)):
            return f"member {mi} splits the cycle into an even arc (not balanced)"
    all_pos = sorted(p for posns in per_member for p in posns)
    if not _pairing_candidates(cycle, all_pos):
        return "the four determined vertices admit no 2-edge cycle matching"
    return None


def verify_ffamily(g: CubicGraph, fam: FFamily) -> FFamilyReport:
    """Check balancedness and the per-cycle incidence conditions of a family."""
    if fam.graph != g:
        raise GraphError("family belongs to a different graph")
    diagnostics: list[str] = []
    for mi, mem in enumerate(fam.members):
        if not is_m_balanced(g, fam.m, mem):
            diagnostics.append(f"member {mi} is not balanced for the perfect matching")
    cycles = two_factor_cycles(g, fam.m)
    positions = _member_positions(g, cycles, fam.members)
    expected_n: set[int] = set()
    for ci, cyc in enumerate(cycles):
        problem = _cycle_condition(cyc, positions[ci])
        if problem is not None:
            diagnostics.append(f"cycle {ci} (at vertex {cyc.vertices[0]}): {problem}")
            continue
        all_pos = sorted(p for posns in positions[ci] for p in posns)
        if not all_pos:
            continue
        cands = _pairing_candidates(cyc, all_pos)
        chosen = fam.n_edges.members & set(cyc.edges)
        if chosen not in cands:
            diagnostics.append(
                f"cycle {ci} (at vertex {cyc.vertices[0]}): N does not restrict to a "
                "valid 2-edge matching of the determined vertices")
            continue
        expected_n |= chosen
    if not diagnostics and expected_n != fam.n_edges.members:
        diagnostics.append("N contains edges on cycles the family does not meet")
    return FFamilyReport(not diagnostics, tuple(diagnostics))


def derive_n(g: CubicGraph, m: PerfectMatching | Iterable[int],
             members: Sequence[Matching | Iterable[int]]) -> Matching | None:
    """The union of per-cycle 2-edge matchings on the determined vertices.

    Requires the incidence conditions on every cycle (raises otherwise);
    returns None when some met cycle admits no 2-edge cycle matching.
    Ties go to the lexicographically least pairing.
    """
    m = _as_perfect(g, m)
    members = [_as_matching(g, mem) for mem in members]
    if len(members) != 4:
        raise GraphError("an F-family has exactly four members")
    cycles = two_factor_cycles(g, m)
    positions = _member_positions(g, cycles, members)
    n_total: set[int] = set()
    for ci, cyc in enumerate(cycles):
        per_member = positions[ci]
        counts = [len(p) for p in per_member]
        total = sum(counts)
        if total == 0 and not cyc.is_odd:
            continue
        if cyc.is_odd and counts != [1, 1, 1, 1]:
            raise GraphError(f"cycle {ci} violates the odd-cycle incidence condition")
        if not cyc.is_odd and (total != 4 or sorted(c for c in counts if c) not in ([2, 2], [4])):
            raise GraphError(f"cycle {ci} violates the even-cycle incidence condition")
        cands = _pairing_candidates(cyc, sorted(p for posns in per_member for p in posns))
        if not cands:
            return None
        n_total |= cands[0]
    return Matching(g, n_total)


def _alternating_classes(cycle: Cycle) -> tuple[frozenset[int], frozenset[int]]:
    return (frozenset(cycle.edges[0::2]), frozenset(cycle.edges[1::2]))


def _restriction(cycle: Cycle, posns: Sequence[int]) -> frozenset[int]:
    """Cycle-edge matching saturating every cycle vertex except the given positions."""
    length = len(cycle)
    picked: set[int] = set()
    gaps = _arc_gaps(length, posns)
    for p, gap in zip(posns, gaps):
        if gap % 2 == 0:
            raise GraphError("internal invariant failure: even arc in a balanced member")
        for step in range(1, gap - 1, 2):
            picked.add(cycle.edges[(p + step) % length])
    return frozenset(picked)


def covering_from_ffamily(g: CubicGraph, fam: FFamily) -> FulkersonCovering:
    """Assemble the six-matching covering a verified family guarantees.

    Each member extends to a perfect matching by per-cycle restrictions
    (forced wherever the member touches the cycle, a two-way choice
    elsewhere); M' replaces the members inside m by the pair set N.  The
    per-cycle choices are searched independently and the result is
    verified; the six matchings are always pairwise distinct.
    """
    report = verify_ffamily(g, fam)
    if not report.ok:
        raise GraphError("family fails verification: " + "; ".join(report.diagnostics))
    cycles = two_factor_cycles(g, fam.m)
    positions = _member_positions(g, cycles, fam.members)
    extensions: list[set[int]] = [set(mem.members) for mem in fam.members]
    n_total: set[int] = set()
    for ci, cyc in enumerate(cycles):
        per_member = positions[ci]
        fixed: list[frozenset[int] | None] = []
        free_idx: list[int] = []
        for mi in range(4):
            if per_member[mi]:
                fixed.append(_restriction(cyc, per_member[mi]))
            else:
                fixed.append(None)
                free_idx.append(mi)
        all_pos = sorted(p for posns in per_member for p in posns)
        if all_pos:
            cands = _pairing_candidates(cyc, all_pos)
            given = fam.n_edges.members & set(cyc.edges)
            if given in cands:
                cands.sort(key=lambda s: (s != given, tuple(sorted(s))))
        else:
            cands = [frozenset()]
        classes = _alternating_classes(cyc)
        solution = None
        for n_choice in cands:
            base = Counter()
            for e in n_choice:
                base[e] += 1
            for mi in range(4):
                if fixed[mi] is not None:
                    base.update(fixed[mi])
            for combo_bits in range(2 ** len(free_idx)):
                cover = Counter(base)
                picks = []
                for slot, mi in enumerate(free_idx):
                    cls = classes[(combo_bits >> slot) & 1]
                    picks.append((mi, cls))
                    cover.update(cls)
                if all(cover[e] == 2 for e in cyc.edges):
                    solution = (n_choice, picks)
                    break
            if solution:
                break
        if solution is None:
            raise GraphError(
                f"no per-cycle assignment covers cycle {ci} (at vertex "
                f"{cyc.vertices[0]}); family or construction invalid")
        n_choice, picks = solution
        n_total |= n_choice
        for mi in range(4):
            if fixed[mi] is not None:
                extensions[mi] |= fixed[mi]
        for mi, cls in picks:
            extensions[mi] |= cls

    member_union = set()
    for mem in fam.members:
        member_union |= mem.members
    m_prime = (fam.m.members - member_union) | n_total
    covering = FulkersonCovering((
        fam.m,
        PerfectMatching(g, extensions[0]),
        PerfectMatching(g, extensions[1]),
        PerfectMatching(g, extensions[2]),
        PerfectMatching(g, extensions[3]),
        PerfectMatching(g, m_prime),
    ))
    result = verify_covering(g, covering)
    if not result.ok:
        raise GraphError("internal invariant failure: family assembly does not cover")
    if not is_proper(covering):
        raise GraphError("internal invariant failure: family assembly repeats a matching")
    return covering


def _family_csp(g: CubicGraph, m: PerfectMatching, budget: Budget,
                collect: list[FFamily] | None = None) -> FFamily | None:
    """Backtracking label assignment of m-edges to members, cycle by cycle.

    Returns the first family in canonical order, or (with `collect`) keeps
    searching and appends every family found.
    """
    cycles = two_factor_cycles(g, m)
    where = {}
    for ci, cyc in enumerate(cycles):
        for pos, v in enumerate(cyc.vertices):
            where[v] = (ci, pos)
    m_edges = sorted(m.members)
    incident: list[list[int]] = [[] for _ in cycles]
    for e in m_edges:
        touched = {where[v][0] for v in g.endpoints(e)}
        for ci in touched:
            incident[ci].append(e)
    # Short cycles carry the tightest incidence constraints; settle them first.
    order = sorted(range(len(cycles)), key=lambda ci: (len(cycles.cycles[ci]), ci))
    labels: dict[int, int] = {e: -2 for e in m_edges}  # -2 undecided, -1 none, 0..3 member

    def cycle_ok(ci: int) -> bool:
        per_member: list[list[int]] = [[], [], [], []]
        for e in incident[ci]:
            if labels[e] < 0:
                continue
            for v in g.endpoints(e):
                c2, pos = where[v]
                if c2 == ci:
                    per_member[labels[e]].append(pos)
        for lst in per_member:
            lst.sort()
        return _cycle_condition(cycles.cycles[ci], per_member) is None

    def materialize() -> FFamily | None:
        members = [Matching(g, [e for e, lab in labels.items() if lab == mi])
                   for mi in range(4)]
        n = derive_n(g, m, members)
        if n is None:
            return None
        fam = FFamily(m, *members, n)
        report = verify_ffamily(g, fam)
        if not report.ok:
            raise GraphError("internal invariant failure: searched family fails "
                             "verification: " + "; ".join(report.diagnostics))
        return fam

    def hits_on(e: int, ci: int) -> int:
        return sum(1 for v in g.endpoints(e) if where[v][0] == ci)

    def solve(step: int, max_used: int) -> FFamily | None:
        if step == len(order):
            if max_used != 3:
                return None
            fam = materialize()
            if fam is not None and collect is not None:
                collect.append(fam)
                return None
            return fam
        ci = order[step]
        cyc = cycles.cycles[ci]
        undecided = [e for e in incident[ci] if labels[e] == -2]
        member_cap = 1 if cyc.is_odd else 4
        counts = [0, 0, 0, 0]
        for e in incident[ci]:
            if labels[e] >= 0:
                counts[labels[e]] += hits_on(e, ci)

        def assign(idx: int, used: int) -> FFamily | None:
            if not budget.spend():
                return None
            # determined vertices on the cycle never exceed four in total
            if sum(counts) > 4 or any(c > member_cap for c in counts):
                return None
            if idx == len(undecided):
                if not cycle_ok(ci):
                    return None
                return solve(step + 1, used)
            e = undecided[idx]
            hits = hits_on(e, ci)
            for lab in range(-1, min(used + 1, 3) + 1):
                labels[e] = lab
                if lab >= 0:
                    counts[lab] += hits
                res = assign(idx + 1, max(used, lab))
                if lab >= 0:
                    counts[lab] -= hits
                labels[e] = -2
                if res is not None or budget.exhausted:
                    return res
            return None

        return assign(0, max_used)

    return solve(0, -1)


def find_ffamily(g: CubicGraph, m: PerfectMatching | Iterable[int] | None = None,
                 budget: Budget | None = None) -> SearchResult[FFamily]:
    """Search for an F-family, over one matching or all of them.

    Members are required to be nonempty.  Exhausts the space for graphs
    with at most 24 vertices by default; larger graphs run under the node
    budget and report unknown when it is exceeded.
    """
    if budget is None:
        budget = Budget(limit=10 ** 12 if g.num_vertices <= 24 else None)
    if m is not None:
        matchings: Iterable[PerfectMatching] = [_as_perfect(g, m)]
        complete_source = True
    else:
        enum = enumerate_perfect_matchings(g, limit=budget.limit)
        matchings = enum.matchings
        complete_source = not enum.truncated
    for pm in matchings:
        fam = _family_csp(g, pm, budget)
        if fam is not None:
            return SearchResult(fam, True)
        if budget.exhausted:
            return SearchResult(None, False)
    return SearchResult(None, complete_source)


def enumerate_ffamilies(g: CubicGraph, budget: Budget | None = None) -> SearchResult[list[FFamily]]:
    """All F-families over all perfect matchings (canonical order, budget-capped)."""
    if budget is None:
        budget = Budget(limit=10 ** 12 if g.num_vertices <= 24 else None)
    enum = enumerate_perfect_matchings(g, limit=budget.limit)
    out: list[FFamily] = []
    for pm in enum.matchings:
        _family_csp(g, pm, budget, collect=out)
        if budget.exhausted:
            return SearchResult(out, False)
    return SearchResult(out, not enum.truncated)


@dataclass(frozen=True)
class TransportResult:
    """A dot product together with the transported family."""

    product: DotProductResult
    family: FFamily

    @property
    def graph(self) -> CubicGraph:
        return self.product.graph


def _two_odd_cycles(g: CubicGraph, m: PerfectMatching) -> CycleSet:
    cycles = two_factor_cycles(g, m)
    if len(cycles) != 2 or not all(c.is_odd for c in cycles):
        raise TransportError("the 2-factor must consist of exactly two odd cycles")
    return cycles


def _map_matching(result_map: dict[int, int], mem: Matching | PerfectMatching,
                  graph: CubicGraph, drop: frozenset[int] = frozenset()) -> set[int]:
    out = set()
    for e in mem:
        if e in drop:
            continue
        if e not in result_map:
            raise TransportError(f"edge {e} does not survive the dot product")
        out.add(result_map[e])
    return out


def dot_preserve_type1(g1: CubicGraph, m1: PerfectMatching | Iterable[int],
                       g2: CubicGraph, fam2: FFamily, xy: int,
                       spec: DotProductSpec) -> TransportResult:
    """Dot product carrying the second factor's family onto the result.

    g1\\m1 must be exactly two odd cycles holding e1 and e2; xy is an edge
    of fam2.m outside the members whose ends lie on two distinct odd cycles
    of g2's 2-factor, and it is the spec's removed edge e3.  The result's
    matching is m1 plus fam2.m minus xy; the family maps across unchanged.
    """
    m1 = _as_perfect(g1, m1)
    cycles1 = _two_odd_cycles(g1, m1)
    report = verify_ffamily(g2, fam2)
    if not report.ok:
        raise TransportError("the second factor's family fails verification")
    if xy not in fam2.m.members:
        raise TransportError("xy must belong to the second factor's perfect matching")
    if any(xy in mem.members for mem in fam2.members):
        raise TransportError("xy must avoid the family members")
    cycles2 = two_factor_cycles(g2, fam2.m)
    ends = {}
    for ci, cyc in enumerate(cycles2):
        for v in cyc.vertices:
            ends[v] = ci
    u, v = g2.endpoints(xy)
    if ends[u] == ends[v] or not (cycles2.cycles[ends[u]].is_odd
                                  and cycles2.cycles[ends[v]].is_odd):
        raise TransportError("xy must join two distinct odd cycles of the 2-factor")
    if spec.e3 != xy:
        raise TransportError("the spec must remove xy as its e3")
    in_first = spec.e1 in cycles1.cycles[0].edges and spec.e2 in cycles1.cycles[1].edges
    in_second = spec.e2 in cycles1.cycles[0].edges and spec.e1 in cycles1.cycles[1].edges
    if not (in_first or in_second):
        raise TransportError("e1 and e2 must lie on the two distinct odd cycles of g1")
    product = dot_product(g1, g2, spec)
    graph = product.graph
    new_m = _map_matching(product.g1_edges, m1, graph)
    new_m |= _map_matching(product.g2_edges, fam2.m, graph, drop=frozenset((xy,)))
    members = [Matching(graph, _map_matching(product.g2_edges, mem, graph))
               for mem in fam2.members]
    n = Matching(graph, _map_matching(product.g2_edges, fam2.n_edges, graph))
    fam = FFamily(PerfectMatching(graph, new_m), *members, n)
    out = verify_ffamily(graph, fam)
    if not out.ok:
        raise TransportError("transported family fails verification: "
                             + "; ".join(out.diagnostics))
    return TransportResult(product, fam)


def dot_preserve_type2(g1: CubicGraph, fam1: FFamily, xy: int, zt: int,
                       g2: CubicGraph, m2: PerfectMatching | Iterable[int], e3: int,
                       spec: DotProductSpec) -> TransportResult:
    """Dot product carrying the first factor's family onto the result.

    xy and zt are 2-factor edges of g1 outside N (they are the removed e1
    and e2); g2's 2-factor is exactly two odd cycles joined by its matching
    edge e3.
    """
    report = verify_ffamily(g1, fam1)
    if not report.ok:
        raise TransportError("the first factor's family fails verification")
    for name, e in (("xy", xy), ("zt", zt)):
        if e in fam1.m.members:
            raise TransportError(f"{name} must avoid the perfect matching")
        if e in fam1.n_edges.members:
            raise TransportError(f"{name} must avoid N")
    if {spec.e1, spec.e2} != {xy, zt}:
        raise TransportError("the spec must remove exactly xy and zt")
    m2 = _as_perfect(g2, m2)
    cycles2 = _two_odd_cycles(g2, m2)
    if e3 not in m2.members:
        raise TransportError("e3 must belong to the second factor's perfect matching")
    u, v = g2.endpoints(e3)
    on_first = {u, v} & set(cycles2.cycles[0].vertices)
    on_second = {u, v} & set(cycles2.cycles[1].vertices)
    if not (len(on_first) == 1 and len(on_second) == 1):
        raise TransportError("e3 must join the two odd cycles of g2's 2-factor")
    if spec.e3 != e3:
        raise TransportError("the spec must remove e3 from the second factor")
    product = dot_product(g1, g2, spec)
    graph = product.graph
    new_m = _map_matching(product.g1_edges, fam1.m, graph)
    new_m |= _map_matching(product.g2_edges, m2, graph, drop=frozenset((e3,)))
    members = [Matching(graph, _map_matching(product.g1_edges, mem, graph))
               for mem in fam1.members]
    n = Matching(graph, _map_matching(product.g1_edges, fam1.n_edges, graph))
    fam = FFamily(PerfectMatching(graph, new_m), *members, n)
    out = verify_ffamily(graph, fam)
    if not out.ok:
        raise TransportError("transported family fails verification: "
                             + "; ".join(out.diagnostics))
    return TransportResult(product, fam)


@dataclass(frozen=True)
class DotStep:
    """One pipeline step: dot the accumulated graph with `factor`.

    kind "type1" takes the family from the factor (the accumulated graph
    contributes a 2-factor of two odd cycles); kind "type2" keeps the
    accumulated family (the factor contributes the odd-cycle pair).
    Explicit edge choices are optional; omitted ones are searched in
    canonical order.
    """

    kind: str
    factor: CubicGraph
    e1: int | None = None
    e2: int | None = None
    e3: int | None = None


@dataclass(frozen=True)
class PipelineResult:
    graph: CubicGraph
    family: FFamily
    covering: FulkersonCovering
    stages: tuple[tuple[CubicGraph, FFamily], ...]


def _first_two_odd_cycle_pm(g: CubicGraph) -> tuple[PerfectMatching, CycleSet]:
    for pm in enumerate_perfect_matchings(g):
        cycles = two_factor_cycles(g, pm)
        if len(cycles) == 2 and all(c.is_odd for c in cycles):
            return pm, cycles
    raise TransportError("no perfect matching with a two-odd-cycle 2-factor")


def _joining_edge(g: CubicGraph, m: PerfectMatching, cycles: CycleSet,
                  exclude: frozenset[int] = frozenset()) -> int:
    first = set(cycles.cycles[0].vertices)
    for e in sorted(m.members - exclude):
        u, v = g.endpoints(e)
        if (u in first) != (v in first):
            return e
    raise TransportError("no matching edge joins the two odd cycles")


def _step_type1(g1: CubicGraph, step: DotStep) -> TransportResult:
    m1, cycles1 = _first_two_odd_cycle_pm(g1)
    famres = find_ffamily(step.factor)
    if not famres.found:
        raise TransportError("the factor has no F-family to transport")
    fam2 = famres.value
    member_edges = frozenset(e for mem in fam2.members for e in mem)
    cycles2 = two_factor_cycles(step.factor, fam2.m)
    if step.e3 is not None:
        xy = step.e3
    else:
        xy = _joining_edge(step.factor, fam2.m, cycles2, exclude=member_edges)
    e1 = step.e1 if step.e1 is not None else min(cycles1.cycles[0].edges)
    e2 = step.e2 if step.e2 is not None else min(cycles1.cycles[1].edges)
    spec = DotProductSpec(e1=e1, e2=e2, e3=xy)
    return dot_preserve_type1(g1, m1, step.factor, fam2, xy, spec)


def _step_type2(g1: CubicGraph, fam1: FFamily, step: DotStep) -> TransportResult:
    m2, cycles2 = _first_two_odd_cycle_pm(step.factor)
    e3 = step.e3 if step.e3 is not None else _joining_edge(step.factor, m2, cycles2)
    forbidden = fam1.m.members | fam1.n_edges.members
    candidates = [e for e in sorted(g1.edge_ids()) if e not in forbidden]
    if step.e1 is not None and step.e2 is not None:
        pairs: Iterable[tuple[int, int]] = [(step.e1, step.e2)]
    else:
        pairs = combinations(candidates, 2)
    last_error: TransportError | None = None
    for xy, zt in pairs:
        spec = DotProductSpec(e1=xy, e2=zt, e3=e3)
        try:
            return dot_preserve_type2(g1, fam1, xy, zt, step.factor, m2, e3, spec)
        except (TransportError, GraphError) as exc:
            last_error = TransportError(str(exc))
            continue
    raise last_error or TransportError("no valid edge pair for the dot product")


def iterate_dot_sequence(base: CubicGraph, steps: Sequence[DotStep],
                         base_family: FFamily | None = None) -> PipelineResult:
    """Chain family-preserving dot products and assemble the final covering.

    The base graph's family is searched unless supplied; every intermediate
    family is verified by the transport operations themselves.
    """
    if base_family is None:
        famres = find_ffamily(base)
        if not famres.found:
            raise TransportError("the base graph has no F-family")
        base_family = famres.value
    graph, family = base, base_family
    stages: list[tuple[CubicGraph, FFamily]] = [(graph, family)]
    for idx, step in enumerate(steps):
        if step.kind not in ("type1", "type2"):
            raise GraphError(f"unknown dot step kind {step.kind!r}")
        try:
            if step.kind == "type1":
                result = _step_type1(graph, step)
            else:
                result = _step_type2(graph, family, step)
        except TransportError as exc:
            raise TransportError(f"step {idx + 1} failed: {exc}") from exc
        graph, family = result.graph, result.family
        stages.append((graph, family))
    covering = covering_from_ffamily(graph, family)
    return PipelineResult(graph, family, covering, tuple(stages))


@dataclass(frozen=True)
class PetersenExpansion:
    """A Petersen host whose matching edges were replaced by Petersen blocks.

    matching is the perfect matching complementary to the inherited
    2-factor of chordless 5-cycles (two per block).
    """

    graph: CubicGraph
    matching: PerfectMatching
    cycles: CycleSet


def petersen_expansion() -> PetersenExpansion:
    """Blow every matching edge of a Petersen host up into a Petersen block.

    Each of the five host matching edges is consumed as the removed edge of
    a dot product whose other factor is a fresh Petersen (losing two edges
    of the matching complementary to its 5-cycle 2-factor).  The host's
    vertices all vanish, leaving a 50-vertex cubic graph with a 2-factor of
    ten chordless 5-cycles.
    """
    host = petersen()
    host_m = enumerate_perfect_matchings(host)[0]
    current: CubicGraph = host
    pending = sorted(host_m.members)  # ids in the current graph, updated per step
    factor_edges: list[int] = []  # 2-factor edge ids in the current graph

    for _ in range(5):
        block = petersen()
        block_m = enumerate_perfect_matchings(block)[0]
        e1, e2 = sorted(block_m.members)[:2]
        spec = DotProductSpec(e1=e1, e2=e2, e3=pending[0])
        product = dot_product(block, current, spec)
        block_factor = sorted(set(block.edge_ids()) - block_m.members)
        factor_edges = [product.g2_edges[e] for e in factor_edges]
        factor_edges += [product.g1_edges[e] for e in block_factor]
        pending = [product.g2_edges[e] for e in pending[1:]]
        current = product.graph

    m = PerfectMatching(current, set(current.edge_ids()) - set(factor_edges))
    cycles = two_factor_cycles(current, m)
    return PetersenExpansion(current, m, cycles)


@dataclass(frozen=True)
class C5StructureResult:
    """Outcome of the chordless-C5 2-factor covering pipeline."""

    covering: FulkersonCovering | None
    reason: str | None
    family: FFamily | None = None

    @property
    def found(self) -> bool:
        return self.covering is not None


def covering_from_c5_structure(g: CubicGraph) -> C5StructureResult:
    """Covering via contraction of a chordless-C5 2-factor.

    Finds a 2-factor of chordless 5-cycles, contracts it to a 5-regular
    multigraph, 5-edge-colors that, and pulls four color classes back as
    an F-family for the complementary matching.
    """
    found = find_c5_two_factor(g)
    if found is None:
        return C5StructureResult(None, "no 2-factor of chordless 5-cycles")
    m, cycles = found
    shrunk = shrink_to_gstar(g, m, cycles)
    coloring = five_edge_coloring(shrunk.graph)
    if coloring is None:
        return C5StructureResult(None, "the contracted graph is not 5-edge-colorable")
    members = []
    for color in range(4):
        members.append(Matching(g, (shrunk.edge_origin[e]
                                    for e in coloring.color_class(color))))
    n = derive_n(g, m, members)
    if n is None:
        raise GraphError("internal invariant failure: color classes admit no pair set")
    fam = FFamily(m, *members, n)
    report = verify_ffamily(g, fam)
    if not report.ok:
        raise GraphError("internal invariant failure: color-class family fails verification: "
                         + "; ".join(report.diagnostics))
    return C5StructureResult(covering_from_ffamily(g, fam), None, fam)
