"""FR-triples, their T-partitions, compatibility, and covering search.

An FR-triple is three perfect matchings with empty common intersection;
T_i collects the edges it covers exactly i times.  Two FR-triples whose
T_0/T_2 partitions swap places assemble into six perfect matchings covering
every edge exactly twice, and conversely.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable

from .budget import Budget, SearchResult
from .graph_core import CubicGraph, EdgeSet, GraphError, Matching, cycle_decomposition
from .matchcolor import (
    EdgeColoring,
    PerfectMatching,
    color_classes_as_matchings,
    enumerate_perfect_matchings,
    enumerate_three_edge_colorings,
    kempe_exchange,
    phi_two_factor,
    split_and_suppress,
    three_edge_colorable,
    three_edge_coloring,
    _as_matching,
)


class LiftError(GraphError):
    """A precondition of the FR-triple lifting construction failed."""


@dataclass(frozen=True)
class FRTriple:
    """Three perfect matchings with empty common intersection."""

    m1: PerfectMatching
    m2: PerfectMatching
    m3: PerfectMatching

    def __post_init__(self) -> None:
        if not (self.m1.graph == self.m2.graph == self.m3.graph):
            raise GraphError("triple members live on different graphs")
        if self.m1.members & self.m2.members & self.m3.members:
            raise GraphError("triple members have a common edge")

    @property
    def graph(self) -> CubicGraph:
        return self.m1.graph

    @property
    def matchings(self) -> tuple[PerfectMatching, PerfectMatching, PerfectMatching]:
        return (self.m1, self.m2, self.m3)


@dataclass(frozen=True)
class TPartition:
    """Edges covered 0, 1 and 2 times by an FR-triple."""

    t0: EdgeSet
    t1: EdgeSet
    t2: EdgeSet


@dataclass(frozen=True)
class FulkersonCovering:
    """An ordered multiset of six perfect matchings (coverage checked separately)."""

    matchings: tuple[PerfectMatching, ...]

    def __post_init__(self) -> None:
        if len(self.matchings) != 6:
            raise GraphError("a covering needs exactly six matchings")
        g = self.matchings[0].graph
        if any(m.graph != g for m in self.matchings):
            raise GraphError("covering members live on different graphs")

    @property
    def graph(self) -> CubicGraph:
        return self.matchings[0].graph


@dataclass(frozen=True)
class CoverageReport:
    """Per-edge coverage of a candidate covering."""

    ok: bool
    coverage: tuple[int, ...]

    def violations(self) -> tuple[int, ...]:
        return tuple(e for e, c in enumerate(self.coverage) if c != 2)


def t_partition(g: CubicGraph, t: FRTriple) -> TPartition:
    """The three-way partition of E(g) by coverage multiplicity under t."""
    if t.graph != g:
        raise GraphError("triple belongs to a different graph")
    counts = Counter()
    for m in t.matchings:
        counts.update(m.members)
    buckets: list[set[int]] = [set(), set(), set()]
    for e in g.edge_ids():
        buckets[counts.get(e, 0)].add(e)
    part = TPartition(EdgeSet(g, buckets[0]), EdgeSet(g, buckets[1]),
                      EdgeSet(g, buckets[2]))
    # T0 and T2 are always disjoint matchings for a genuine FR-triple; a
    # failure here indicates a corrupted triple.
    Matching(g, part.t0.members)
    Matching(g, part.t2.members)
    if part.t0.members & part.t2.members:
        raise GraphError("internal invariant failure: T0 and T2 intersect")
    return part


def verify_covering(g: CubicGraph, f: FulkersonCovering) -> CoverageReport:
    """Check that every edge of g lies in exactly two members of f."""
    if f.graph != g:
        raise GraphError("covering belongs to a different graph")
    counts = Counter()
    for m in f.matchings:
        counts.update(m.members)
    coverage = tuple(counts.get(e, 0) for e in g.edge_ids())
    return CoverageReport(all(c == 2 for c in coverage), coverage)


def are_compatible(t: FRTriple, t2: FRTriple) -> bool:
    """True iff the T0 of each triple is the T2 of the other."""
    if t.graph != t2.graph:
        raise GraphError("triples live on different graphs")
    p, q = t_partition(t.graph, t), t_partition(t2.graph, t2)
    return p.t0.members == q.t2.members and p.t2.members == q.t0.members


def covering_from_compatible(t: FRTriple, t2: FRTriple) -> FulkersonCovering:
    """Merge two compatible FR-triples into a verified Fulkerson covering."""
    if not are_compatible(t, t2):
        raise GraphError("the triples are not compatible")
    covering = FulkersonCovering(t.matchings + t2.matchings)
    report = verify_covering(t.graph, covering)
    if not report.ok:
        raise GraphError("internal invariant failure: compatible triples do not cover")
    return covering


def fr_triple_from_matchings(g: CubicGraph, a1: Matching | Iterable[int],
                             a2: Matching | Iterable[int]) -> FRTriple:
    """Lift a 3-edge-coloring of the suppressed graph into an FR-triple.

    a1 and a2 must be disjoint matchings whose union is a disjoint union of
    (necessarily even, alternating) cycles, and splitting a1 must leave a
    3-edge-colorable graph.  The returned triple has T2 = a1 and T0 = a2:
    chain colors are pulled back through the suppression provenance, each
    a1 edge takes the two colors its neighboring chains avoid, and a2 edges
    stay uncovered.
    """
    a1 = _as_matching(g, a1)
    a2 = _as_matching(g, a2)
    if a1.members & a2.members:
        raise LiftError("a1 and a2 are not disjoint")
    try:
        cycle_decomposition(g, a1.members | a2.members)
    except GraphError as exc:
        raise LiftError(f"a1 and a2 do not form a disjoint union of cycles: {exc}") from exc
    suppressed = split_and_suppress(g, a1, partner=a2)
    colorings = three_edge_colorable(suppressed)
    if colorings is None:
        raise LiftError("the suppressed graph of a1 is not 3-edge-colorable")

    color_of: dict[int, int] = {}
    for comp_idx, coloring in enumerate(colorings):
        for local_e, chain in suppressed.provenance[comp_idx].items():
            for orig in chain:
                color_of[orig] = coloring.assignment[local_e]
    for chain in suppressed.loops:
        in_a2 = [e in a2.members for e in chain]
        if any(in_a2):
            if not all(in_a2):
                raise GraphError("internal invariant failure: mixed suppression loop")
            continue  # partner-edge loops stay uncovered
        for e in chain:
            color_of[e] = 0  # free choice, constant along the loop

    classes: list[set[int]] = [set(), set(), set()]
    for e, c in color_of.items():
        classes[c].add(e)
    for e in a1:
        u, v = g.endpoints(e)
        excluded = a1.members | a2.members
        third_u = next(x for x in g.incident(u) if x not in excluded)
        third_v = next(x for x in g.incident(v) if x not in excluded)
        cu, cv = color_of[third_u], color_of[third_v]
        if cu != cv:
            raise GraphError("internal invariant failure: chain colors disagree at a split edge")
        for c in range(3):
            if c != cu:
                classes[c].add(e)

    triple = FRTriple(*(PerfectMatching(g, cls) for cls in classes))
    part = t_partition(g, triple)
    if part.t2.members != a1.members or part.t0.members != a2.members:
        raise GraphError("internal invariant failure: lift produced a wrong partition")
    return triple


def find_fr_triple(g: CubicGraph, budget: Budget | None = None) -> SearchResult[FRTriple]:
    """First FR-triple over enumerated perfect matchings, canonical order.

    Falls back to searching alternating-cycle matching pairs when the
    matching enumeration is truncated; an exhausted budget yields an
    explicit unknown, never a claimed absence.
    """
    if budget is None:
        budget = Budget()
    pm_limit = budget.limit if budget.limit is not None else None
    pms = enumerate_perfect_matchings(g, limit=pm_limit)
    for i, j, k in combinations_with_replacement(range(len(pms)), 3):
        if not budget.spend():
            return SearchResult(None, False)
        if pms[i].members & pms[j].members & pms[k].members:
            continue
        return SearchResult(FRTriple(pms[i], pms[j], pms[k]), True)
    if not pms.truncated:
        return SearchResult(None, True)
    # Truncated enumeration: look for matching pairs whose symmetric
    # difference forms alternating cycles with a 3-edge-colorable split.
    for i, j in combinations_with_replacement(range(len(pms)), 2):
        if not budget.spend(10):
            return SearchResult(None, False)
        a1 = pms[i].members - pms[j].members
        a2 = pms[j].members - pms[i].members
        try:
            return SearchResult(fr_triple_from_matchings(g, a1, a2), False)
        except LiftError:
            continue
    return SearchResult(None, False)


COLOR = "color"
EXACT2COVER = "exact2cover"
A1A2 = "a1a2"
AUTO = "auto"
_STRATEGIES = (COLOR, EXACT2COVER, A1A2, AUTO)


def _covering_by_color(g: CubicGraph, budget: Budget) -> SearchResult[FulkersonCovering]:
    coloring = three_edge_coloring(g, budget=budget)
    if coloring is None:
        # Failure to 3-color never proves a covering absent.
        return SearchResult(None, False)
    classes = color_classes_as_matchings(coloring)
    covering = FulkersonCovering(tuple(classes) + tuple(classes))
    if not verify_covering(g, covering).ok:
        raise GraphError("internal invariant failure: doubled coloring does not cover")
    return SearchResult(covering, False)


def _covering_by_exact_cover(g: CubicGraph, budget: Budget) -> SearchResult[FulkersonCovering]:
    """Exact multiset cover over the matching incidence matrix.

    Chooses six enumerated perfect matchings (repetition allowed) so that
    every edge row sums to 2; depth-first, branching on the edge with the
    fewest usable matchings.
    """
    pms = enumerate_perfect_matchings(g, limit=budget.limit)
    if not pms.matchings:
        return SearchResult(None, not pms.truncated)
    by_edge: dict[int, list[int]] = {e: [] for e in g.edge_ids()}
    for idx, pm in enumerate(pms):
        for e in pm:
            by_edge[e].append(idx)
    need = [2] * g.num_edges
    chosen: list[int] = []
    out: list[FulkersonCovering] = []

    def usable(idx: int) -> bool:
        return all(need[e] >= 1 for e in pms[idx].members)

    def dfs() -> bool:
        if not budget.spend():
            return True
        if len(chosen) == 6:
            if all(c == 0 for c in need):
                out.append(FulkersonCovering(tuple(pms[i] for i in chosen)))
                return True
            return False
        open_edges = [e for e in g.edge_ids() if need[e] > 0]
        if not open_edges:
            return False
        branch = min(open_edges, key=lambda e: (sum(1 for i in by_edge[e] if usable(i)), e))
        for idx in by_edge[branch]:
            if not usable(idx):
                continue
            chosen.append(idx)
            for e in pms[idx].members:
                need[e] -= 1
            stop = dfs()
            for e in pms[idx].members:
                need[e] += 1
            chosen.pop()
            if stop:
                return True
        return False

    dfs()
    if out:
        covering = out[0]
        if not verify_covering(g, covering).ok:
            raise GraphError("internal invariant failure: exact cover result does not cover")
        return SearchResult(covering, True)
    complete = not pms.truncated and not budget.exhausted
    return SearchResult(None, complete)


def _covering_by_a1a2(g: CubicGraph, budget: Budget) -> SearchResult[FulkersonCovering]:
    """Search matching pairs (T2, T0) of FR-triples per the splitting criterion.

    Every FR-triple built from enumerated matchings supplies a candidate
    pair (a1, a2) = (T2, T0); when the split of a2 is also 3-edge-colorable
    the double lift yields two compatible triples, hence a covering.  The
    search is complete relative to a complete matching enumeration.
    """
    pms = enumerate_perfect_matchings(g, limit=budget.limit)
    seen_pairs: set[tuple[frozenset[int], frozenset[int]]] = set()
    for i, j, k in combinations_with_replacement(range(len(pms)), 3):
        if not budget.spend():
            return SearchResult(None, False)
        if pms[i].members & pms[j].members & pms[k].members:
            continue
        triple = FRTriple(pms[i], pms[j], pms[k])
        part = t_partition(g, triple)
        key = (part.t2.members, part.t0.members)
        if key in seen_pairs:
            continue
        seen_pairs.add(key)
        a1 = Matching(g, part.t2.members)
        a2 = Matching(g, part.t0.members)
        try:
            lifted = fr_triple_from_matchings(g, a1, a2)
            partner = fr_triple_from_matchings(g, a2, a1)
        except LiftError:
            continue
        return SearchResult(covering_from_compatible(lifted, partner), True)
    return SearchResult(None, not pms.truncated and not budget.exhausted)


def enumerate_fulkerson_coverings(g: CubicGraph,
                                  budget: Budget | None = None
                                  ) -> SearchResult[list[FulkersonCovering]]:
    """All coverings (as multisets of enumerated matchings), canonical order."""
    if budget is None:
        budget = Budget()
    pms = enumerate_perfect_matchings(g, limit=budget.limit)
    by_edge: dict[int, list[int]] = {e: [] for e in g.edge_ids()}
    for idx, pm in enumerate(pms):
        for e in pm:
            by_edge[e].append(idx)
    need = [2] * g.num_edges
    chosen: list[int] = []
    seen: set[tuple[tuple[int, ...], ...]] = set()
    out: list[FulkersonCovering] = []

    def dfs() -> None:
        if not budget.spend():
            return
        if len(chosen) == 6:
            if all(c == 0 for c in need):
                key = tuple(sorted(tuple(sorted(pms[i].members)) for i in chosen))
                if key not in seen:
                    seen.add(key)
                    members = sorted(chosen)
                    out.append(FulkersonCovering(tuple(pms[i] for i in members)))
            return
        open_edges = [e for e in g.edge_ids() if need[e] > 0]
        if not open_edges:
            return

        def usable(idx: int) -> bool:
            return all(need[e] >= 1 for e in pms[idx].members)

        branch = min(open_edges, key=lambda e: (sum(1 for i in by_edge[e] if usable(i)), e))
        for idx in by_edge[branch]:
            if not usable(idx):
                continue
            chosen.append(idx)
            for e in pms[idx].members:
                need[e] -= 1
            dfs()
            for e in pms[idx].members:
                need[e] += 1
            chosen.pop()

    if pms.matchings:
        dfs()
    out.sort(key=lambda c: tuple(sorted(tuple(sorted(m.members)) for m in c.matchings)))
    return SearchResult(out, not pms.truncated and not budget.exhausted)


def find_fulkerson_covering(g: CubicGraph, strategy: str = AUTO,
                            budget: Budget | None = None) -> SearchResult[FulkersonCovering]:
    """Search for a Fulkerson covering with the requested strategy.

    COLOR doubles a 3-edge-coloring when one exists; EXACT2COVER solves the
    exact multiset cover over enumerated matchings; A1A2 searches disjoint
    matching pairs whose splits are both 3-edge-colorable.  AUTO cascades
    the three.
    """
    strat = strategy.lower()
    if strat not in _STRATEGIES:
        raise GraphError(f"unknown strategy {strategy!r}; expected one of {_STRATEGIES}")
    if budget is None:
        budget = Budget()
    if strat == COLOR:
        return _covering_by_color(g, budget)
    if strat == EXACT2COVER:
        return _covering_by_exact_cover(g, budget)
    if strat == A1A2:
        return _covering_by_a1a2(g, budget)
    result = _covering_by_color(g, budget)
    if result.found:
        return result
    result = _covering_by_exact_cover(g, budget)
    if result.found or result.definitely_absent:
        return result
    return _covering_by_a1a2(g, budget)


def is_proper(f: FulkersonCovering) -> bool:
    """True iff the six matchings are pairwise distinct."""
    return len({m.members for m in f.matchings}) == 6


@dataclass(frozen=True)
class ProperCoveringWitness:
    """A coloring together with two color pairs whose 2-factors are not Hamiltonian."""

    coloring: EdgeColoring
    pairs: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class BiHamiltonianReport:
    is_bi_hamiltonian: bool
    witness: ProperCoveringWitness | None


def is_bi_hamiltonian(g: CubicGraph) -> BiHamiltonianReport:
    """Whether every 3-edge-coloring has at least two Hamiltonian color-pair 2-factors.

    Undefined (an error) for graphs with no 3-edge-coloring.  When false,
    the report carries a witness coloring and two non-Hamiltonian pairs.
    """
    colorings = enumerate_three_edge_colorings(g)
    if not colorings:
        raise GraphError("bi-hamiltonicity is undefined for non-3-edge-colorable graphs")
    for coloring in colorings:
        bad_pairs = []
        for x, y in ((0, 1), (0, 2), (1, 2)):
            cycles = phi_two_factor(coloring, x, y)
            if not (len(cycles) == 1 and len(cycles.cycles[0]) == g.num_vertices):
                bad_pairs.append((x, y))
        if len(bad_pairs) >= 2:
            witness = ProperCoveringWitness(coloring, (bad_pairs[0], bad_pairs[1]))
            return BiHamiltonianReport(False, witness)
    return BiHamiltonianReport(True, None)


def proper_covering_from_witness(g: CubicGraph,
                                 witness: ProperCoveringWitness) -> FulkersonCovering:
    """Build a proper covering by two Kempe exchanges on a witness coloring.

    The witness pairs must share one color (the middle one); one cycle of
    each non-Hamiltonian 2-factor is exchanged, and the six matchings of
    the original and the two exchanged colorings form a proper covering.
    """
    coloring = witness.coloring
    if coloring.graph != g:
        raise GraphError("witness coloring belongs to a different graph")
    (p1, p2) = witness.pairs
    shared = set(p1) & set(p2)
    if len(shared) != 1:
        raise GraphError("witness pairs must share exactly one color")
    beta = shared.pop()
    alpha = next(c for c in p1 if c != beta)
    gamma = next(c for c in p2 if c != beta)

    def exchange(x: int, y: int) -> EdgeColoring:
        cycles = phi_two_factor(coloring, x, y)
        if len(cycles) == 1 and len(cycles.cycles[0]) == g.num_vertices:
            raise GraphError(f"the 2-factor of colors {x},{y} is Hamiltonian")
        target = min(cycles, key=lambda c: c.vertices[0])
        return kempe_exchange(coloring, x, y, target)

    prime = exchange(alpha, beta)
    second = exchange(beta, gamma)

    def pm(col: EdgeColoring, c: int) -> PerfectMatching:
        return PerfectMatching(g, col.color_class(c))

    covering = FulkersonCovering((
        pm(coloring, alpha),
        pm(prime, alpha),
        pm(prime, beta),
        pm(second, beta),
        pm(coloring, gamma),
        pm(second, gamma),
    ))
    report = verify_covering(g, covering)
    if not report.ok:
        raise GraphError("internal invariant failure: witness construction does not cover")
    if not is_proper(covering):
        raise GraphError("internal invariant failure: witness construction not proper")
    return covering
