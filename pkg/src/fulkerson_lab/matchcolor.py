"""Perfect matchings, edge colorings, edge splitting and the shrink pipeline.

The splitting operation doubles each removed matching edge into two
connector paths, so each endpoint of a split edge turns into two degree-2
vertices.  Suppressing all degree-2 vertices then yields cubic components
plus vertexless loops; chains of absorbed edges are recorded so colors can
be pulled back to the original graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .budget import Budget
from .graph_core import (
    CubicGraph,
    Cycle,
    CycleSet,
    EdgeSet,
    GraphError,
    Matching,
    MultiGraph,
    cycle_decomposition,
)


class PerfectMatching(Matching):
    """A matching that saturates every vertex of its host graph."""

    def __init__(self, graph: MultiGraph, members: Iterable[int]):
        super().__init__(graph, members)
        if 2 * len(self.members) != graph.num_vertices:
            raise GraphError("matching does not saturate every vertex")


def _as_matching(g: MultiGraph, a: Matching | Iterable[int]) -> Matching:
    if isinstance(a, Matching):
        if a.graph != g:
            raise GraphError("matching belongs to a different graph")
        return a
    return Matching(g, a)


def _as_perfect(g: MultiGraph, m: PerfectMatching | Iterable[int]) -> PerfectMatching:
    if isinstance(m, PerfectMatching):
        if m.graph != g:
            raise GraphError("matching belongs to a different graph")
        return m
    return PerfectMatching(g, m)


@dataclass(frozen=True)
class EdgeColoring:
    """Proper edge coloring; assignment[eid] is the color of edge eid."""

    graph: MultiGraph
    assignment: tuple[int, ...]
    palette_size: int

    def __post_init__(self) -> None:
        g = self.graph
        if len(self.assignment) != g.num_edges:
            raise GraphError("coloring must assign every edge")
        for c in self.assignment:
            if not 0 <= c < self.palette_size:
                raise GraphError(f"color {c} outside palette")
        for v in g.vertices():
            seen = set()
            for e in g.incident(v):
                if g.is_loop(e):
                    raise GraphError("loops admit no proper edge coloring")
                c = self.assignment[e]
                if c in seen:
                    raise GraphError(f"incident edges at vertex {v} share color {c}")
                seen.add(c)

    def color_of(self, eid: int) -> int:
        return self.assignment[eid]

    def color_class(self, c: int) -> frozenset[int]:
        return frozenset(e for e, col in enumerate(self.assignment) if col == c)

    def classes(self) -> tuple[frozenset[int], ...]:
        return tuple(self.color_class(c) for c in range(self.palette_size))


@dataclass(frozen=True)
class SuppressedGraph:
    """Result of splitting a matching and smoothing all degree-2 vertices.

    components are 3-regular multigraphs on the vertices the splitting left
    untouched; loops lists the vertexless loops as chains of absorbed
    original edge ids.  provenance[i][e] gives, for edge e of component i,
    the ordered original edges it absorbed (the doubled split-edge copies
    are implicit and never listed).
    """

    components: tuple[MultiGraph, ...]
    component_vertices: tuple[tuple[int, ...], ...]
    provenance: tuple[dict[int, tuple[int, ...]], ...]
    loops: tuple[tuple[int, ...], ...]

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    def absorbed_edges(self, component: int, eid: int) -> tuple[int, ...]:
        return self.provenance[component][eid]


@dataclass
class PMEnumeration:
    """All perfect matchings found, with an explicit truncation flag."""

    matchings: tuple[PerfectMatching, ...]
    truncated: bool

    def __iter__(self) -> Iterator[PerfectMatching]:
        return iter(self.matchings)

    def __len__(self) -> int:
        return len(self.matchings)

    def __getitem__(self, i: int) -> PerfectMatching:
        return self.matchings[i]


DEFAULT_PM_LIMIT = 1_000_000


def enumerate_perfect_matchings(g: CubicGraph, limit: int | None = None) -> PMEnumeration:
    """All perfect matchings of g, lexicographic by sorted edge-id tuple.

    Stops after `limit` matchings (default one million) and flags the
    truncation.  An odd vertex count yields the empty, complete enumeration.
    """
    if limit is None:
        limit = DEFAULT_PM_LIMIT
    found: list[frozenset[int]] = []
    truncated = False
    if g.num_vertices % 2 == 1:
        return PMEnumeration((), False)
    saturated = [False] * g.num_vertices

    def backtrack(chosen: list[int]) -> bool:
        # Returns False when the limit got hit and the search must stop.
        v = next((u for u in g.vertices() if not saturated[u]), None)
        if v is None:
            found.append(frozenset(chosen))
            return len(found) < limit
        for e in g.incident(v):
            w = g.other_end(e, v)
            if saturated[w]:
                continue
            saturated[v] = saturated[w] = True
            chosen.append(e)
            ok = backtrack(chosen)
            chosen.pop()
            saturated[v] = saturated[w] = False
            if not ok:
                return False
        return True

    truncated = not backtrack([])
    matchings = tuple(
        PerfectMatching(g, s) for s in sorted(found, key=lambda s: tuple(sorted(s)))
    )
    return PMEnumeration(matchings, truncated)


def find_perfect_matching(
    g: CubicGraph,
    include: Matching | Iterable[int] = (),
    exclude: EdgeSet | Iterable[int] = (),
) -> PerfectMatching | None:
    """First perfect matching (canonical order) containing `include` and avoiding `exclude`."""
    inc = _as_matching(g, include)
    excl = frozenset(exclude.members if isinstance(exclude, EdgeSet) else exclude)
    if inc.members & excl:
        raise GraphError("include and exclude overlap")
    if g.num_vertices % 2 == 1:
        return None
    saturated = [False] * g.num_vertices
    for e in inc:
        u, v = g.endpoints(e)
        saturated[u] = saturated[v] = True

    chosen = list(inc.members)

    def backtrack() -> bool:
        v = next((u for u in g.vertices() if not saturated[u]), None)
        if v is None:
            return True
        for e in g.incident(v):
            if e in excl:
                continue
            w = g.other_end(e, v)
            if saturated[w]:
                continue
            saturated[v] = saturated[w] = True
            chosen.append(e)
            if backtrack():
                return True
            chosen.pop()
            saturated[v] = saturated[w] = False
        return False

    if backtrack():
        return PerfectMatching(g, chosen)
    return None


def is_m_balanced(g: CubicGraph, m: PerfectMatching, a: Matching | Iterable[int]) -> bool:
    """True iff a = m intersect m' for some perfect matching m'."""
    m = _as_perfect(g, m)
    a = _as_matching(g, a)
    if not a.members <= m.members:
        raise GraphError("the candidate set must be a subset of the perfect matching")
    return find_perfect_matching(g, a, m.members - a.members) is not None


def split_and_suppress(
    g: CubicGraph,
    a: Matching | Iterable[int],
    partner: Matching | Iterable[int] | None = None,
) -> SuppressedGraph:
    """Split every edge of `a`, then smooth all degree-2 vertices.

    Splitting an edge uv doubles it into two connector paths, one for each
    way of pairing u's two remaining edges with v's.  When `partner` is
    given (a disjoint matching, normally forming alternating cycles with
    `a`), partner edges are paired with partner edges, which is the pairing
    the color-lifting construction relies on; otherwise ends are paired by
    ascending edge id.  Cycles consisting entirely of smoothed vertices
    become vertexless loops.
    """
    a = _as_matching(g, a)
    partner_set: frozenset[int]
    if partner is not None:
        p = _as_matching(g, partner)
        if p.members & a.members:
            raise GraphError("partner matching must be disjoint from the split matching")
        partner_set = p.members
    else:
        partner_set = frozenset()

    saturating: dict[int, int] = {}
    for e in a:
        u, v = g.endpoints(e)
        saturating[u] = e
        saturating[v] = e

    # jump[(edge, vertex)] -> (edge', vertex') linked through the split of
    # the a-edge at `vertex`; following it continues a suppression chain.
    jump: dict[tuple[int, int], tuple[int, int]] = {}
    for e in a:
        u, v = g.endpoints(e)
        u_rest = sorted(x for x in g.incident(u) if x != e)
        v_rest = sorted(x for x in g.incident(v) if x != e)
        if len(u_rest) != 2 or len(v_rest) != 2:
            raise GraphError("split endpoint is not cubic")

        def order(rest: list[int]) -> list[int]:
            in_p = [x for x in rest if x in partner_set]
            if len(in_p) == 1:
                other = rest[0] if rest[1] == in_p[0] else rest[1]
                return [in_p[0], other]
            return rest

        for eu, ev in zip(order(u_rest), order(v_rest)):
            jump[(eu, u)] = (ev, v)
            jump[(ev, v)] = (eu, u)

    survivors = [v for v in g.vertices() if v not in saturating]
    visited_darts: set[tuple[int, int]] = set()
    chains: list[tuple[int, tuple[int, ...], int]] = []  # (start vertex, chain, end vertex)

    def walk(e: int, u: int) -> tuple[tuple[int, ...], int]:
        # Follow the chain entered on edge e from survivor u; returns the
        # absorbed edges and the survivor at the far end.
        chain = [e]
        visited_darts.add((e, u))
        cur_edge, cur_from = e, u
        while True:
            w = g.other_end(cur_edge, cur_from)
            visited_darts.add((cur_edge, w))
            if w not in saturating:
                return tuple(chain), w
            cur_edge, cur_from = jump[(cur_edge, w)]
            visited_darts.add((cur_edge, cur_from))
            chain.append(cur_edge)

    for u in survivors:
        for e in g.incident(u):
            if (e, u) in visited_darts:
                continue
            chain, w = walk(e, u)
            chains.append((u, chain, w))

    loops: list[tuple[int, ...]] = []
    for e in sorted(set(g.edge_ids()) - set(a.members)):
        u, v = g.endpoints(e)
        if (e, u) in visited_darts or (e, v) in visited_darts:
            continue
        # Entirely inside smoothed territory: a vertexless loop.
        chain = [e]
        visited_darts.add((e, u))
        visited_darts.add((e, v))
        cur_edge, cur_from = jump[(e, v)]
        while cur_edge != e:
            visited_darts.add((cur_edge, cur_from))
            chain.append(cur_edge)
            nxt = g.other_end(cur_edge, cur_from)
            visited_darts.add((cur_edge, nxt))
            cur_edge, cur_from = jump[(cur_edge, nxt)]
        loops.append(tuple(chain))

    # Group survivors into connected components of the suppressed graph.
    parent = {v: v for v in survivors}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, _, w in chains:
        parent[find(u)] = find(w)
    roots: dict[int, int] = {}
    comp_vertices: list[list[int]] = []
    for v in survivors:
        r = find(v)
        if r not in roots:
            roots[r] = len(comp_vertices)
            comp_vertices.append([])
        comp_vertices[roots[r]].append(v)

    components = []
    vertex_tuples = []
    provenance = []
    for verts in comp_vertices:
        local = {v: i for i, v in enumerate(verts)}
        edge_list = []
        prov: dict[int, tuple[int, ...]] = {}
        # Order edges by their absorbed chains so an empty split reproduces
        # the input graph edge-for-edge.
        for u, chain, w in sorted((c for c in chains if c[0] in local),
                                  key=lambda c: c[1]):
            prov[len(edge_list)] = chain
            if len(chain) == 1:
                a, b = g.endpoints(chain[0])  # keep original orientation
                edge_list.append((local[a], local[b]))
            else:
                edge_list.append((local[u], local[w]))
        components.append(MultiGraph(len(verts), edge_list))
        vertex_tuples.append(tuple(verts))
        provenance.append(prov)
    return SuppressedGraph(tuple(components), tuple(vertex_tuples),
                           tuple(provenance), tuple(loops))


def _edge_coloring_search(
    g: MultiGraph,
    colors: int,
    fix_first_vertex: bool,
    collect_all: bool,
    budget: Budget | None = None,
) -> list[tuple[int, ...]]:
    """Deterministic backtracking proper edge coloring.

    Picks the uncolored edge with the fewest available colors (ties by id);
    optionally pre-colors the lowest vertex's edges 0, 1, 2, ... which
    breaks global color symmetry without losing existence.
    """
    m = g.num_edges
    if g.has_loops():
        return []
    if m == 0:
        return [()]
    assignment = [-1] * m
    used: list[set[int]] = [set() for _ in range(g.num_vertices)]
    solutions: list[tuple[int, ...]] = []

    def place(e: int, c: int) -> None:
        assignment[e] = c
        u, v = g.endpoints(e)
        used[u].add(c)
        used[v].add(c)

    def unplace(e: int) -> None:
        c = assignment[e]
        assignment[e] = -1
        u, v = g.endpoints(e)
        used[u].discard(c)
        used[v].discard(c)

    if fix_first_vertex and g.num_vertices:
        anchor = min(v for v in g.vertices() if g.degree(v) > 0)
        for c, e in enumerate(g.incident(anchor)):
            if c >= colors or c in used[g.other_end(e, anchor)]:
                return []
            place(e, c)

    def options(e: int) -> list[int]:
        u, v = g.endpoints(e)
        taken = used[u] | used[v]
        return [c for c in range(colors) if c not in taken]

    def search() -> bool:
        # Returns True when the whole search must stop (solution found in
        # existence mode, or budget exhausted).
        if budget is not None and not budget.spend():
            return True
        best_e = -1
        best_opts: list[int] = []
        for e in range(m):
            if assignment[e] != -1:
                continue
            opts = options(e)
            if not opts:
                return False  # dead end, backtrack
            if best_e == -1 or len(opts) < len(best_opts):
                best_e, best_opts = e, opts
                if len(opts) == 1:
                    break
        if best_e == -1:
            solutions.append(tuple(assignment))
            return not collect_all
        for c in best_opts:
            place(best_e, c)
            done = search()
            unplace(best_e)
            if done:
                return True
        return False

    search()
    return solutions


def three_edge_coloring(g: MultiGraph, budget: Budget | None = None) -> EdgeColoring | None:
    """A proper 3-edge-coloring, or None when none exists."""
    sols = _edge_coloring_search(g, 3, fix_first_vertex=True, collect_all=False,
                                 budget=budget)
    if not sols:
        return None
    return EdgeColoring(g, sols[0], 3)


def three_edge_colorable(s: SuppressedGraph,
                         budget: Budget | None = None) -> list[EdgeColoring] | None:
    """Per-component 3-edge-colorings of a suppressed graph, or None.

    Vertexless loops take any color and never obstruct; a suppressed graph
    with no cubic components is vacuously colorable (empty list).
    """
    colorings = []
    for comp in s.components:
        col = three_edge_coloring(comp, budget=budget)
        if col is None:
            return None
        colorings.append(col)
    return colorings


def _canonical_color_form(assignment: tuple[int, ...], colors: int) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(colors)):
        mapped = tuple(perm[c] for c in assignment)
        if best is None or mapped < best:
            best = mapped
    return best


def enumerate_three_edge_colorings(g: MultiGraph) -> list[EdgeColoring]:
    """All proper 3-edge-colorings up to global color permutation.

    Each orbit is represented by its lexicographically minimal assignment;
    the list is sorted by that assignment.
    """
    raw = _edge_coloring_search(g, 3, fix_first_vertex=True, collect_all=True)
    reps = sorted({_canonical_color_form(sol, 3) for sol in raw})
    return [EdgeColoring(g, rep, 3) for rep in reps]


def color_classes_as_matchings(c: EdgeColoring) -> tuple[PerfectMatching, ...]:
    """The color classes of a cubic graph's 3-edge-coloring, as perfect matchings."""
    return tuple(PerfectMatching(c.graph, c.color_class(i)) for i in range(c.palette_size))


def phi_two_factor(c: EdgeColoring, x: int, y: int) -> CycleSet:
    """The even cycles induced by the two color classes x and y."""
    if x == y:
        raise GraphError("the two colors must differ")
    edges = [e for e in range(c.graph.num_edges) if c.assignment[e] in (x, y)]
    return cycle_decomposition(c.graph, edges)


def kempe_exchange(c: EdgeColoring, x: int, y: int,
                   cycle: Cycle | Sequence[int]) -> EdgeColoring:
    """Swap colors x and y along one cycle of the 2-factor of x and y."""
    if x == y:
        raise GraphError("the two colors must differ")
    g = c.graph
    if isinstance(cycle, Cycle):
        cycle_edges = list(cycle.edges)
    else:
        verts = list(cycle)
        if len(verts) < 2:
            raise GraphError("a cycle needs at least two vertices")
        cycle_edges = []
        for i, u in enumerate(verts):
            v = verts[(i + 1) % len(verts)]
            cands = [e for e in g.edges_between(u, v)
                     if c.assignment[e] in (x, y) and e not in cycle_edges]
            if not cands:
                raise GraphError(f"no {x}/{y}-colored edge between {u} and {v}")
            cycle_edges.append(cands[0])
    for e in cycle_edges:
        if c.assignment[e] not in (x, y):
            raise GraphError(f"edge {e} on the cycle is not colored {x} or {y}")
    new_assignment = list(c.assignment)
    for e in cycle_edges:
        new_assignment[e] = y if c.assignment[e] == x else x
    return EdgeColoring(g, tuple(new_assignment), c.palette_size)


def two_factor_cycles(g: CubicGraph, m: PerfectMatching | Iterable[int]) -> CycleSet:
    """Cycles of the 2-factor complementary to a perfect matching."""
    m = _as_perfect(g, m)
    return cycle_decomposition(g, set(g.edge_ids()) - m.members)


def _chordless(g: MultiGraph, cyc: Cycle) -> bool:
    verts = cyc.vertices
    k = len(verts)
    for i in range(k):
        for j in range(i + 1, k):
            if (j - i) % k in (1, k - 1):
                continue
            if g.edges_between(verts[i], verts[j]):
                return False
    return True


def find_c5_two_factor(g: CubicGraph) -> tuple[PerfectMatching, CycleSet] | None:
    """A perfect matching whose complement is a 2-factor of chordless 5-cycles."""
    if g.num_vertices % 5 != 0 or g.num_vertices % 2 == 1:
        return None
    for m in enumerate_perfect_matchings(g):
        cs = two_factor_cycles(g, m)
        if all(len(c) == 5 and _chordless(g, c) for c in cs):
            return m, cs
    return None


@dataclass(frozen=True)
class ShrinkResult:
    """5-regular multigraph obtained by contracting each 5-cycle to a vertex.

    Vertex i of the graph is cycles[i]; edge_origin maps each output edge
    id to the perfect matching edge it came from.
    """

    graph: MultiGraph
    cycles: CycleSet
    edge_origin: tuple[int, ...]


def shrink_to_gstar(g: CubicGraph, m: PerfectMatching | Iterable[int],
                    cs: CycleSet) -> ShrinkResult:
    """Contract every cycle of a chordless-C5 2-factor to a single vertex."""
    m = _as_perfect(g, m)
    if cs != two_factor_cycles(g, m):
        raise GraphError("cycle set is not the 2-factor of the matching")
    for c in cs:
        if len(c) != 5 or not _chordless(g, c):
            raise GraphError("every 2-factor cycle must be a chordless 5-cycle")
    which_cycle: dict[int, int] = {}
    for i, c in enumerate(cs):
        for v in c.vertices:
            which_cycle[v] = i
    edge_list = []
    origin = []
    for e in sorted(m.members):
        u, v = g.endpoints(e)
        edge_list.append((which_cycle[u], which_cycle[v]))
        origin.append(e)
    return ShrinkResult(MultiGraph(len(cs), edge_list), cs, tuple(origin))


def five_edge_coloring(gstar: MultiGraph, budget: Budget | None = None) -> EdgeColoring | None:
    """A proper 5-edge-coloring of a 5-regular multigraph, or None."""
    for v in gstar.vertices():
        if gstar.degree(v) != 5:
            raise GraphError(f"vertex {v} has degree {gstar.degree(v)}, expected 5")
    sols = _edge_coloring_search(gstar, 5, fix_first_vertex=True, collect_all=False,
                                 budget=budget)
    if not sols:
        return None
    return EdgeColoring(gstar, sols[0], 5)
