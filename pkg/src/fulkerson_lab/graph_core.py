"""Multigraph primitives shared by every other module.

Edges carry dense integer identities (0..m-1) and parallel edges are
first-class citizens: an edge is always addressed by its id, never by its
endpoint pair.  All graph objects are immutable after construction and
therefore safe to share between concurrent searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised when a graph, edge set or operation precondition is violated."""


class MultiGraph:
    """Undirected multigraph with dense vertex ids and dense edge ids.

    Parallel edges are allowed.  Self-loops are allowed at this level (they
    only ever appear in suppressed graphs); a loop contributes 2 to the
    degree of its vertex.
    """

    __slots__ = ("_n", "_edges", "_adj")

    def __init__(self, num_vertices: int, edge_list: Iterable[tuple[int, int]]):
        if num_vertices < 0:
            raise GraphError("vertex count must be non-negative")
        edges = []
        adj: list[list[int]] = [[] for _ in range(num_vertices)]
        for eid, (u, v) in enumerate(edge_list):
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise GraphError(f"edge {eid} endpoint out of range: ({u}, {v})")
            edges.append((eid, u, v))
            adj[u].append(eid)
            if v != u:
                adj[v].append(eid)
        self._n = num_vertices
        self._edges = tuple(edges)
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    @property
    def num_vertices(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self._n)

    def edge_ids(self) -> range:
        return range(len(self._edges))

    @property
    def edges(self) -> tuple[tuple[int, int, int], ...]:
        """All edges as (edge_id, endpoint_a, endpoint_b) triples."""
        return self._edges

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self._edges[eid][1], self._edges[eid][2]

    def is_loop(self, eid: int) -> bool:
        _, u, v = self._edges[eid]
        return u == v

    def other_end(self, eid: int, v: int) -> int:
        _, a, b = self._edges[eid]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an endpoint of edge {eid}")

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids incident to v, ascending.  A loop appears once."""
        if not 0 <= v < self._n:
            raise GraphError(f"unknown vertex {v}")
        return self._adj[v]

    def degree(self, v: int) -> int:
        if not 0 <= v < self._n:
            raise GraphError(f"unknown vertex {v}")
        return sum(2 if self.is_loop(e) else 1 for e in self._adj[v])

    def edges_between(self, u: int, v: int) -> tuple[int, ...]:
        return tuple(e for e in self.incident(u) if self.other_end(e, u) == v)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Distinct neighbor vertices of v, ascending (loops excluded)."""
        return tuple(sorted({self.other_end(e, v) for e in self.incident(v)
                             if not self.is_loop(e)}))

    def has_loops(self) -> bool:
        return any(u == v for _, u, v in self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self._n}, m={self.num_edges})"


class CubicGraph(MultiGraph):
    """Multigraph in which every vertex has degree exactly 3 and no loops."""

    def __init__(self, num_vertices: int, edge_list: Iterable[tuple[int, int]]):
        super().__init__(num_vertices, edge_list)
        if self.has_loops():
            raise GraphError("cubic graph may not contain loops")
        for v in self.vertices():
            if self.degree(v) != 3:
                raise GraphError(f"vertex {v} has degree {self.degree(v)}, expected 3")


def degree(g: MultiGraph, v: int) -> int:
    """Degree of v in g; a loop counts twice."""
    return g.degree(v)


class EdgeSet:
    """A set of edge ids attached to its host graph."""

    __slots__ = ("graph", "members")

    def __init__(self, graph: MultiGraph, members: Iterable[int]):
        members = frozenset(members)
        for e in members:
            if not 0 <= e < graph.num_edges:
                raise GraphError(f"edge id {e} not in host graph")
        self.graph = graph
        self.members = members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, eid: int) -> bool:
        return eid in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeSet):
            return NotImplemented
        return self.graph == other.graph and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.graph, self.members))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({sorted(self.members)})"


class Matching(EdgeSet):
    """An edge set in which no two members share a vertex."""

    def __init__(self, graph: MultiGraph, members: Iterable[int]):
        super().__init__(graph, members)
        seen: set[int] = set()
        for e in self.members:
            u, v = graph.endpoints(e)
            if u == v:
                raise GraphError(f"loop {e} cannot belong to a matching")
            if u in seen or v in seen:
                raise GraphError(f"edges of a matching share vertex at edge {e}")
            seen.add(u)
            seen.add(v)


@dataclass(frozen=True)
class Cycle:
    """A closed walk with distinct edges; vertices[i] -- vertices[i+1] via edges[i].

    The walk is canonical: it starts at its lowest vertex and proceeds
    toward the lower-id neighbor (edge id breaks ties between parallels).
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def is_odd(self) -> bool:
        return len(self.vertices) % 2 == 1


@dataclass(frozen=True)
class CycleSet:
    """Vertex-disjoint cycles, ordered by their lowest vertex id."""

    cycles: tuple[Cycle, ...]

    def __iter__(self) -> Iterator[Cycle]:
        return iter(self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)

    def covered_edges(self) -> frozenset[int]:
        return frozenset(e for c in self.cycles for e in c.edges)


def _components(g: MultiGraph, removed: frozenset[int] = frozenset()) -> list[list[int]]:
    """Connected components (vertex lists) of g with `removed` edges deleted."""
    seen = [False] * g.num_vertices
    comps = []
    for s in g.vertices():
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for e in g.incident(v):
                if e in removed or g.is_loop(e):
                    continue
                w = g.other_end(e, v)
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_connected(g: MultiGraph) -> bool:
    return len(_components(g)) <= 1


def is_bridgeless(g: MultiGraph) -> bool:
    """True iff connected g has no cut edge.  Parallel edges are never bridges."""
    if not is_connected(g):
        raise GraphError("is_bridgeless requires a connected graph")
    if g.num_vertices == 0:
        return True
    # Iterative DFS lowpoint computation; only the tree edge itself is
    # skipped when updating lowpoints, so a parallel copy acts as a back edge.
    disc = [-1] * g.num_vertices
    low = [0] * g.num_vertices
    timer = 0
    stack: list[tuple[int, int, Iterator[int]]] = [(0, -1, iter(g.incident(0)))]
    disc[0] = low[0] = timer
    timer += 1
    while stack:
        v, pe, it = stack[-1]
        advanced = False
        for e in it:
            if e == pe or g.is_loop(e):
                continue
            w = g.other_end(e, v)
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, e, iter(g.incident(w))))
                advanced = True
                break
            low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] > disc[p]:
                    return False
    return True


def is_bipartite(g: MultiGraph) -> bool:
    """Standard 2-coloring test; parallel edges are irrelevant, loops fail it."""
    if g.has_loops():
        return False
    color = [-1] * g.num_vertices
    for s in g.vertices():
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for e in g.incident(v):
                w = g.other_end(e, v)
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def _has_cycle_component(g: MultiGraph, comp: list[int], removed: frozenset[int]) -> bool:
    # A connected component contains a cycle iff #edges >= #vertices,
    # counting loops and parallels.
    vs = set(comp)
    edge_count = 0
    for eid, u, v in g.edges:
        if eid in removed:
            continue
        if u in vs:
            if u == v:
                return True
            edge_count += 1
    return edge_count >= len(comp)


def cyclic_edge_connectivity_at_least(g: CubicGraph, k: int) -> bool:
    """True iff no edge cut of size < k leaves two components that both contain cycles.

    Brute-force cut enumeration with early exit; meant for desk scale
    (n up to roughly 60 with k = 4).
    """
    from itertools import combinations

    if not isinstance(k, int) or not 1 <= k <= 6:
        raise GraphError(f"supported connectivity range is 1..6, got {k}")
    if not is_connected(g):
        raise GraphError("cyclic edge connectivity requires a connected graph")
    all_edges = range(g.num_edges)
    for size in range(1, k):
        for cut in combinations(all_edges, size):
            removed = frozenset(cut)
            comps = _components(g, removed)
            if len(comps) < 2:
                continue
            cyclic = 0
            for comp in comps:
                if _has_cycle_component(g, comp, removed):
                    cyclic += 1
                    if cyclic >= 2:
                        break
            if cyclic >= 2:
                return False
    return True


def cycle_decomposition(g: MultiGraph, s: EdgeSet | Iterable[int]) -> CycleSet:
    """Partition an edge set of per-vertex degree 0 or 2 into vertex-disjoint cycles.

    The decomposition is unique; ordering is deterministic (each cycle starts
    at its lowest vertex and runs toward the lower neighbor, cycles sorted by
    their lowest vertex).
    """
    members = frozenset(s.members if isinstance(s, EdgeSet) else s)
    inc: dict[int, list[int]] = {}
    for e in sorted(members):
        u, v = g.endpoints(e)
        if u == v:
            raise GraphError(f"loop {e} admits no cycle decomposition here")
        inc.setdefault(u, []).append(e)
        inc.setdefault(v, []).append(e)
    for v, es in inc.items():
        if len(es) != 2:
            raise GraphError(f"vertex {v} has degree {len(es)} in the edge set, expected 2")
    used: set[int] = set()
    cycles = []
    for start in sorted(inc):
        if any(e in used for e in inc[start]):
            continue
        # Choose the first step: lower neighbor vertex, edge id breaking ties.
        first = min(inc[start], key=lambda e: (g.other_end(e, start), e))
        verts = [start]
        edges = [first]
        used.add(first)
        cur = g.other_end(first, start)
        while cur != start:
            verts.append(cur)
            nxt = next(e for e in inc[cur] if e not in used)
            used.add(nxt)
            edges.append(nxt)
            cur = g.other_end(nxt, cur)
        cycles.append(Cycle(tuple(verts), tuple(edges)))
    return CycleSet(tuple(cycles))


