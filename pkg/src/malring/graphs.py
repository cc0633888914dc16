"""Chordality of one-skeleta: elimination orders and chordless cycles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .complex import (
    SimplicialComplex,
    build_complex,
    full_subcomplex,
    join_all,
    mask_of,
    missing_faces,
    same_faces,
    vertices_of,
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on a subset of ``1..m``.

    ``adj[v]`` is the neighbour bitmask of ``v`` (bit ``u`` for vertex ``u``);
    ``vertices`` is the bitmask of vertices present.
    """

    m: int
    adj: tuple[int, ...]
    vertices: int

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Sequence[int]], vertices: Iterable[int] | None = None):
        adj = [0] * (m + 1)
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        present = mask_of(range(1, m + 1)) if vertices is None else mask_of(vertices)
        return cls(m, tuple(adj), present)

    @classmethod
    def from_complex(cls, K: SimplicialComplex) -> "Graph":
        """The one-skeleton ``K^1``."""
        return cls.from_edges(K.m, K.faces(1))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return vertices_of(self.adj[v] & self.vertices)

    @property
    def vertex_list(self) -> tuple[int, ...]:
        return vertices_of(self.vertices)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertex_list for v in self.neighbours(u) if u < v]

    def is_clique(self, mask: int) -> bool:
        return all(mask & ~(1 << v) & ~self.adj[v] == 0 for v in vertices_of(mask))

    def delete(self, v: int) -> "Graph":
        bit = 1 << v
        adj = tuple(0 if u == v else a & ~bit for u, a in enumerate(self.adj))
        return Graph(self.m, adj, self.vertices & ~bit)


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    order: tuple[int, ...] | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.chordal


def is_perfect_elimination_order(G: Graph, order: Sequence[int]) -> bool:
    """Every vertex's neighbours earlier in ``order`` are pairwise adjacent."""
    if sorted(order) != list(G.vertex_list):
        return False
    seen = 0
    for v in order:
        if not G.is_clique(G.adj[v] & seen):
            return False
        seen |= 1 << v
    return True


def maximum_cardinality_search(G: Graph) -> tuple[int, ...]:
    """Visit order of MCS; ties go to the smallest label."""
    weight = {v: 0 for v in G.vertex_list}
    order = []
    while weight:
        v = max(weight, key=lambda u: (weight[u], -u))
        del weight[v]
        order.append(v)
        for u in G.neighbours(v):
            if u in weight:
                weight[u] += 1
    return tuple(order)


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate to put the smallest vertex first, then pick the smaller direction."""
    i = cycle.index(min(cycle))
    fwd = tuple(cycle[i:]) + tuple(cycle[:i])
    back = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, back)


def _cycle_through(G: Graph, v: int, x: int, y: int) -> tuple[int, ...] | None:
    # shortest x..y path avoiding v and its other neighbours closes an induced cycle
    blocked = (G.adj[v] | 1 << v) & ~(1 << x | 1 << y)
    allowed = G.vertices & ~blocked
    prev = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            break
        for w in vertices_of(G.adj[u] & allowed):
            if w not in prev and not (u == x and w == y):
                prev[w] = u
                queue.append(w)
    if y not in prev:
        return None
    path = [y]
    while path[-1] != x:
        path.append(prev[path[-1]])
    return canonical_cycle([v] + path[::-1])


def _find_witness(G: Graph, hint: tuple[int, int, int] | None) -> tuple[int, ...]:
    if hint is not None:
        cyc = _cycle_through(G, *hint)
        if cyc is not None:
            return cyc
    for v in G.vertex_list:
        for x, y in combinations(G.neighbours(v), 2):
            if not G.has_edge(x, y):
                cyc = _cycle_through(G, v, x, y)
                if cyc is not None:
                    return cyc
    raise AssertionError("non-chordal graph without a chordless cycle")


def is_chordal(G: Graph) -> ChordalityResult:
    """Chordality test by maximum cardinality search.

    Returns the MCS order (a perfect elimination order) when ``G`` is chordal,
    otherwise a chordless cycle of length at least four.
    """
    order = maximum_cardinality_search(G)
    seen = 0
    for v in order:
        earlier = G.adj[v] & seen
        if not G.is_clique(earlier):
            x, y = next(
                (a, b) for a, b in combinations(vertices_of(earlier), 2) if not G.has_edge(a, b)
            )
            return ChordalityResult(False, witness=_find_witness(G, (v, x, y)))
        seen |= 1 << v
    return ChordalityResult(True, order=order)


def find_chordless_cycles(G: Graph, max_len: int | None = None) -> list[tuple[int, ...]]:
    """All induced cycles of length ``4..max_len`` (default: number of vertices).

    Exhaustive path extension; exponential in the worst case.
    """
    if max_len is None:
        max_len = len(G.vertex_list)
    elif max_len < 4:
        raise ValueError("max_len must be at least 4")
    found = []

    def extend(path: list[int], inner: int, s: int):
        # inner: union of neighbourhoods of path[1:-1]; a new vertex must avoid it
        last = path[-1]
        for w in vertices_of(G.adj[last] & G.vertices):
            if w <= s or (inner >> w & 1) or w in path:
                continue
            closes = G.has_edge(w, s)
            if closes:
                if len(path) + 1 >= 4 and path[1] < w:
                    found.append(tuple(path + [w]))
            elif len(path) + 1 < max_len:
                extend(path + [w], inner | G.adj[last], s)

    for s in G.vertex_list:
        for v in G.neighbours(s):
            if v > s:
                extend([s, v], 0, s)
    return sorted(canonical_cycle(c) for c in found)


def is_induced_cycle(G: Graph, cycle: Sequence[int]) -> bool:
    p = len(cycle)
    if p < 3 or len(set(cycle)) != p:
        return False
    for i, j in combinations(range(p), 2):
        adjacent_in_cycle = (j - i) in (1, p - 1)
        if G.has_edge(cycle[i], cycle[j]) != adjacent_in_cycle:
            return False
    return True


def peo_delete_last(G: Graph, order: Sequence[int]) -> tuple[Graph, tuple[int, ...]]:
    """Delete the last vertex of a perfect elimination order.

    The restricted order is again a perfect elimination order of the smaller
    graph; this is asserted rather than assumed.
    """
    if not is_perfect_elimination_order(G, order):
        raise ValueError("order is not a perfect elimination order")
    H = G.delete(order[-1])
    rest = tuple(order[:-1])
    assert is_perfect_elimination_order(H, rest)
    return H, rest


@dataclass(frozen=True)
class MissingEdgeReport:
    edges: tuple[tuple[int, int], ...]
    disjoint: bool
    pairs_form_4cycles: bool
    join_condition: bool

    @property
    def r(self) -> int:
        return len(self.edges)


def missing_edge_structure(K: SimplicialComplex) -> MissingEdgeReport:
    """Missing edges of ``K`` and how they sit relative to each other.

    ``join_condition`` compares the full subcomplex on the union of the missing
    edges with the join of the two-point complexes on each edge, face by face.
    It is only meaningful (and only reported true) when the edges are disjoint.
    """
    edges = tuple(mf.vertices for mf in missing_faces(K, 1))
    union = 0
    disjoint = True
    for e in edges:
        m = mask_of(e)
        if union & m:
            disjoint = False
        union |= m
    G = Graph.from_complex(K)
    pairs_ok = disjoint and all(
        all(G.has_edge(u, v) for u in a for v in b) for a, b in combinations(edges, 2)
    )
    join_ok = False
    if disjoint:
        # relabel the union so that edge j occupies labels 2j-1, 2j
        order = [v for e in edges for v in e]
        sub = full_subcomplex(K, union)
        pos = {lab: i + 1 for i, lab in enumerate(sub.labels or ())}
        perm = {pos[v]: i + 1 for i, v in enumerate(order)}
        facets = [tuple(perm[v] for v in f) for f in sub.facets]
        relabeled = build_complex(sub.m, facets) if sub.m else sub
        expected = join_all([full_subcomplex(K, mask_of(e)) for e in edges])
        join_ok = same_faces(relabeled, expected)
    return MissingEdgeReport(edges, disjoint, pairs_ok, join_ok)
