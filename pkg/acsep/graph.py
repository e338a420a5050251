"""Immutable simple undirected graph and the elementary operations on it.

Vertices are contiguous ids ``0..n-1``. External (PACE, 1-based) names are kept
separately in ``Graph.labels`` so results can be reported the way they were read.
"""

from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
import functools
import itertools

type VertexSet = tuple[int, ...]      # strictly ascending vertex ids
type Edge = tuple[int, int]           # u < v


class GraphError(ValueError):
    pass


def vset(vertices: Iterable[int]) -> VertexSet:
    """Canonical form of a vertex collection: sorted, deduplicated."""
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class Graph:
    adj: tuple[frozenset[int], ...]
    labels: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], *,
                   labels: Iterable[int] | None = None) -> 'Graph':
        """Builds a validated graph from 0-based edges. Duplicate edges collapse."""
        if n < 0:
            raise GraphError(f'Negative vertex count {n}')

        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f'Edge {{{u}, {v}}} outside of vertex range 0..{n - 1}')
            if u == v:
                raise GraphError(f'Self-loop on vertex {u}')
            rows[u].add(v)
            rows[v].add(u)

        labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        if len(labels) != n:
            raise GraphError(f'Got {len(labels)} labels for {n} vertices')

        return cls(adj=tuple(map(frozenset, rows)), labels=labels)

    @property
    def n(self) -> int:
        return len(self.adj)

    @functools.cached_property
    def m(self) -> int:
        return sum(map(len, self.adj)) // 2

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def labelled(self, vertices: Iterable[int]) -> list[int]:
        return [self.labels[v] for v in vertices]

    def edges(self) -> Iterator[Edge]:
        """Canonical (sorted) edge list."""
        for u, row in enumerate(self.adj):
            for v in sorted(row):
                if u < v:
                    yield u, v

    def check(self, u: Iterable[int]) -> VertexSet:
        """Canonicalizes `u` and checks that every id belongs to this graph."""
        u = vset(u)
        if u and (u[0] < 0 or u[-1] >= self.n):
            raise GraphError(f'Vertex set {list(u)} outside of range 0..{self.n - 1}')
        return u

    def __repr__(self):
        cls = type(self).__name__
        return f'{cls}(n={self.n}, m={self.m})'


def neighborhood(g: Graph, u: Iterable[int]) -> VertexSet:
    """N_g(u): vertices adjacent to some member of `u` but not in `u`."""
    u = g.check(u)
    inside = set(u)
    out = set()
    for v in u:
        out |= g.adj[v]
    return vset(out - inside)


def _flood(g: Graph, start: int, blocked: set[int] | frozenset[int],
           seen: set[int]) -> list[int]:
    """BFS from `start` avoiding `blocked`, marking into `seen`."""
    comp = [start]
    seen.add(start)
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in seen and y not in blocked:
                seen.add(y)
                comp.append(y)
                queue.append(y)
    return comp


def components(g: Graph, removed: Iterable[int] = ()) -> list[VertexSet]:
    """Connected components of g minus `removed`, ordered by smallest member."""
    blocked = set(g.check(removed))
    seen: set[int] = set()
    res = []
    for v in g.vertices:
        if v in seen or v in blocked:
            continue
        res.append(vset(_flood(g, v, blocked, seen)))
    return res


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def missing_pairs(g: Graph, u: Iterable[int]) -> list[Edge]:
    """Non-adjacent pairs inside `u`, in lexicographic order."""
    u = g.check(u)
    return [(a, b) for a, b in itertools.combinations(u, 2) if b not in g.adj[a]]


def is_clique(g: Graph, u: Iterable[int]) -> bool:
    u = g.check(u)
    for i, a in enumerate(u):
        row = g.adj[a]
        for b in u[i + 1:]:
            if b not in row:
                return False
    return True


def add_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    """g plus `edges`; only touched adjacency rows are copied."""
    touched: dict[int, set[int]] = {}
    for u, v in edges:
        if u == v:
            raise GraphError(f'Self-loop on vertex {u}')
        if v in g.adj[u]:
            continue
        touched.setdefault(u, set(g.adj[u])).add(v)
        touched.setdefault(v, set(g.adj[v])).add(u)

    if not touched:
        return g

    rows = list(g.adj)
    for v, row in touched.items():
        rows[v] = frozenset(row)
    return Graph(adj=tuple(rows), labels=g.labels)


def fill_cliques(g: Graph, sets: Iterable[Iterable[int]]) -> Graph:
    """g with every set in `sets` filled into a clique."""
    fill = []
    for u in sets:
        fill.extend(missing_pairs(g, u))
    return add_edges(g, fill)


def fill_clique(g: Graph, u: Iterable[int]) -> Graph:
    """g ∪ K(u)."""
    return add_edges(g, missing_pairs(g, u))


def induced_subgraph(g: Graph, u: Iterable[int]) -> tuple[Graph, VertexSet]:
    """g[u] relabelled to ids 0..|u|-1, plus the map from new ids back to g's ids."""
    u = g.check(u)
    index = {v: i for i, v in enumerate(u)}
    rows = tuple(frozenset(index[w] for w in g.adj[v] if w in index) for v in u)
    labels = tuple(g.labels[v] for v in u)
    return Graph(adj=rows, labels=labels), u
