"""Triangulations: the elimination game (MD/MF/MAF), the minimalization scheme
turning those into minimal triangulations (MMD/MMF/MMAF), MCS-M, and the chordal
graph machinery (perfect elimination orders, clique trees, minimal separators).

Ties are always broken by the lowest vertex id.
"""

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass
import enum
import functools
import heapq
import itertools
import logging

from .graph import (Edge, Graph, GraphError, VertexSet, add_edges, components, fill_cliques,
                    is_clique, neighborhood, vset)
from .separators import Origin, Separator, canonical_order, is_minimal_separator

log = logging.getLogger(__name__)


class TriangulationError(Exception):
    pass


class Method(enum.StrEnum):
    MD = 'md'
    MF = 'mf'
    MAF = 'maf'
    MMD = 'mmd'
    MMF = 'mmf'
    MMAF = 'mmaf'
    MCSM = 'mcsm'


ELIMINATION = (Method.MD, Method.MF, Method.MAF)
MINIMALIZED = {Method.MD: Method.MMD, Method.MF: Method.MMF, Method.MAF: Method.MMAF}


@dataclass(frozen=True)
class FillRecord:
    step: int
    vertex: int
    neighborhood: VertexSet     # S_i, the neighbourhood filled at this step
    was_clique: bool


@dataclass(frozen=True)
class EliminationRun:
    order: tuple[int, ...]
    fill_records: tuple[FillRecord, ...]
    h: Graph

    @property
    def has_fill(self) -> bool:
        return not all(rec.was_clique for rec in self.fill_records)


@dataclass(frozen=True)
class CliqueTree:
    bags: tuple[VertexSet, ...]
    tree_edges: tuple[tuple[int, int], ...]
    edge_separators: tuple[VertexSet, ...]

    @property
    def width(self) -> int:
        return max(map(len, self.bags), default=0) - 1


@dataclass(frozen=True)
class Triangulation:
    base: Graph
    h: Graph
    method: Method
    fill_edges: tuple[Edge, ...]
    minimal_claimed: bool
    rounds: int = 0

    @functools.cached_property
    def clique_tree(self) -> CliqueTree:
        return clique_tree(self.h)

    @property
    def width(self) -> int:
        return self.clique_tree.width


def fill_edges_of(g: Graph, h: Graph) -> tuple[Edge, ...]:
    return tuple(e for e in h.edges() if not g.has_edge(*e))


# --- elimination game -------------------------------------------------------

def _fill_count(adj: list[set[int]], v: int) -> int:
    nb = adj[v]
    # nb - adj[u] always holds u itself
    return sum(len(nb - adj[u]) - 1 for u in nb) // 2


def _score(strategy: Method, adj: list[set[int]], v: int) -> float:
    match strategy:
        case Method.MD:
            return len(adj[v])
        case Method.MF:
            return _fill_count(adj, v)
        case Method.MAF:
            deg = len(adj[v])
            return _fill_count(adj, v) / deg if deg else 0.0
    raise ValueError(f'Not an elimination strategy: {strategy}')


def eliminate(g: Graph, strategy: Method) -> EliminationRun:
    """Plays the elimination game on `g` picking the vertex of minimum `strategy` score."""
    if g.n == 0:
        raise GraphError('Cannot eliminate an empty graph')
    strategy = Method(strategy)
    if strategy not in ELIMINATION:
        raise ValueError(f'Not an elimination strategy: {strategy}')

    adj = [set(row) for row in g.adj]
    current = [_score(strategy, adj, v) for v in g.vertices]
    heap = [(sc, v) for v, sc in enumerate(current)]
    heapq.heapify(heap)
    gone = [False] * g.n

    order = []
    records = []
    fill: list[Edge] = []
    for step in range(1, g.n + 1):
        while True:
            sc, v = heapq.heappop(heap)
            if not gone[v] and sc == current[v]:
                break

        nb = vset(adj[v])
        missing = [(a, b) for a, b in itertools.combinations(nb, 2) if b not in adj[a]]
        records.append(FillRecord(step, v, nb, not missing))
        for a, b in missing:
            adj[a].add(b)
            adj[b].add(a)
        fill.extend(missing)

        for u in nb:
            adj[u].discard(v)
        adj[v] = set()
        gone[v] = True
        order.append(v)

        dirty = set(nb)
        if strategy is not Method.MD:
            for u in nb:
                dirty |= adj[u]
        for u in dirty:
            sc = _score(strategy, adj, u)
            if sc != current[u]:
                current[u] = sc
                heapq.heappush(heap, (sc, u))

    return EliminationRun(order=tuple(order), fill_records=tuple(records),
                          h=add_edges(g, fill))


# --- minimalization scheme --------------------------------------------------

def minimal_separators_within(g: Graph, s: Iterable[int]) -> list[Separator]:
    """Minimal separators of `g` contained in `s`, where `s` is the neighbourhood
    of some full component (as every filled neighbourhood of the elimination game is).
    """
    s = g.check(s)
    found = []
    nfull = 0
    for comp in components(g, s):
        nc = neighborhood(g, comp)
        if nc == s:
            nfull += 1
        elif nc:
            found.append(nc)
    if nfull >= 2:
        found.append(s)

    res = canonical_order(Separator(sep, origin=Origin.CHORDAL) for sep in found)
    for sep in res:
        assert is_minimal_separator(g, sep.vertices), \
            f'{list(sep.vertices)} is not a minimal separator; {list(s)} has no full component'
    return res


def minimalize(g: Graph, strategy: Method, *,
               round_cap: int = 0, verify: bool = True) -> Triangulation:
    """Minimal triangulation from an elimination heuristic (MD -> MMD, MF -> MMF, MAF -> MMAF).

    Each round eliminates the current graph from scratch and, instead of the filled
    neighbourhoods, fills only the minimal separators of the current graph inside them.
    Rounds stop once the current graph is chordal.
    """
    strategy = Method(strategy)
    method = MINIMALIZED[strategy]
    cap = round_cap or max(g.n, 1)

    current = g
    rounds = 0
    stalls = 0
    stalled = False
    while not is_chordal(current):
        run = eliminate(current, strategy)
        rounds += 1
        if rounds > cap:
            log.warning(f'{method}: round cap {cap} reached, '
                        'keeping the elimination triangulation')
            return _elimination_result(g, run, method, rounds)

        nontrivial = [rec for rec in run.fill_records if not rec.was_clique]
        targets = [sep.vertices
                   for rec in nontrivial
                   for sep in minimal_separators_within(current, rec.neighborhood)]
        filled = fill_cliques(current, targets)
        log.debug(f'{method} round {rounds}: {len(targets)} separators, '
                  f'{filled.m - current.m} new edges')

        # non-chordal and nothing to fill
        if filled.m == current.m:
            stalls += 1
            stalled = True
            if stalls >= 2:
                log.warning(f'{method}: second consecutive stall, '
                            'keeping the elimination triangulation')
                return _elimination_result(g, run, method, rounds)
            log.warning(f'{method}: round {rounds} filled nothing, '
                        'filling the whole neighbourhoods instead')
            filled = fill_cliques(current, [rec.neighborhood for rec in nontrivial])
        else:
            stalls = 0
        current = filled

    t = Triangulation(base=g, h=current, method=method, fill_edges=fill_edges_of(g, current),
                      minimal_claimed=False, rounds=rounds)
    return _claim(g, t, verify=verify and not stalled, assumed=not stalled)


def _elimination_result(g: Graph, run: EliminationRun, method: Method,
                        rounds: int) -> Triangulation:
    return Triangulation(base=g, h=run.h, method=method, fill_edges=fill_edges_of(g, run.h),
                         minimal_claimed=False, rounds=rounds)


def _claim(g: Graph, t: Triangulation, *, verify: bool, assumed: bool) -> Triangulation:
    claimed = verify_minimal(g, t) if verify else assumed
    if verify and not claimed:
        log.warning(f'{t.method}: triangulation failed the minimality check')
    return Triangulation(base=t.base, h=t.h, method=t.method, fill_edges=t.fill_edges,
                         minimal_claimed=claimed, rounds=t.rounds)


# --- MCS-M ------------------------------------------------------------------

def mcs_m(g: Graph, *, verify: bool = True) -> Triangulation:
    """Minimal triangulation by maximum cardinality search (MCS-M).

    Vertices are numbered n down to 1. When v is numbered, every unnumbered u reachable
    from v through unnumbered vertices all lighter than u gains weight, and {u, v}
    becomes a fill edge unless already present.
    """
    if g.n == 0:
        raise GraphError('Cannot triangulate an empty graph')

    n = g.n
    weight = [0] * n
    numbered = [False] * n
    fill: list[Edge] = []
    for _ in range(n):
        v = max((u for u in g.vertices if not numbered[u]), key=lambda u: (weight[u], -u))
        numbered[v] = True

        # reach[j]: vertices reached through paths whose inner vertices weigh at most j
        reach: dict[int, list[int]] = defaultdict(list)
        reached = {v}
        raised = []
        for u in g.adj[v]:
            if not numbered[u]:
                reached.add(u)
                raised.append(u)
                reach[weight[u]].append(u)

        for j in range(n):
            stack = reach.get(j)
            while stack:
                y = stack.pop()
                for z in g.adj[y]:
                    if numbered[z] or z in reached:
                        continue
                    reached.add(z)
                    if weight[z] > j:
                        reach[weight[z]].append(z)
                        raised.append(z)
                        fill.append((min(v, z), max(v, z)))
                    else:
                        stack.append(z)

        for u in raised:
            weight[u] += 1

    h = add_edges(g, fill)
    t = Triangulation(base=g, h=h, method=Method.MCSM, fill_edges=fill_edges_of(g, h),
                      minimal_claimed=False)
    return _claim(g, t, verify=verify, assumed=True)


def triangulate(g: Graph, method: Method, *, verify: bool = True,
                round_cap: int = 0) -> Triangulation:
    method = Method(method)
    if method in ELIMINATION:
        run = eliminate(g, method)
        t = _elimination_result(g, run, method, rounds=0)
        return _claim(g, t, verify=verify, assumed=False)
    if method is Method.MCSM:
        return mcs_m(g, verify=verify)

    strategy = {v: k for k, v in MINIMALIZED.items()}[method]
    return minimalize(g, strategy, round_cap=round_cap, verify=verify)


# --- chordal graphs -----------------------------------------------------------

def _mcs(g: Graph) -> list[int]:
    """Maximum cardinality search visiting order (first visited is last in the PEO)."""
    n = g.n
    weight = [0] * n
    buckets: list[set[int]] = [set() for _ in range(n + 1)]
    buckets[0] = set(g.vertices)
    visited = [False] * n
    top = 0
    res = []
    for _ in range(n):
        while not buckets[top]:
            top -= 1
        v = min(buckets[top])
        buckets[top].remove(v)
        visited[v] = True
        res.append(v)
        for u in g.adj[v]:
            if not visited[u]:
                buckets[weight[u]].remove(u)
                weight[u] += 1
                buckets[weight[u]].add(u)
        top += 1
    return res


def _is_peo(g: Graph, order: list[int] | tuple[int, ...]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        row = g.adj[parent]
        if any(u != parent and u not in row for u in later):
            return False
    return True


def peo(g: Graph) -> tuple[int, ...] | None:
    """A perfect elimination order of `g`, or None when `g` is not chordal."""
    order = _mcs(g)
    order.reverse()
    return tuple(order) if _is_peo(g, order) else None


def is_chordal(g: Graph) -> bool:
    return peo(g) is not None


def clique_tree(h: Graph) -> CliqueTree:
    """Maximal cliques of chordal `h` linked into a clique tree (a forest if `h` is
    disconnected), detected along a maximum cardinality search."""
    visit = _mcs(h)
    if not _is_peo(h, visit[::-1]):
        raise TriangulationError('Clique tree requested for a non-chordal graph')

    pos = {v: i for i, v in enumerate(visit)}
    bags: list[set[int]] = []
    edges = []
    seps = []
    clique_of = [-1] * h.n
    prev = -1
    for i, v in enumerate(visit):
        earlier = [u for u in h.adj[v] if pos[u] < i]
        card = len(earlier)
        if not bags or card <= prev:
            bags.append(set(earlier) | {v})
            if earlier:
                last = max(earlier, key=pos.__getitem__)
                edges.append((clique_of[last], len(bags) - 1))
                seps.append(vset(earlier))
        else:
            bags[-1].add(v)
        clique_of[v] = len(bags) - 1
        prev = card

    return CliqueTree(bags=tuple(map(vset, bags)), tree_edges=tuple(edges),
                      edge_separators=tuple(seps))


def minimal_separators_chordal(h: Graph) -> list[Separator]:
    tree = clique_tree(h)
    return canonical_order(Separator(s, origin=Origin.CHORDAL) for s in tree.edge_separators)


def verify_minimal(g: Graph, t: Triangulation) -> bool:
    """Whether t.h is a minimal triangulation of `g`.

    Uses the fact that for chordal H, H - uv is chordal iff N(u) ∩ N(v) is a clique of H:
    every fill edge must have a non-clique common neighbourhood.
    """
    h = t.h
    if h.n != g.n or not is_chordal(h):
        return False
    if any(not h.has_edge(u, v) for u, v in g.edges()):
        return False

    for u, v in fill_edges_of(g, h):
        if is_clique(h, h.adj[u] & h.adj[v]):
            return False
    return True
