"""Listing almost-clique minimal separators and the preprocessing built on them.

Listers:
- heuristic: the almost-clique minimal separators of G among the minimal separators
  of one minimal triangulation H of G (pairwise non-crossing for free);
- standard: clique minimal separators K of G - v for every v, adopting K + v greedily
  when it is a minimal separator of G crossing nothing adopted so far;
- all: every almost-clique minimal separator of G.

Every lister runs per connected component and never emits the empty set.
"""

from collections.abc import Callable, Iterable
from dataclasses import dataclass
import enum
import functools
import logging
import math
import time

from models.bench import BenchRecord

from .cliquesep import Decomposition, clique_minimal_separators, decompose
from .graph import Graph, GraphError, components, fill_cliques, induced_subgraph, vset
from .separators import (ComponentIndex, Origin, Separator, almost_clique_apexes,
                         canonical_order, is_minimal_separator, merge_apexes)
from .triangulation import Method, Triangulation, minimal_separators_chordal, triangulate

log = logging.getLogger(__name__)

# bounds on |A_max(G, H)| / |A(G, H)| reported per triangulation method
RATIO_BOUNDS = (1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.7, 3.0)


class ConsistencyError(Exception):
    pass


class PreprocessError(Exception):
    pass


class AcsMethod(enum.StrEnum):
    HEURISTIC = 'heuristic'
    STANDARD = 'standard'
    ALL = 'all'
    MAX_EXPANDED = 'max-expanded'


LISTERS = (AcsMethod.HEURISTIC, AcsMethod.STANDARD)


@dataclass(frozen=True)
class AcsResult:
    separators: tuple[Separator, ...]
    method: AcsMethod
    triangulation_method: Method | None = None
    elapsed_ms: float = 0.0

    def __len__(self):
        return len(self.separators)

    @property
    def vertex_sets(self) -> list[tuple[int, ...]]:
        return [s.vertices for s in self.separators]


@dataclass(frozen=True)
class PreprocessResult:
    filled: Graph
    rounds: int
    filled_separators: tuple[tuple[Separator, ...], ...]
    decomposition: Decomposition
    stats: BenchRecord


class Stopwatch:
    """Wall time of a `with` block, in milliseconds."""
    elapsed_ms: float = 0.0

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = (time.perf_counter() - self._start) * 1000


def round_up_ms(ms: float) -> int:
    return math.ceil(ms)


def _per_component(g: Graph, lister: Callable[[Graph], list[Separator]]) -> list[Separator]:
    comps = components(g)
    if not comps:
        return []
    if len(comps) == 1:
        return lister(g)

    res = []
    for comp in comps:
        if len(comp) < 3:   # no minimal separator below three vertices
            continue
        sub, idmap = induced_subgraph(g, comp)
        for sep in lister(sub):
            res.append(Separator.of(g, (idmap[v] for v in sep.vertices), sep.origin))
    return merge_apexes(res)


def acs_from_triangulation(g: Graph, t: Triangulation) -> AcsResult:
    """Almost-clique minimal separators of `g` that are minimal separators of t.h."""
    with Stopwatch() as sw:
        found = _from_triangulation(g, t)
    return AcsResult(tuple(found), AcsMethod.HEURISTIC, t.method, sw.elapsed_ms)


def _from_triangulation(g: Graph, t: Triangulation) -> list[Separator]:
    res = []
    for sep in minimal_separators_chordal(t.h):
        apexes = almost_clique_apexes(g, sep.vertices)
        if not apexes:
            continue
        if not is_minimal_separator(g, sep.vertices):
            if t.minimal_claimed:
                raise ConsistencyError(f'{t.method} separator {list(sep.vertices)} '
                                       'is not a minimal separator of the input graph')
            log.debug(f'Skipping {list(sep.vertices)}: not minimal in a non-minimal {t.method}')
            continue
        res.append(Separator(sep.vertices, apexes, Origin.HEURISTIC))
    return res


def heuristic_list(g: Graph, method: Method = Method.MMAF, *,
                   verify: bool = True) -> AcsResult:
    method = Method(method)

    def lister(part: Graph) -> list[Separator]:
        return _from_triangulation(part, triangulate(part, method, verify=verify))

    with Stopwatch() as sw:
        found = _per_component(g, lister)
    return AcsResult(tuple(found), AcsMethod.HEURISTIC, method, sw.elapsed_ms)


def _apex_candidates(g: Graph, v: int) -> list[Separator]:
    """Sets K + v for the clique minimal separators K of each component of g - v,
    in canonical order of K."""
    sub, idmap = induced_subgraph(g, (u for u in g.vertices if u != v))
    res = []
    for comp in components(sub):
        if len(comp) < 3:
            continue
        piece, pmap = induced_subgraph(sub, comp)
        for k in clique_minimal_separators(piece):
            s = vset([idmap[pmap[x]] for x in k.vertices] + [v])
            res.append(Separator(s, origin=Origin.STANDARD))
    return canonical_order(res)


def _all_connected(g: Graph) -> list[Separator]:
    found = list(clique_minimal_separators(g))
    for v in g.vertices:
        for cand in _apex_candidates(g, v):
            if is_minimal_separator(g, cand.vertices):
                found.append(Separator.of(g, cand.vertices, Origin.ENUMERATION))
    return merge_apexes(found)


def all_acs(g: Graph) -> AcsResult:
    """Every almost-clique minimal separator of `g`."""
    with Stopwatch() as sw:
        found = _per_component(g, _all_connected)
    return AcsResult(tuple(found), AcsMethod.ALL, None, sw.elapsed_ms)


class _Adopted:
    """Pairwise non-crossing separators with a component index per member."""

    def __init__(self, g: Graph):
        self.g = g
        self.members: list[Separator] = []
        self.index: list[ComponentIndex] = []
        self.have: set[tuple[int, ...]] = set()

    def crossed(self, s: Iterable[int]) -> bool:
        s = tuple(s)
        return any(idx.separates(s) for idx in self.index)

    def add(self, sep: Separator):
        self.members.append(sep)
        self.index.append(ComponentIndex(self.g, sep.vertices))
        self.have.add(sep.vertices)


def greedy_max(g: Graph, seed: Iterable[Separator],
               universe: Iterable[Separator]) -> AcsResult:
    """Expands `seed` by the members of `universe`, in canonical order, that cross
    nothing adopted before them."""
    with Stopwatch() as sw:
        adopted = _Adopted(g)
        for sep in seed:
            if adopted.crossed(sep.vertices):
                raise GraphError(f'Seed separator {list(sep.vertices)} crosses another seed')
            adopted.add(sep)

        for cand in canonical_order(universe):
            if cand.vertices in adopted.have or adopted.crossed(cand.vertices):
                continue
            adopted.add(cand)

    return AcsResult(tuple(canonical_order(adopted.members)), AcsMethod.MAX_EXPANDED,
                     None, sw.elapsed_ms)


def max_list(g: Graph, universe: Iterable[Separator] | None = None) -> AcsResult:
    """A_max(G): greedy maximal non-crossing subset of all almost-clique minimal separators."""
    if universe is None:
        universe = all_acs(g).separators
    return greedy_max(g, (), universe)


def _standard_connected(g: Graph) -> list[Separator]:
    adopted = _Adopted(g)
    # clique minimal separators cross nothing
    for sep in clique_minimal_separators(g):
        adopted.add(sep)

    for v in g.vertices:
        for cand in _apex_candidates(g, v):
            s = cand.vertices
            if s in adopted.have or adopted.crossed(s):
                continue
            if is_minimal_separator(g, s):
                adopted.add(Separator.of(g, s, Origin.STANDARD))
    return canonical_order(adopted.members)


def standard_list(g: Graph) -> AcsResult:
    with Stopwatch() as sw:
        found = _per_component(g, _standard_connected)
    return AcsResult(tuple(found), AcsMethod.STANDARD, None, sw.elapsed_ms)


def expansion_ratio(num_acs: int, num_max: int) -> float | None:
    """|A_max(G, H)| / |A(G, H)|; None when both are empty."""
    if num_acs == 0:
        return None if num_max == 0 else math.inf
    return num_max / num_acs


def ratio_table(ratios: Iterable[float | None],
                bounds: Iterable[float] = RATIO_BOUNDS) -> dict[float, int]:
    """Number of defined ratios within each bound."""
    ratios = [r for r in ratios if r is not None]
    return {b: sum(r <= b for r in ratios) for b in bounds}


def decompose_forest(g: Graph) -> Decomposition:
    """Clique separator decomposition of every component, merged into one forest."""
    comps = components(g)
    if len(comps) == 1:
        return decompose(g)

    atoms = []
    edges = []
    labels = []
    for comp in comps:
        sub, idmap = induced_subgraph(g, comp)
        dec = decompose(sub)
        off = len(atoms)
        atoms.extend(tuple(idmap[v] for v in atom) for atom in dec.atoms)
        edges.extend((a + off, b + off) for a, b in dec.tree_edges)
        labels.extend(Separator.of(g, (idmap[v] for v in s.vertices), s.origin)
                      for s in dec.edge_labels)
    return Decomposition(atoms=tuple(atoms), tree_edges=tuple(edges), edge_labels=tuple(labels))


def preprocess(g: Graph, lister: AcsMethod = AcsMethod.HEURISTIC, *,
               triangulation: Method = Method.MMAF, round_cap: int = 0,
               verify: bool = True, instance: str = '') -> PreprocessResult:
    """Fills listed almost-clique minimal separators until a round adds no edge,
    then decomposes the filled graph on its clique minimal separators."""
    lister = AcsMethod(lister)
    match lister:
        case AcsMethod.HEURISTIC:
            listing = functools.partial(heuristic_list, method=triangulation, verify=verify)
        case AcsMethod.STANDARD:
            listing = standard_list
        case _:
            raise GraphError(f'{lister} does not list pairwise non-crossing separators')

    cap = round_cap or max(g.n, 1)
    current = g
    per_round = []
    total_ms = 0.0
    num_first = None
    while True:
        if len(per_round) >= cap:
            raise PreprocessError(f'{instance or g}: no fixpoint after {cap} rounds '
                                  f'({current.m - g.m} edges filled so far)')
        res = listing(current)
        total_ms += res.elapsed_ms
        if num_first is None:
            num_first = len(res)

        filled = fill_cliques(current, res.vertex_sets)
        per_round.append(res.separators)
        log.info(f'[round {len(per_round)}] {lister}: {len(res)} separators, '
                 f'{filled.m - current.m} new edges')
        if filled.m == current.m:
            break
        current = filled

    dec = decompose_forest(current)
    stats = BenchRecord(
        instance=instance, n=g.n, m=g.m, lister=str(lister),
        triangulation=str(triangulation) if lister is AcsMethod.HEURISTIC else None,
        t_list_ms=round_up_ms(total_ms), num_acs=num_first or 0,
        sterile=(num_first == 0) if lister is AcsMethod.STANDARD else None,
        rounds=len(per_round), num_atoms=len(dec.atoms), max_atom=dec.max_atom)

    return PreprocessResult(filled=current, rounds=len(per_round),
                            filled_separators=tuple(per_round), decomposition=dec, stats=stats)
