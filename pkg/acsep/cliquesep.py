"""Clique minimal separator decomposition into atoms.

The clique minimal separators come from one MCS-M minimal triangulation: they are
exactly its minimal separators that are cliques of the input graph. The graph is
then split recursively on them.
"""

from dataclasses import dataclass
import logging

from .graph import Graph, GraphError, VertexSet, components, is_clique, is_connected, neighborhood
from .separators import Origin, Separator, canonical_order
from .triangulation import minimal_separators_chordal, mcs_m

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decomposition:
    atoms: tuple[VertexSet, ...]
    tree_edges: tuple[tuple[int, int], ...]
    edge_labels: tuple[Separator, ...]

    @property
    def max_atom(self) -> int:
        return max(map(len, self.atoms), default=0)


def clique_minimal_separators(g: Graph) -> list[Separator]:
    if g.n == 0:
        return []
    t = mcs_m(g, verify=False)
    return canonical_order(Separator.of(g, s.vertices, Origin.CLIQUE)
                           for s in minimal_separators_chordal(t.h)
                           if is_clique(g, s.vertices))


def _splits(g: Graph, part: VertexSet, sep: VertexSet) -> list[VertexSet]:
    """Pieces C ∪ N(C) of g[part] cut by `sep`; [] unless it is a minimal separator there."""
    outside = set(g.vertices) - set(part)
    blocked = outside | set(sep)
    pieces = []
    nfull = 0
    for comp in components(g, blocked):
        # neighbourhood within g[part]
        nc = neighborhood(g, comp)
        nc = tuple(v for v in nc if v not in outside)
        nfull += nc == sep
        pieces.append(tuple(sorted(comp + nc)))
    return pieces if nfull >= 2 else []


def decompose(g: Graph, *, reverse: bool = False) -> Decomposition:
    """Clique separator decomposition of connected `g`.

    Splits on the canonically first applicable clique minimal separator (the last one
    when `reverse` is set); the atom set does not depend on that choice.
    """
    if g.n == 0:
        return Decomposition(atoms=(), tree_edges=(), edge_labels=())
    if not is_connected(g):
        raise GraphError('Clique separator decomposition needs a connected graph')

    seps = clique_minimal_separators(g)
    if reverse:
        seps.reverse()

    atoms: list[VertexSet] = []
    leaf: list[int] = []            # atom -> piece it was produced from
    parent: list[int] = [-1]        # piece -> enclosing piece
    links: list[tuple[int, int, VertexSet]] = []

    stack = [(0, tuple(g.vertices), seps)]
    while stack:
        pid, part, cands = stack.pop()
        pieces = []
        while cands and not pieces:
            sep, *cands = cands
            pieces = _splits(g, part, sep.vertices)
        if not pieces:
            atoms.append(part)
            leaf.append(pid)
            continue

        # a full piece goes first: every other piece links to it
        sset = set(sep.vertices)
        pieces.sort(key=lambda p: not sset.issubset(p))
        ids = []
        for piece in pieces:
            ids.append(len(parent))
            parent.append(pid)
        for cid, piece in zip(ids[1:], pieces[1:]):
            links.append((ids[0], cid, tuple(v for v in piece if v in sset)))
        for cid, piece in reversed(list(zip(ids, pieces))):
            pset = set(piece)
            stack.append((cid, piece, [c for c in cands if pset.issuperset(c.vertices)]))

    under: list[list[int]] = [[] for _ in parent]
    for i, pid in enumerate(leaf):
        while pid >= 0:
            under[pid].append(i)
            pid = parent[pid]

    def holder(pid: int, link: VertexSet) -> int:
        return next(i for i in under[pid] if set(link).issubset(atoms[i]))

    edges = [(holder(a, link), holder(b, link)) for a, b, link in links]
    labels = [Separator.of(g, link, Origin.CLIQUE) for _, _, link in links]
    log.debug(f'Decomposed {g} into {len(atoms)} atoms')
    return Decomposition(atoms=tuple(atoms), tree_edges=tuple(edges), edge_labels=tuple(labels))
