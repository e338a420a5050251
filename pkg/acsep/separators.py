"""Minimal separator predicates: full components, minimality, almost-cliques, crossing."""

from collections.abc import Iterable
from dataclasses import dataclass, field, replace
import enum
import typing as t

from .graph import Graph, GraphError, VertexSet, _flood, components, neighborhood, vset


class Origin(enum.StrEnum):
    HEURISTIC = 'heuristic'
    STANDARD = 'standard'
    ENUMERATION = 'enumeration'
    CHORDAL = 'chordal-extraction'
    CLIQUE = 'clique'


@dataclass(frozen=True)
class Separator:
    """Canonical vertex set; identity ignores the cached apexes and the origin tag."""
    vertices: VertexSet
    apexes: VertexSet | None = field(default=None, compare=False)
    origin: Origin = field(default=Origin.ENUMERATION, compare=False)

    def __post_init__(self):
        if not self.vertices:
            raise GraphError('Empty separator')

    @classmethod
    def of(cls, g: Graph, vertices: Iterable[int], origin: Origin) -> t.Self:
        """Separator over `g` with apexes computed against `g`."""
        vertices = g.check(vertices)
        return cls(vertices, almost_clique_apexes(g, vertices), origin)

    @property
    def key(self) -> tuple[int, VertexSet]:
        return len(self.vertices), self.vertices

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v):
        return v in self.vertices


def _nonempty(g: Graph, s: Iterable[int]) -> VertexSet:
    s = g.check(s)
    if not s:
        raise GraphError('Empty separator')
    return s


def full_components(g: Graph, s: Iterable[int]) -> list[VertexSet]:
    """Components C of g minus `s` with N(C) = s, in component order."""
    s = _nonempty(g, s)
    return [c for c in components(g, s) if neighborhood(g, c) == s]


def is_minimal_separator(g: Graph, s: Iterable[int]) -> bool:
    s = _nonempty(g, s)
    if len(s) >= g.n:
        return False

    nfull = 0
    for c in components(g, s):
        if neighborhood(g, c) == s:
            nfull += 1
            if nfull >= 2:
                return True
    return False


def almost_clique_apexes(g: Graph, s: Iterable[int]) -> VertexSet:
    """All q in `s` such that s minus q is a clique of g."""
    s = _nonempty(g, s)
    inside = set(s)
    missing = {v: inside - g.adj[v] - {v} for v in s}
    defective = [v for v, miss in missing.items() if miss]
    if not defective:
        return s

    # q must be an endpoint of every non-edge
    return vset(q for q in defective
                if all(w == q or missing[w] == {q} for w in defective))


class ComponentIndex:
    """Component labels of g minus `r`; answers "does r separate these vertices" in O(|s|)."""
    __slots__ = ('vertices', 'label')

    def __init__(self, g: Graph, r: Iterable[int]):
        self.vertices = g.check(r)
        blocked = set(self.vertices)
        label = [-1] * g.n
        seen: set[int] = set()
        ncomp = 0
        for v in g.vertices:
            if v in seen or v in blocked:
                continue
            for x in _flood(g, v, blocked, seen):
                label[x] = ncomp
            ncomp += 1
        self.label = label

    def separates(self, s: Iterable[int]) -> bool:
        label = self.label
        first = -1
        for v in s:
            lv = label[v]
            if lv < 0:
                continue
            if first < 0:
                first = lv
            elif lv != first:
                return True
        return False


def crosses(g: Graph, r: Iterable[int], s: Iterable[int]) -> bool:
    """Whether `r` separates some pair of vertices of `s`."""
    r = _nonempty(g, r)
    s = _nonempty(g, s)
    blocked = set(r)
    rest = [v for v in s if v not in blocked]
    if len(rest) < 2:
        return False

    reached: set[int] = set()
    _flood(g, rest[0], blocked, reached)
    return not reached.issuperset(rest)


def canonical_order(separators: Iterable[Separator]) -> list[Separator]:
    """Sorted by (size, vertex ids); first occurrence wins on duplicates."""
    res = []
    seen: set[VertexSet] = set()
    for sep in sorted(separators, key=lambda s: s.key):
        if sep.vertices in seen:
            continue
        seen.add(sep.vertices)
        res.append(sep)
    return res


def merge_apexes(separators: Iterable[Separator]) -> list[Separator]:
    """Canonical order, collapsing duplicates and uniting their cached apexes."""
    merged: dict[VertexSet, Separator] = {}
    for sep in separators:
        prev = merged.get(sep.vertices)
        if prev is None:
            merged[sep.vertices] = sep
        elif sep.apexes is not None:
            apexes = vset((prev.apexes or ()) + sep.apexes)
            merged[sep.vertices] = replace(prev, apexes=apexes)
    return canonical_order(merged.values())
