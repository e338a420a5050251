"""Brute-force ground truth for small graphs.

Everything here is exponential in n and guarded by `OracleLimits`; it is meant to be
simpler than the code it checks, not fast.
"""

from collections.abc import Iterator

import pydantic as pd

from .graph import Graph, VertexSet, fill_clique
from .separators import Origin, Separator, almost_clique_apexes, canonical_order


class OracleLimitError(Exception):
    pass


class OracleLimits(pd.BaseModel):
    model_config = pd.ConfigDict(frozen=True)

    max_n_subsets: int = pd.Field(default=16, ge=4)
    max_n_tw: int = pd.Field(default=16, ge=4)


DEFAULT_LIMITS = OracleLimits()


def _require(g: Graph, cap: int, what: str):
    if g.n > cap:
        raise OracleLimitError(f'{what} refused: {g.n} vertices above the cap of {cap}')


def _masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in row) for row in g.adj]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _vertices(mask: int) -> VertexSet:
    return tuple(_bits(mask))


def _spread(adjm: list[int], mask: int) -> int:
    res = 0
    for v in _bits(mask):
        res |= adjm[v]
    return res


def _component(adjm: list[int], start: int, allowed: int) -> int:
    comp = frontier = 1 << start
    while frontier:
        frontier = _spread(adjm, frontier) & allowed & ~comp
        comp |= frontier
    return comp


def _components(adjm: list[int], allowed: int) -> list[int]:
    res = []
    while allowed:
        comp = _component(adjm, (allowed & -allowed).bit_length() - 1, allowed)
        res.append(comp)
        allowed &= ~comp
    return res


def _nfull(adjm: list[int], full: int, s: int) -> int:
    nfull = 0
    for comp in _components(adjm, full & ~s):
        nfull += (_spread(adjm, comp) & ~comp) == s
    return nfull


def brute_minimal_separators(g: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> list[Separator]:
    """Every non-empty proper vertex subset with at least two full components."""
    _require(g, limits.max_n_subsets, 'Minimal separator enumeration')
    adjm = _masks(g)
    full = (1 << g.n) - 1
    res = [Separator(_vertices(s), origin=Origin.ENUMERATION)
           for s in range(1, full) if _nfull(adjm, full, s) >= 2]
    return canonical_order(res)


def brute_almost_clique_minimal_separators(
        g: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> list[Separator]:
    res = []
    for sep in brute_minimal_separators(g, limits):
        apexes = almost_clique_apexes(g, sep.vertices)
        if apexes:
            res.append(Separator(sep.vertices, apexes, Origin.ENUMERATION))
    return res


def brute_treewidth(g: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> int:
    """Exact treewidth by dynamic programming over elimination prefixes.

    f(S) = min over v in S of max(f(S - v), q(S - v, v)), where q(X, v) counts the
    vertices outside X + v reachable from v through X; f(empty) = -1, tw = f(V).
    """
    _require(g, limits.max_n_tw, 'Treewidth computation')
    if g.n == 0:
        return -1

    adjm = _masks(g)
    size = 1 << g.n
    f = [0] * size
    f[0] = -1
    for s in range(1, size):
        best = g.n
        for v in _bits(s):
            x = s & ~(1 << v)
            if f[x] >= best:
                continue
            inner = x | (1 << v)
            comp = _component(adjm, v, inner)
            q = (_spread(adjm, comp) & ~inner).bit_count()
            best = min(best, max(f[x], q))
        f[s] = best
    return f[size - 1]


def has_clique_separator(g: Graph, limits: OracleLimits = DEFAULT_LIMITS) -> bool:
    """Whether some clique (the empty one included) disconnects `g`."""
    _require(g, limits.max_n_subsets, 'Clique separator search')
    adjm = _masks(g)
    full = (1 << g.n) - 1
    for s in range(0, full):
        members = list(_bits(s))
        if any(adjm[v] & s != s & ~(1 << v) for v in members):
            continue
        if len(_components(adjm, full & ~s)) >= 2:
            return True
    return False


def check_safety(g: Graph, s: Separator | VertexSet,
                 limits: OracleLimits = DEFAULT_LIMITS) -> bool:
    """Whether filling `s` into a clique keeps the treewidth."""
    vertices = s.vertices if isinstance(s, Separator) else s
    return brute_treewidth(fill_clique(g, vertices), limits) == brute_treewidth(g, limits)
