"""Named graphs and random corpora. Tests speak 1-based vertex labels."""

from collections.abc import Iterable, Iterator
import itertools
import random

import networkx as nx
import pytest

from acsep.graph import Graph


def make(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on labels 1..n from 1-based edges."""
    return Graph.from_edges(n, [(u - 1, v - 1) for u, v in edges])


def cycle(n: int) -> Graph:
    return make(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> Graph:
    return make(n, [(i, i + 1) for i in range(1, n)])


def complete(n: int) -> Graph:
    return make(n, itertools.combinations(range(1, n + 1), 2))


def butterfly() -> Graph:
    return make(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])


def ids(*labels: int) -> tuple[int, ...]:
    return tuple(v - 1 for v in labels)


def lab(vertices: Iterable[int]) -> list[int]:
    return [v + 1 for v in vertices]


def labsets(separators) -> list[list[int]]:
    return [lab(s.vertices if hasattr(s, 'vertices') else s) for s in separators]


def from_nx(gx: nx.Graph) -> Graph:
    gx = nx.convert_node_labels_to_integers(gx)
    return Graph.from_edges(gx.number_of_nodes(), gx.edges())


def to_nx(g: Graph) -> nx.Graph:
    gx = nx.Graph()
    gx.add_nodes_from(g.vertices)
    gx.add_edges_from(g.edges())
    return gx


def random_graphs(count: int, n_range: tuple[int, int], probs: Iterable[float], *,
                  seed: int = 2017, connected: bool = True) -> Iterator[Graph]:
    """Deterministic G(n, p) corpus; disconnected draws are redrawn when `connected`."""
    rnd = random.Random(seed)
    probs = list(probs)
    made = 0
    while made < count:
        n = rnd.randint(*n_range)
        p = probs[made % len(probs)]
        gx = nx.gnp_random_graph(n, p, seed=rnd.randrange(2**32))
        if connected and not nx.is_connected(gx):
            continue
        made += 1
        yield from_nx(gx)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def c5() -> Graph:
    return cycle(5)


@pytest.fixture
def c6() -> Graph:
    return cycle(6)


@pytest.fixture
def k4() -> Graph:
    return complete(4)


@pytest.fixture
def p3() -> Graph:
    return path(3)


@pytest.fixture
def bfly() -> Graph:
    return butterfly()


@pytest.fixture
def c4_chord() -> Graph:
    return make(4, [(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)])


@pytest.fixture(scope='session')
def small_corpus() -> list[Graph]:
    """Connected graphs small enough for every brute-force check."""
    return list(random_graphs(60, (5, 10), (0.2, 0.35, 0.5)))
