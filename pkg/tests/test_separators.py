import itertools

import pytest

from acsep.graph import GraphError, fill_clique, is_clique, neighborhood
from acsep.oracle import brute_minimal_separators
from acsep.separators import (ComponentIndex, Origin, Separator, almost_clique_apexes,
                              canonical_order, crosses, full_components, is_minimal_separator,
                              merge_apexes)

from conftest import complete, cycle, ids, lab, labsets, path, random_graphs


@pytest.mark.parametrize('g, s, expected', [
    (cycle(4), [1, 3], [[2], [4]]),
    (cycle(6), [1, 3], [[2], [4, 5, 6]]),
    (path(3), [1], [[2, 3]]),
])
def test_full_components(g, s, expected):
    assert labsets(full_components(g, ids(*s))) == expected


def test_empty_separator_rejected(c4):
    with pytest.raises(GraphError):
        full_components(c4, ())
    with pytest.raises(GraphError):
        Separator(())


@pytest.mark.parametrize('g, s, expected', [
    (cycle(4), [1, 3], True),
    (path(3), [2], True),
    (path(3), [1], False),
    (complete(4), [1, 2], False),
    (complete(4), [1, 2, 3, 4], False),
])
def test_is_minimal_separator(g, s, expected):
    assert is_minimal_separator(g, ids(*s)) is expected


@pytest.mark.parametrize('g, s, expected', [
    (cycle(4), [2, 4], [2, 4]),
    (cycle(4), [2], [2]),
    (cycle(6), [1, 3, 5], []),
    (complete(4), [1, 2, 3], [1, 2, 3]),
    (cycle(5), [1, 2, 4], [4]),
])
def test_almost_clique_apexes(g, s, expected):
    assert lab(almost_clique_apexes(g, ids(*s))) == expected


def test_crosses_examples(c4, c6, k4):
    assert crosses(c4, ids(1, 3), ids(2, 4))
    assert not crosses(c6, ids(1, 4), ids(1, 3))
    assert not crosses(c6, ids(1, 3), ids(1, 4))
    for r in itertools.combinations(k4.vertices, 2):
        assert not crosses(k4, r, ids(1, 2, 3))


def test_canonical_order():
    def seps(*sets):
        return [Separator(ids(*s)) for s in sets]

    assert labsets(canonical_order(seps([2, 4], [1, 3]))) == [[1, 3], [2, 4]]
    assert labsets(canonical_order(seps([1, 3], [1, 3]))) == [[1, 3]]
    assert labsets(canonical_order(seps([1, 2, 3], [4, 5]))) == [[4, 5], [1, 2, 3]]


def test_separator_identity_ignores_cache(c4):
    a = Separator.of(c4, ids(2, 4), Origin.HEURISTIC)
    b = Separator(ids(2, 4), origin=Origin.STANDARD)
    assert a == b and hash(a) == hash(b)
    assert lab(a.apexes) == [2, 4]


def test_merge_apexes_unites():
    merged = merge_apexes([Separator(ids(1, 2, 3), ids(1)), Separator(ids(1, 2, 3), ids(3))])
    assert len(merged) == 1
    assert lab(merged[0].apexes) == [1, 3]


def test_crossing_symmetric_on_minimal_separators():
    for g in random_graphs(25, (5, 11), (0.25, 0.4)):
        seps = [s.vertices for s in brute_minimal_separators(g)]
        for r, s in itertools.combinations(seps, 2):
            assert crosses(g, r, s) == crosses(g, s, r)


def test_component_index_agrees_with_crosses():
    for g in random_graphs(25, (5, 11), (0.25, 0.4)):
        seps = [s.vertices for s in brute_minimal_separators(g)]
        for r in seps:
            index = ComponentIndex(g, r)
            for s in seps:
                assert index.separates(s) == crosses(g, r, s)


def test_minimal_separator_properties():
    for g in random_graphs(25, (5, 11), (0.25, 0.4)):
        seps = brute_minimal_separators(g)
        for sep in seps:
            s = sep.vertices
            for comp in full_components(g, s):
                assert neighborhood(g, comp) == s
            if is_clique(g, s):
                assert not any(crosses(g, r.vertices, s) for r in seps)
            apexes = set(almost_clique_apexes(g, s))
            for pair in itertools.combinations(s, 2):
                assert apexes <= set(almost_clique_apexes(fill_clique(g, pair), s))
