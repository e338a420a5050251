import datetime as dt
import io

import pytest

from acsep.cliquesep import decompose
from acsep.graph import Graph, induced_subgraph
from acsep.triangulation import Method, triangulate
from tools.pace import (FileHeaders, ParseError, TimedHeaders, parse_gr, read_gr, td_text,
                        write_gr, write_td)

from conftest import butterfly, complete, cycle, make, path, random_graphs

C4_GR = '''\
c a four cycle
c
p tw 4 4
1 2
2 3
3 4
4 1
'''


def test_parse_c4(c4):
    headers = FileHeaders()
    assert parse_gr(C4_GR.splitlines(), headers=headers) == c4
    assert headers.comments == ['a four cycle']


@pytest.mark.parametrize('text, lineno', [
    ('p tw 2 1\n1 1\n', 2),
    ('1 2\n', 1),
    ('p tw 2 1\np tw 2 1\n', 2),
    ('p tw 2 1\n1 x\n', 2),
    ('p tw 2 1\n1 0\n', 2),
    ('p tw 2 1\n1 3\n', 2),
    ('p tw 0 0\n', 1),
    ('p td 2 1\n', 1),
    ('p tw 2 1\n1 ²\n', 2),
    ('p tw ² 1\n', 1),
])
def test_parse_errors(text, lineno):
    with pytest.raises(ParseError) as exc:
        parse_gr(text.splitlines())
    assert exc.value.lineno == lineno


def test_parse_missing_header():
    with pytest.raises(ParseError) as exc:
        parse_gr(['c only a comment'])
    assert exc.value.lineno is None


def test_parse_warns_on_duplicates(caplog):
    g = parse_gr('p tw 3 3\n1 2\n2 1\n2 3\n'.splitlines())
    assert g.m == 2
    assert 'duplicate' in caplog.text
    assert 'declares 3 edges' in caplog.text


def test_parse_comment_variants(c4):
    text = 'cfoo\nc\ttabbed note\nc\np tw 4 4\nc between edges\n1 2\n2 3\n3 4\n4 1\n'
    headers = FileHeaders()
    assert parse_gr(text.splitlines(), headers=headers) == c4
    assert headers.comments == ['cfoo', 'tabbed note', 'between edges']


def test_parse_keeps_bad_provenance_as_comments(caplog, c4):
    text = 'c created-at: yesterday\nc labels: a b c d\n' + C4_GR
    headers = TimedHeaders()
    g = parse_gr(text.splitlines(), headers=headers)
    assert g == c4 and g.labels == (1, 2, 3, 4)
    assert headers.created_at is None
    assert 'created-at: yesterday' in headers.comments
    assert 'created-at' in caplog.text and 'non-integer' in caplog.text


def test_write_gr_is_canonical(c4):
    assert write_gr(c4) == 'p tw 4 4\n1 2\n1 4\n2 3\n3 4\n'


def test_gr_round_trip():
    graphs = [cycle(6), complete(4), butterfly(), path(2), make(3, [])]
    graphs += list(random_graphs(20, (3, 20), (0.2, 0.5), connected=False))
    for g in graphs:
        assert parse_gr(write_gr(g).splitlines()) == g


def test_labels_survive_round_trip(c6):
    sub, _ = induced_subgraph(c6, (1, 2, 4))
    text = write_gr(sub)
    assert 'c labels: 2 3 5' in text
    assert parse_gr(text.splitlines()) == sub


def test_timed_headers():
    stamp = dt.datetime(2024, 5, 1, 12, 30, tzinfo=dt.UTC)
    headers = TimedHeaders(created_at=stamp, headers={'instance': 'ex001'})
    lines = headers.dump()
    assert 'c created-at: 2024-05-01 12:30:00+00:00' in lines
    assert 'c instance: ex001' in lines

    loaded = TimedHeaders()
    for line in lines:
        loaded.load_line(line)
    assert loaded.created_at == stamp
    assert loaded.headers == {'instance': 'ex001'}


def _td_header(text: str) -> str:
    return next(line for line in text.splitlines() if line.startswith('s td'))


@pytest.mark.parametrize('g, header, nbags', [
    (make(4, [(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)]), 's td 2 3 4', 2),
    (complete(4), 's td 1 4 4', 1),
    (path(3), 's td 2 2 3', 2),
])
def test_write_td(g, header, nbags):
    text = td_text(triangulate(g, Method.MMAF), g.n)
    assert _td_header(text) == header
    assert sum(line.startswith('b ') for line in text.splitlines()) == nbags


def test_write_td_bags_and_edges():
    text = write_td([(0, 1, 3), (1, 2, 3)], [(0, 1)], 4)
    assert text.splitlines() == ['s td 2 3 4', 'b 1 1 2 4', 'b 2 2 3 4', '1 2']


def test_write_td_joins_forest():
    text = write_td([(0, 1), (2, 3), (4,)], [], 5)
    lines = text.splitlines()
    assert lines[0] == 's td 3 2 5'
    assert lines[-2:] == ['1 2', '1 3']


def test_decomposition_td(c4_chord):
    text = td_text(decompose(c4_chord), c4_chord.n)
    assert _td_header(text) == 's td 2 3 4'


def test_read_gr(tmp_path, c4):
    gr_path = tmp_path / 'c4.gr'
    gr_path.write_text(C4_GR)
    assert read_gr(gr_path) == c4
    buf = io.StringIO()
    write_gr(Graph.from_edges(1, []), buf)
    assert buf.getvalue() == 'p tw 1 0\n'
