"""PACE 2017 treewidth formats: `.gr` graphs (read/write) and `.td` decompositions (write).

Both formats allow `c` comment lines; we use `c key: value` lines as file headers to
carry provenance (creation time, source instance, original vertex labels).
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
import datetime as dt
import logging
import pathlib as pth
import re
import typing as t

from acsep.graph import Graph, GraphError

log = logging.getLogger(__name__)

type AnyPath = pth.Path | str

LABEL_RE = re.compile(r'-?[0-9]+')


class ParseError(ValueError):
    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(msg if lineno is None else f'line {lineno}: {msg}')


@dataclass
class FileHeaders:
    PREFIX = 'c '
    HDR_RE = re.compile(r'^([\w-]+):\s*?(\S.*?)\s*$')
    headers: dict[str, str] = field(default_factory=dict)
    comments: list[str] = field(default_factory=list)

    def dump(self, *, extra_headers: dict[str, str] | None = None) -> list[str]:
        hdr = dict(self.headers)
        if extra_headers is not None:
            hdr.update(extra_headers)

        items = [f'{key}: {value}' for key, value in hdr.items()]
        items += self.comments
        return [self.PREFIX + val for val in items]

    def load_line(self, line: str):
        # `c`, `c text` and `c\ttext` lose the marker; `cfoo` stays whole
        body = line.removeprefix(self.PREFIX.rstrip())
        line = body.strip() if not body or body[0].isspace() else line.strip()

        hdr_match = self.HDR_RE.match(line)
        if hdr_match:
            k, v = hdr_match.groups()
            self.headers[k] = v
        elif line:
            self.comments.append(line)


@dataclass
class TimedHeaders(FileHeaders):
    created_at: dt.datetime | None = None

    @staticmethod
    def time_format(time: dt.datetime | None = None) -> str:
        time = time or dt.datetime.now()    # current time if empty
        time = time.astimezone(dt.UTC)      # avoid leaking TZ
        return time.isoformat(' ', 'seconds')

    def dump(self, *, extra_headers: dict[str, str] | None = None) -> list[str]:
        hdr = {}
        if self.created_at is not None:
            hdr['created-at'] = self.time_format(self.created_at)
        if extra_headers is not None:
            hdr.update(extra_headers)
        return super().dump(extra_headers=hdr)

    def load_line(self, line: str):
        super().load_line(line)
        stamp = self.headers.pop('created-at', None)
        if stamp is None:
            return
        try:
            self.created_at = dt.datetime.fromisoformat(stamp)
        except ValueError:
            log.warning(f'Unreadable created-at header "{stamp}", kept as a comment')
            self.comments.append(f'created-at: {stamp}')


def _is_int(token: str) -> bool:
    return token.isascii() and token.isdigit()


def _positive(token: str, what: str, lineno: int) -> int:
    if not _is_int(token) or int(token) <= 0:
        raise ParseError(f'{what} must be a positive integer, got "{token}"', lineno)
    return int(token)


def parse_gr(lines: Iterable[str], *, headers: FileHeaders | None = None) -> Graph:
    """Parses a PACE `.gr` graph. Duplicate edges are dropped with a warning."""
    headers = headers if headers is not None else TimedHeaders()
    n = m_declared = None
    edges: set[tuple[int, int]] = set()
    ndup = 0

    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith('c'):
            headers.load_line(line)
            continue

        tokens = line.split()
        if tokens[0] == 'p':
            if n is not None:
                raise ParseError('duplicate "p" header', lineno)
            if len(tokens) != 4 or tokens[1] != 'tw':
                raise ParseError(f'malformed header "{line}", expected "p tw <n> <m>"', lineno)
            n = _positive(tokens[2], 'vertex count', lineno)
            m_declared = int(tokens[3]) if _is_int(tokens[3]) else None
            if m_declared is None:
                raise ParseError(f'edge count must be an integer, got "{tokens[3]}"', lineno)
            continue

        if n is None:
            raise ParseError('edge line before the "p tw" header', lineno)
        if len(tokens) != 2:
            raise ParseError(f'expected "<u> <v>", got "{line}"', lineno)
        u, v = (_positive(tok, 'vertex', lineno) for tok in tokens)
        if u > n or v > n:
            raise ParseError(f'vertex out of range 1..{n} in "{line}"', lineno)
        if u == v:
            raise ParseError(f'self-loop on vertex {u}', lineno)

        edge = (min(u, v) - 1, max(u, v) - 1)
        if edge in edges:
            ndup += 1
        edges.add(edge)

    if n is None:
        raise ParseError('missing "p tw <n> <m>" header')
    if ndup:
        log.warning(f'Ignored {ndup} duplicate edges')
    if m_declared != len(edges):
        log.warning(f'Header declares {m_declared} edges, parsed {len(edges)}')

    labels = None
    if 'labels' in headers.headers:
        tokens = headers.headers['labels'].split()
        if not all(map(LABEL_RE.fullmatch, tokens)):
            log.warning('Ignoring "labels" header with non-integer entries')
        elif len(tokens) != n:
            log.warning(f'Ignoring "labels" header with {len(tokens)} entries for n={n}')
        else:
            labels = [int(tok) for tok in tokens]

    try:
        return Graph.from_edges(n, sorted(edges), labels=labels)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def read_gr(path: AnyPath) -> Graph:
    with open(path) as f:
        return parse_gr(f)


def _lines_to(lines: list[str], sink: t.TextIO | None) -> str:
    text = '\n'.join(lines) + '\n'
    if sink is not None:
        sink.write(text)
    return text


def write_gr(g: Graph, sink: t.TextIO | None = None, *,
             headers: FileHeaders | None = None) -> str:
    """Canonical `.gr` text (sorted edges, 1-based ids). Non-default labels go into a
    `c labels:` header so they survive a round trip."""
    extra = {}
    if g.labels != tuple(range(1, g.n + 1)):
        extra['labels'] = ' '.join(map(str, g.labels))

    lines = (headers or FileHeaders()).dump(extra_headers=extra)
    lines.append(f'p tw {g.n} {g.m}')
    lines.extend(f'{u + 1} {v + 1}' for u, v in g.edges())
    return _lines_to(lines, sink)


def _spanning(nbags: int, edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """`edges` plus links joining the trees of a forest into one tree."""
    root = list(range(nbags))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    res = list(edges)
    for a, b in edges:
        root[find(a)] = find(b)
    for i in range(1, nbags):
        if find(i) != find(0):
            res.append((0, i))
            root[find(i)] = find(0)
    return res


def write_td(bags: Sequence[Sequence[int]], tree_edges: Sequence[tuple[int, int]], n: int,
             sink: t.TextIO | None = None, *, headers: FileHeaders | None = None) -> str:
    """`.td` text for the given bags (0-based vertex ids) and bag-index tree edges."""
    lines = (headers or FileHeaders()).dump()
    width = max(map(len, bags), default=0)
    lines.append(f's td {len(bags)} {width} {n}')
    for i, bag in enumerate(bags, start=1):
        lines.append(' '.join(['b', str(i), *(str(v + 1) for v in bag)]))
    lines.extend(f'{a + 1} {b + 1}' for a, b in _spanning(len(bags), tree_edges))
    return _lines_to(lines, sink)


def td_text(obj: t.Any, n: int, **kwargs) -> str:
    """`.td` text of a triangulation (its clique tree) or a decomposition (its atoms)."""
    if hasattr(obj, 'clique_tree'):
        tree = obj.clique_tree
        return write_td(tree.bags, tree.tree_edges, n, **kwargs)
    return write_td(obj.atoms, obj.tree_edges, n, **kwargs)
