"""List almost-clique minimal separators, triangulate and decompose PACE `.gr` graphs."""

from collections.abc import Callable
import argparse
import datetime as dt
import functools
import json
import logging
import pathlib as pth
import sys

from models.bench import BenchRecord, CompareRecord, RatioRecord, write_csv
from models.report import (AcsReport, AtomEntry, DecompositionManifest, ExpansionEntry,
                           SeparatorEntry, TreeEdgeEntry, TriangulationReport, dump_json)
from tools.batch import TaskBatch
from tools.pace import ParseError, TimedHeaders, read_gr, td_text, write_gr

from . import acs
from .acs import AcsMethod, AcsResult, ConsistencyError, PreprocessError
from .config import ConfigError, Settings, load_settings
from .graph import Graph, GraphError, induced_subgraph
from .oracle import (OracleLimitError, brute_almost_clique_minimal_separators, brute_treewidth,
                     check_safety, has_clique_separator)
from .separators import Separator, crosses, is_minimal_separator
from .triangulation import (Method, TriangulationError, minimal_separators_chordal, triangulate,
                            verify_minimal)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_ORACLE_CAP = 4


def _csv_list(kind: type) -> Callable[[str], list]:
    def parse(text: str) -> list:
        try:
            return [kind(item.strip()) for item in text.split(',') if item.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc))
    return parse


def _headers(instance: str, command: str) -> TimedHeaders:
    return TimedHeaders(created_at=dt.datetime.now(),
                        headers={'instance': instance, 'generator': f'acsep {command}'})


def _entry(g: Graph, sep: Separator) -> SeparatorEntry:
    return SeparatorEntry(vertices=g.labelled(sep.vertices), apexes=g.labelled(sep.apexes or ()))


def _emit(text: str, path: pth.Path | None):
    if path is None:
        print(text)
    else:
        with open(path, 'w') as f:
            f.write(text + '\n')


def _instances(src: pth.Path) -> list[pth.Path]:
    if src.is_file():
        return [src]
    if not src.is_dir():
        raise FileNotFoundError(f'No such file or directory: "{src}"')
    return sorted(src.glob('*.gr'))


# --- triangulate ------------------------------------------------------------

def cmd_triangulate(args: argparse.Namespace, cfg: Settings) -> int:
    g = read_gr(args.input)
    instance = args.input.stem
    method = args.method or cfg.triangulation
    t = triangulate(g, method, verify=cfg.verify_triangulations, round_cap=cfg.round_cap)

    out_dir = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    td_path = out_dir / f'{instance}.{method}.td'
    with open(td_path, 'w') as f:
        td_text(t, g.n, sink=f, headers=_headers(instance, f'triangulate --method {method}'))
    log.info(f'Wrote {td_path}')

    report = TriangulationReport(instance=instance, method=str(method), n=g.n, m=g.m,
                                 fill_count=len(t.fill_edges), max_bag=t.width + 1,
                                 width=t.width, rounds=t.rounds,
                                 minimal_claimed=t.minimal_claimed,
                                 verified_minimal=verify_minimal(g, t))
    _emit(dump_json(report), args.json)
    return EXIT_OK


# --- list-acs ---------------------------------------------------------------

def _list(g: Graph, method: AcsMethod, cfg: Settings, triangulation: Method) -> AcsResult:
    match method:
        case AcsMethod.HEURISTIC:
            return acs.heuristic_list(g, triangulation, verify=cfg.verify_triangulations)
        case AcsMethod.STANDARD:
            return acs.standard_list(g)
        case AcsMethod.ALL:
            return acs.all_acs(g)
        case AcsMethod.MAX_EXPANDED:
            return acs.max_list(g)
    raise GraphError(f'Unknown lister {method}')


def cmd_list_acs(args: argparse.Namespace, cfg: Settings) -> int:
    g = read_gr(args.input)
    triangulation = args.triangulation or cfg.triangulation
    res = _list(g, args.method, cfg, triangulation)

    expansion = None
    if args.expand:
        universe = acs.all_acs(g).separators
        seed = () if args.method is AcsMethod.ALL else res.separators
        expanded = acs.greedy_max(g, seed, universe)
        have = set(res.vertex_sets)
        expansion = ExpansionEntry(
            num_max=len(expanded), num_all=len(universe),
            ratio=acs.expansion_ratio(len(res), len(expanded)),
            added=[_entry(g, s) for s in expanded.separators if s.vertices not in have])

    report = AcsReport(instance=args.input.stem, method=str(res.method),
                       triangulation=str(triangulation) if res.triangulation_method else None,
                       count=len(res), elapsed_ms=acs.round_up_ms(res.elapsed_ms),
                       separators=[_entry(g, s) for s in res.separators], expansion=expansion)
    _emit(dump_json(report), args.json)
    return EXIT_OK


# --- decompose --------------------------------------------------------------

def cmd_decompose(args: argparse.Namespace, cfg: Settings) -> int:
    g = read_gr(args.input)
    instance = args.input.stem
    lister = args.lister or cfg.lister
    res = acs.preprocess(g, lister, triangulation=cfg.triangulation, round_cap=cfg.round_cap,
                         verify=cfg.verify_triangulations, instance=instance)

    out_dir = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    dec = res.decomposition
    atoms = []
    for k, atom in enumerate(dec.atoms, start=1):
        sub, _ = induced_subgraph(res.filled, atom)
        atom_path = out_dir / f'atom_{k}.gr'
        with open(atom_path, 'w') as f:
            write_gr(sub, f, headers=_headers(instance, f'decompose --lister {lister}'))
        atoms.append(AtomEntry(index=k, file=atom_path.name, vertices=g.labelled(atom)))

    edges = [TreeEdgeEntry(atoms=(a + 1, b + 1), separator=_entry(res.filled, sep))
             for (a, b), sep in zip(dec.tree_edges, dec.edge_labels)]
    with open(out_dir / 'tree.td', 'w') as f:
        td_text(dec, g.n, sink=f, headers=_headers(instance, f'decompose --lister {lister}'))

    manifest = DecompositionManifest(instance=instance, lister=str(lister), atoms=atoms,
                                     tree_edges=edges, stats=res.stats)
    dump_json(manifest, out_dir / 'manifest.json')
    dump_json(res.stats, out_dir / 'bench.json')
    log.info(f'{instance}: {len(atoms)} atoms, MA={dec.max_atom}, {res.rounds} rounds')
    print(dump_json(res.stats))
    return EXIT_OK


# --- bench ------------------------------------------------------------------

def bench_instance(item: tuple[pth.Path, AcsMethod], cfg: Settings,
                   with_all: bool = False) -> BenchRecord:
    path, lister = item
    g = read_gr(path)
    res = acs.preprocess(g, lister, triangulation=cfg.triangulation, round_cap=cfg.round_cap,
                         verify=cfg.verify_triangulations, instance=path.stem)
    stats = res.stats
    if not with_all:
        return stats

    universe = acs.all_acs(g).separators
    first = res.filled_separators[0] if res.filled_separators else ()
    expanded = acs.greedy_max(g, first, universe)
    return stats.model_copy(update=dict(num_max=len(expanded), num_all=len(universe),
                                        sterile=not universe))


def _ratio_rows(records: list[BenchRecord]) -> list[RatioRecord]:
    by_instance: dict[str, dict[str, BenchRecord]] = {}
    for rec in records:
        by_instance.setdefault(rec.instance, {})[rec.lister] = rec

    rows = []
    for instance, recs in by_instance.items():
        if AcsMethod.HEURISTIC in recs and AcsMethod.STANDARD in recs:
            rows.append(RatioRecord.merge(recs[AcsMethod.HEURISTIC], recs[AcsMethod.STANDARD]))
    return rows


def cmd_bench(args: argparse.Namespace, cfg: Settings) -> int:
    paths = _instances(args.instances)
    if not paths:
        raise GraphError(f'No .gr instances in "{args.instances}"')
    items = [(path, lister) for path in paths for lister in args.listers]

    task = functools.partial(bench_instance, cfg=cfg, with_all=args.all)
    batch = TaskBatch(task, nproc=cfg.jobs or None)
    records = [rec for _, rec in batch.map(items)]

    merged = _ratio_rows(records)
    ratio_map = {r.instance: r for r in merged}
    records = [rec.model_copy(update=dict(ratio_rho1=ratio_map[rec.instance].rho1,
                                          ratio_rho2=ratio_map[rec.instance].rho2))
               if rec.instance in ratio_map else rec for rec in records]

    write_csv(records, args.csv, BenchRecord.columns())
    ratios_csv = args.ratios_csv or args.csv.with_name(f'{args.csv.stem}_ratios.csv')
    if merged:
        write_csv(merged, ratios_csv)
        log.info(f'Wrote {len(merged)} ratio rows to {ratios_csv}')
    log.info(f'Wrote {len(records)} rows to {args.csv}')
    return EXIT_OK


# --- compare ----------------------------------------------------------------

def compare_instance(path: pth.Path, methods: list[Method], cfg: Settings) -> list[CompareRecord]:
    g = read_gr(path)
    universe = acs.all_acs(g).separators
    rows = []
    for method in methods:
        t = triangulate(g, method, verify=cfg.verify_triangulations, round_cap=cfg.round_cap)
        found = acs.acs_from_triangulation(g, t)
        expanded = acs.greedy_max(g, found.separators, universe)
        rows.append(CompareRecord(instance=path.stem, n=g.n, m=g.m, method=str(method),
                                  width=t.width, num_acs=len(found), num_max=len(expanded),
                                  num_all=len(universe),
                                  expansion=acs.expansion_ratio(len(found), len(expanded))))
    return rows


def cmd_compare(args: argparse.Namespace, cfg: Settings) -> int:
    paths = _instances(args.instances)
    if not paths:
        raise GraphError(f'No .gr instances in "{args.instances}"')

    task = functools.partial(compare_instance, methods=args.methods, cfg=cfg)
    batch = TaskBatch(task, nproc=cfg.jobs or None)
    records = [rec for _, recs in batch.map(paths) for rec in recs]
    write_csv(records, args.csv)

    table = {}
    for method in args.methods:
        ratios = [r.expansion for r in records if r.method == method]
        table[str(method)] = {str(b): c for b, c in acs.ratio_table(ratios).items()}
    print(json.dumps(table, indent=2))
    return EXIT_OK


# --- verify -----------------------------------------------------------------

def _sets(separators) -> set[tuple[int, ...]]:
    return {s.vertices for s in separators}


def _non_crossing(g: Graph, separators) -> bool:
    seps = [s.vertices for s in separators]
    return not any(crosses(g, r, s) for i, r in enumerate(seps) for s in seps[i + 1:])


def _triangulations_minimal(g: Graph) -> bool:
    for method in (Method.MMD, Method.MMAF, Method.MCSM):
        t = triangulate(g, method)
        if not verify_minimal(g, t):
            return False
        if not all(is_minimal_separator(g, s.vertices) for s in minimal_separators_chordal(t.h)):
            return False
    return True


def _atoms_tw(g: Graph, lister: AcsMethod, cfg: Settings) -> bool:
    res = acs.preprocess(g, lister, triangulation=cfg.triangulation, round_cap=cfg.round_cap,
                         verify=cfg.verify_triangulations)
    limits = cfg.oracle
    tw = brute_treewidth(g, limits)
    atoms = [induced_subgraph(res.filled, atom)[0] for atom in res.decomposition.atoms]
    if max((brute_treewidth(a, limits) for a in atoms), default=-1) != tw:
        return False
    return not any(has_clique_separator(a, limits) for a in atoms if a.n > 1)


def verify_checks(g: Graph, cfg: Settings) -> list[tuple[str, Callable[[], bool]]]:
    limits = cfg.oracle
    every = functools.cache(lambda: acs.all_acs(g).separators)
    heuristic = functools.cache(
        lambda: acs.heuristic_list(g, cfg.triangulation,
                                   verify=cfg.verify_triangulations).separators)
    standard = functools.cache(lambda: acs.standard_list(g).separators)
    return [
        ('all-acs-matches-brute-force',
         lambda: _sets(every()) == _sets(brute_almost_clique_minimal_separators(g, limits))),
        ('heuristic-within-all', lambda: _sets(heuristic()) <= _sets(every())),
        ('standard-within-all', lambda: _sets(standard()) <= _sets(every())),
        ('heuristic-non-crossing', lambda: _non_crossing(g, heuristic())),
        ('standard-non-crossing', lambda: _non_crossing(g, standard())),
        ('minimal-triangulations', lambda: _triangulations_minimal(g)),
        ('fill-is-safe', lambda: all(check_safety(g, s, limits) for s in every())),
        ('heuristic-atoms-keep-treewidth', lambda: _atoms_tw(g, AcsMethod.HEURISTIC, cfg)),
        ('standard-atoms-keep-treewidth', lambda: _atoms_tw(g, AcsMethod.STANDARD, cfg)),
    ]


def cmd_verify(args: argparse.Namespace, cfg: Settings) -> int:
    g = read_gr(args.input)
    limits = cfg.oracle
    cap = min(limits.max_n_subsets, limits.max_n_tw)
    if g.n > cap:
        raise OracleLimitError(f'{args.input.stem}: {g.n} vertices above the oracle cap of {cap}')

    checks = verify_checks(g, cfg)
    failed = 0
    for i, (name, check) in enumerate(checks, start=1):
        ok = check()
        failed += not ok
        print(f'[{i}/{len(checks)}] {"PASS" if ok else "FAIL"} {name}')
    return EXIT_OK if not failed else EXIT_FAILED


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog='acsep', description=__doc__, formatter_class=fmt)
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging')
    parser.add_argument('--config', type=pth.Path, default=None,
                        help='YML settings file [default: ./acsep.yml when present]')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('triangulate', help='Triangulate a graph, write its clique tree as .td',
                       formatter_class=fmt)
    p.add_argument('input', type=pth.Path, help='PACE .gr file')
    p.add_argument('--method', type=Method, choices=list(Method), default=None,
                   help='Triangulation method [default: from config]')
    p.add_argument('--out-dir', type=pth.Path, default=pth.Path('.'), help='Where .td goes')
    p.add_argument('--json', type=pth.Path, default=None, help='Summary JSON path [stdout]')
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser('list-acs', help='List almost-clique minimal separators',
                       formatter_class=fmt)
    p.add_argument('input', type=pth.Path, help='PACE .gr file')
    p.add_argument('--method', type=AcsMethod, choices=list(AcsMethod),
                   default=AcsMethod.HEURISTIC, help='Lister')
    p.add_argument('--triangulation', type=Method, choices=list(Method), default=None,
                   help='Triangulation used by the heuristic lister [default: from config]')
    p.add_argument('--expand', action='store_true',
                   help='Also expand greedily against all almost-clique minimal separators')
    p.add_argument('--json', type=pth.Path, default=None, help='Report path [stdout]')
    p.set_defaults(func=cmd_list_acs)

    p = sub.add_parser('decompose', help='Preprocess and split into atoms', formatter_class=fmt)
    p.add_argument('input', type=pth.Path, help='PACE .gr file')
    p.add_argument('--lister', type=AcsMethod, choices=acs.LISTERS, default=None,
                   help='Separator lister [default: from config]')
    p.add_argument('--out-dir', type=pth.Path, required=True,
                   help='Directory for atom_<k>.gr files and the JSON manifest')
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser('bench', help='Preprocess every instance with every lister',
                       formatter_class=fmt)
    p.add_argument('instances', type=pth.Path, help='Directory of .gr files (or one file)')
    p.add_argument('--listers', type=_csv_list(AcsMethod), default=list(acs.LISTERS),
                   help='Comma separated listers')
    p.add_argument('--csv', type=pth.Path, required=True, help='Per (instance, lister) rows')
    p.add_argument('--ratios-csv', type=pth.Path, default=None,
                   help='Merged per-instance ratios [default: <csv>_ratios.csv]')
    p.add_argument('--all', action='store_true',
                   help='Also count all and greedily expanded almost-clique minimal separators')
    p.add_argument('-j', '--jobs', type=int, default=None, help='Worker processes')
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser('compare', help='Compare triangulation methods as separator sources',
                       formatter_class=fmt)
    p.add_argument('instances', type=pth.Path, help='Directory of .gr files (or one file)')
    p.add_argument('--methods', type=_csv_list(Method),
                   default=[Method.MMD, Method.MMAF, Method.MCSM],
                   help='Comma separated triangulation methods')
    p.add_argument('--csv', type=pth.Path, required=True, help='Per (instance, method) rows')
    p.add_argument('-j', '--jobs', type=int, default=None, help='Worker processes')
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser('verify', help='Check invariants against brute force (small graphs)',
                       formatter_class=fmt)
    p.add_argument('input', type=pth.Path, help='PACE .gr file')
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO)
    try:
        cfg = load_settings(args.config, jobs=getattr(args, 'jobs', None))
    except (ConfigError, FileNotFoundError) as exc:
        log.error(f'{exc}')
        return EXIT_USAGE

    logging.getLogger().setLevel(logging.DEBUG if args.verbose else cfg.log_level)
    try:
        return args.func(args, cfg)
    except ParseError as exc:
        log.error(f'Parse error: {exc}')
        return EXIT_PARSE
    except OracleLimitError as exc:
        log.error(f'Refused: {exc}')
        return EXIT_ORACLE_CAP
    except (GraphError, FileNotFoundError, IsADirectoryError) as exc:
        log.error(f'{exc}')
        return EXIT_USAGE
    except (TriangulationError, ConsistencyError, PreprocessError) as exc:
        log.error(f'{type(exc).__name__}: {exc}')
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
