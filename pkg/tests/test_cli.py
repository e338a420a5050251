import csv
import json

import pytest

from acsep import acs
from acsep.cli import EXIT_OK, EXIT_ORACLE_CAP, EXIT_PARSE, EXIT_USAGE, main
from models.bench import BenchRecord
from models.report import DecompositionManifest
from tools.pace import read_gr, write_gr

from conftest import cycle, path


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    inst = tmp_path / 'instances'
    inst.mkdir()
    with open(inst / 'C4.gr', 'w') as f:
        write_gr(cycle(4), f)
    with open(inst / 'C6.gr', 'w') as f:
        write_gr(cycle(6), f)
    return tmp_path


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_triangulate(workdir, capsys):
    assert main(['triangulate', 'instances/C4.gr', '--method', 'mmd', '--out-dir', 'out']) == 0
    report = _stdout_json(capsys)
    assert report['fill_count'] == 1 and report['max_bag'] == 3
    assert report['verified_minimal'] and report['minimal_claimed']
    td = (workdir / 'out' / 'C4.mmd.td').read_text().splitlines()
    assert 's td 2 3 4' in td
    assert any(line.startswith('c created-at: ') for line in td)


def test_list_acs_all(workdir, capsys):
    assert main(['list-acs', '--method', 'all', 'instances/C6.gr']) == EXIT_OK
    report = _stdout_json(capsys)
    assert report['count'] == 9 and len(report['separators']) == 9
    assert report['separators'][0] == {'vertices': [1, 3], 'apexes': [1, 3]}


def test_list_acs_expand(workdir, capsys):
    assert main(['list-acs', 'instances/C6.gr', '--expand']) == EXIT_OK
    report = _stdout_json(capsys)
    assert report['method'] == 'heuristic' and report['triangulation'] == 'mmaf'
    expansion = report['expansion']
    assert expansion['num_all'] == 9 and expansion['num_max'] == report['count'] == 3
    assert expansion['ratio'] == 1.0 and expansion['added'] == []


def test_decompose(workdir, capsys):
    out = workdir / 'atoms'
    assert main(['decompose', '--lister', 'heuristic', 'instances/C4.gr',
                 '--out-dir', str(out)]) == EXIT_OK
    stats = _stdout_json(capsys)
    assert stats['max_atom'] == 3 and stats['num_atoms'] == 2

    assert sorted(p.name for p in out.glob('atom_*.gr')) == ['atom_1.gr', 'atom_2.gr']
    assert read_gr(out / 'atom_1.gr').labels == (1, 2, 4)
    manifest = DecompositionManifest.from_json_file(out / 'manifest.json')
    assert [a.vertices for a in manifest.atoms] == [[1, 2, 4], [2, 3, 4]]
    assert manifest.tree_edges[0].separator.vertices == [2, 4]
    assert BenchRecord.model_validate_json((out / 'bench.json').read_text()).max_atom == 3


def test_bench(workdir):
    assert main(['bench', 'instances', '--csv', 'bench.csv', '-j', '1']) == EXIT_OK
    with open(workdir / 'bench.csv') as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 4
    assert [(r['instance'], r['lister']) for r in rows] == [
        ('C4', 'heuristic'), ('C4', 'standard'), ('C6', 'heuristic'), ('C6', 'standard')]
    assert list(rows[0]) == BenchRecord.columns()

    with open(workdir / 'bench_ratios.csv') as f:
        ratios = list(csv.DictReader(f))
    assert [r['instance'] for r in ratios] == ['C4', 'C6']
    assert float(ratios[0]['rho2']) == 1.0


def test_bench_csv_is_reproducible(workdir, monkeypatch):
    monkeypatch.setattr('acsep.acs.round_up_ms', lambda ms: 7)
    outputs = []
    for run in ('a', 'b'):
        assert main(['bench', 'instances', '--all', '--csv', f'{run}.csv', '-j', '1']) == EXIT_OK
        outputs.append(((workdir / f'{run}.csv').read_bytes(),
                        (workdir / f'{run}_ratios.csv').read_bytes()))
    assert outputs[0] == outputs[1]
    assert b',7,' in outputs[0][0]


def test_bench_all_counts(workdir):
    assert main(['bench', 'instances/C6.gr', '--listers', 'standard', '--all',
                 '--csv', 'one.csv', '-j', '1']) == EXIT_OK
    with open(workdir / 'one.csv') as f:
        (row,) = csv.DictReader(f)
    assert row['num_all'] == '9' and row['sterile'] == 'False'
    assert int(row['num_acs']) <= int(row['num_max']) <= 9


def test_compare(workdir, capsys):
    assert main(['compare', 'instances', '--methods', 'mmaf,mcsm', '--csv', 'cmp.csv',
                 '-j', '1']) == EXIT_OK
    table = _stdout_json(capsys)
    assert set(table) == {'mmaf', 'mcsm'}
    assert table['mmaf']['3.0'] == 2
    with open(workdir / 'cmp.csv') as f:
        assert len(list(csv.DictReader(f))) == 4


def test_verify(workdir, capsys):
    assert main(['verify', 'instances/C6.gr']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'FAIL' not in out and out.count('PASS') == 9


def test_verify_uses_settings(workdir, monkeypatch, capsys):
    (workdir / 'acsep.yml').write_text('triangulation: mcsm\nround_cap: 9\n')
    seen = []
    preprocess = acs.preprocess

    def recording(g, lister, **kwargs):
        seen.append((lister, kwargs['triangulation'], kwargs['round_cap']))
        return preprocess(g, lister, **kwargs)

    monkeypatch.setattr('acsep.acs.preprocess', recording)
    assert main(['verify', 'instances/C6.gr']) == EXIT_OK
    assert capsys.readouterr().out.count('PASS') == 9
    assert seen == [('heuristic', 'mcsm', 9), ('standard', 'mcsm', 9)]


def test_verify_refuses_large_graphs(workdir):
    with open(workdir / 'big.gr', 'w') as f:
        write_gr(path(20), f)
    assert main(['verify', 'big.gr']) == EXIT_ORACLE_CAP


def test_parse_error_exit(workdir):
    (workdir / 'broken.gr').write_text('p tw 2 1\n1 1\n')
    assert main(['list-acs', 'broken.gr']) == EXIT_PARSE
    (workdir / 'digits.gr').write_text('p tw 2 1\n1 ²\n')
    assert main(['list-acs', 'digits.gr']) == EXIT_PARSE


def test_unreadable_headers_are_comments(workdir):
    text = (workdir / 'instances' / 'C4.gr').read_text()
    (workdir / 'stamped.gr').write_text('c created-at: yesterday\nc labels: a b\n' + text)
    assert main(['list-acs', 'stamped.gr']) == EXIT_OK


def test_usage_errors(workdir):
    with pytest.raises(SystemExit) as exc:
        main(['list-acs', '--method', 'nope', 'instances/C4.gr'])
    assert exc.value.code == EXIT_USAGE
    assert main(['list-acs', 'missing.gr']) == EXIT_USAGE
    assert main(['--config', 'missing.yml', 'list-acs', 'instances/C4.gr']) == EXIT_USAGE
    assert main(['bench', 'missing_dir', '--csv', 'x.csv']) == EXIT_USAGE
