"""Unit tests for rankset.cli"""

import json

import pytest
from click.testing import CliRunner

import rankset.defaults as defaults
from rankset import sat
from rankset.axioms import AXIOMS, AxiomSet, ProblemInstance
from rankset.cli import cli

AVERSION = 'LIN_E,SUAv,SUAp'


@pytest.fixture
def runner(monkeypatch):
    """Return a CLI runner without an external solver configured."""
    monkeypatch.delenv(defaults.SOLVER_ENV, raising=False)
    return CliRunner()


class TestCheck:
    """Test the check command."""

    def test_unsat(self, runner):
        """Ensure jointly unsatisfiable axioms exit with 20."""
        result = runner.invoke(cli, ['check', '-a', AVERSION, '-n', '3'])
        assert result.exit_code == defaults.EXIT_UNSAT
        assert result.output.startswith('UNSAT')
        assert 'clauses=' in result.output

    def test_sat(self, runner):
        """Ensure satisfiable axioms exit with 0."""
        result = runner.invoke(cli, ['check', '-a', AVERSION, '-n', '2'])
        assert result.exit_code == defaults.EXIT_SAT
        assert result.output.startswith('SAT')

    def test_proof(self, runner, tmp_path):
        """Ensure refutations can be written as checkable traces."""
        path = tmp_path / 'aversion.drat'
        result = runner.invoke(cli, ['check', '-a', AVERSION, '-n', '3',
                                     '--proof', str(path)])
        assert result.exit_code == defaults.EXIT_UNSAT
        cnf = ProblemInstance(AxiomSet.from_names(AVERSION.split(',')),
                              3).cnf()
        assert sat.check_proof(cnf, path.read_text())

    def test_no_proof_when_sat(self, runner, tmp_path):
        """Ensure no trace is written for satisfiable axioms."""
        path = tmp_path / 'none.drat'
        result = runner.invoke(cli, ['check', '-a', AVERSION, '-n', '2',
                                     '--proof', str(path)])
        assert result.exit_code == defaults.EXIT_SAT
        assert 'No proof written' in result.output
        assert not path.exists()

    @pytest.mark.parametrize('args', [
        ['-a', 'NOPE', '-n', '3'],
        ['-a', ',', '-n', '3'],
        ['-a', AVERSION, '-n', '9'],
        ['-a', AVERSION, '-n', 'three'],
        ['-a', AVERSION, '-n', '3', '--solver', 'external'],
        ['-a', AVERSION, '-n', '3', '--solver', 'external',
         '--solver-path', '/bin/true', '--proof', 'x.drat'],
    ])
    def test_usage(self, runner, args):
        """Ensure bad options exit with 64."""
        result = runner.invoke(cli, ['check'] + args)
        assert result.exit_code == defaults.EXIT_USAGE

    def test_memory_cap(self, runner):
        """Ensure exhausting the memory cap exits with 30."""
        result = runner.invoke(cli, ['check', '-a', 'all', '-n', '4',
                                     '--memory-cap', '1'])
        assert result.exit_code == defaults.EXIT_UNKNOWN
        assert 'memory' in result.output


class TestWitness:
    """Test the witness command."""

    def test_witness(self, runner):
        """Ensure witnesses print both relations."""
        result = runner.invoke(cli, ['witness', '-a', AVERSION, '-n', '2'])
        assert result.exit_code == defaults.EXIT_SAT
        lines = result.output.splitlines()
        assert lines[0] == 'Element order:'
        assert lines[1] in ('x1 ≻ x2', 'x2 ≻ x1')
        assert 'Set ranking:' in lines

    def test_no_witness(self, runner):
        """Ensure impossible axioms report no witness."""
        result = runner.invoke(cli, ['witness', '-a', AVERSION, '-n', '3'])
        assert result.exit_code == defaults.EXIT_UNSAT
        assert result.output.startswith('No witness')


class TestDimacs:
    """Test the dimacs command."""

    def test_header(self, runner):
        """Ensure the header declares the layout and clause count."""
        result = runner.invoke(cli, ['dimacs', '-a', 'REFL_S', '-n', '2'])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == 'p cnf 13 3'

    def test_file(self, runner, tmp_path):
        """Ensure instances can be written to a file."""
        path = tmp_path / 'refl.cnf'
        result = runner.invoke(cli, ['dimacs', '-a', 'REFL_S', '-n', '2',
                                     '-o', str(path)])
        assert result.exit_code == 0
        assert sat.import_dimacs(path.read_text()).num_vars == 13


class TestMslsp:
    """Test the esg-check and ground commands."""

    def test_esg(self, runner):
        """Ensure shipped guarded sources classify as ESG."""
        result = runner.invoke(cli, ['esg-check', 'gf1.mslsp'])
        assert result.exit_code == 0
        assert result.output == 'ESG\n'

    def test_not_esg(self, runner):
        """Ensure the three-distinct sentence is not ESG."""
        result = runner.invoke(cli, ['esg-check', 'three_distinct.mslsp'])
        assert result.exit_code == defaults.EXIT_ERROR
        assert result.output.startswith('NotESG: exists_e_unguarded x.')

    def test_file(self, runner, tmp_path):
        """Ensure formulas are read from files, free variables allowed."""
        path = tmp_path / 'open.mslsp'
        path.write_text('exists_s B. wpref(A, B)\n')
        result = runner.invoke(cli, ['esg-check', str(path)])
        assert result.exit_code == defaults.EXIT_ERROR
        assert 'exists_s B.' in result.output

    def test_missing(self, runner):
        """Ensure unknown sources exit with 64."""
        result = runner.invoke(cli, ['esg-check', 'nothing.mslsp'])
        assert result.exit_code == defaults.EXIT_USAGE

    def test_syntax_error(self, runner, tmp_path):
        """Ensure syntax errors are reported with their position."""
        path = tmp_path / 'broken.mslsp'
        path.write_text('forall_e x.\n  lpref(x, $)\n')
        result = runner.invoke(cli, ['esg-check', str(path)])
        assert result.exit_code == defaults.EXIT_USAGE
        assert '2:12:' in result.output

    def test_ground(self, runner):
        """Ensure grounded sources come out as DIMACS over the layout."""
        result = runner.invoke(cli, ['ground', 'gf1', '-n', '2'])
        assert result.exit_code == 0
        assert result.output.startswith('p cnf 13 ')

    def test_ground_definitions(self, runner):
        """Ensure a small budget introduces definition variables."""
        result = runner.invoke(cli, ['ground', 'gf1', '-n', '2',
                                     '--budget', '1'])
        assert result.exit_code == 0
        assert int(result.output.split()[2]) > 13

    def test_ground_open(self, runner, tmp_path):
        """Ensure only closed formulas are grounded."""
        path = tmp_path / 'open.mslsp'
        path.write_text('wpref(A, A)\n')
        result = runner.invoke(cli, ['ground', str(path), '-n', '2'])
        assert result.exit_code == defaults.EXIT_USAGE


class TestSearch:
    """Test the search and report commands."""

    def test_search(self, runner, tmp_path):
        """Ensure a complete search prints its table and writes results."""
        out = tmp_path / 'results.json'
        checkpoint = tmp_path / 'run.ckpt'
        result = runner.invoke(cli, ['search', '-a', AVERSION, '-n', '3',
                                     '-q', '-o', str(out),
                                     '-c', str(checkpoint)])
        assert result.exit_code == 0
        assert '1 minimal impossibilities up to size 3' in result.output
        info = json.loads(out.read_text())
        assert info['minimal'][0]['axioms'] == ['LIN_E', 'SUA_V', 'SUA_P']
        assert checkpoint.read_text().startswith('# rankset-checkpoint 1\n')

    def test_report(self, runner, tmp_path):
        """Ensure saved results re-render in every format."""
        out = tmp_path / 'results.json'
        runner.invoke(cli, ['search', '-a', AVERSION, '-n', '3', '-q',
                            '-o', str(out), '-r', str(tmp_path / 'r.txt')])
        result = runner.invoke(cli, ['report', str(out), '-f', 'csv'])
        assert result.exit_code == 0
        rows = result.output.splitlines()
        assert rows[1].startswith('3,1,0,')
        result = runner.invoke(cli, ['report', str(out), '-f', 'json'])
        assert result.output == out.read_text()

    def test_report_file(self, runner, tmp_path):
        """Ensure the report can go to a file instead of stdout."""
        path = tmp_path / 'table.csv'
        result = runner.invoke(cli, ['search', '-a', 'REFL_S,EVEN_EXT',
                                     '-n', '3', '-q', '-f', 'csv',
                                     '-r', str(path)])
        assert result.exit_code == 0
        assert result.output == ''
        assert path.read_text() == ','.join(('Size',) + AXIOMS) + '\n'

    def test_size_order(self, runner):
        """Ensure the smallest size may not exceed the largest."""
        result = runner.invoke(cli, ['search', '-a', AVERSION, '-n', '2',
                                     '--min-size', '3'])
        assert result.exit_code == defaults.EXIT_USAGE

    def test_bad_results(self, runner, tmp_path):
        """Ensure unreadable results files exit with 64."""
        path = tmp_path / 'bad.json'
        path.write_text('{"version": 99}')
        result = runner.invoke(cli, ['report', str(path)])
        assert result.exit_code == defaults.EXIT_USAGE
        assert 'results version' in result.output
