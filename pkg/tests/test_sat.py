"""Unit tests for rankset.sat"""

import shutil
import stat
import subprocess

import pytest

import rankset.defaults as defaults
from rankset import sat
from rankset.axioms import (AxiomSet, ProblemInstance, clauses_for,
                            holds_all)
from rankset.errors import DimacsError, ProofError, SolverError
from rankset.models import Cnf, Domain, decode_model
from rankset.mslsp import ground, parse
from rankset.search import NAMED_THEOREMS


def pigeonhole(holes):
    """Return the CNF putting ``holes + 1`` pigeons into ``holes`` holes."""
    def var(pigeon, hole):
        return pigeon * holes + hole + 1
    clauses = [[var(p, h) for h in range(holes)] for p in range(holes + 1)]
    for h in range(holes):
        for p in range(holes + 1):
            for q in range(p + 1, holes + 1):
                clauses.append([-var(p, h), -var(q, h)])
    return Cnf((holes + 1) * holes, clauses)


def theorem_cnf(axioms, n):
    """Return the instance for the named axioms at size ``n``."""
    return ProblemInstance(AxiomSet.from_names(axioms), n).cnf()


def fake_solver(tmp_path, body):
    """Write an executable shell script standing in for a solver."""
    script = tmp_path / 'solver.sh'
    script.write_text('#!/bin/sh\n' + body)
    script.chmod(script.stat().st_mode | stat.S_IEXEC)
    return str(script)


@pytest.fixture
def contradiction():
    """Return the formula x1 and not x1."""
    return Cnf(1, [[1], [-1]])


class TestSolver:
    """Test the built-in solver."""

    def test_empty_formula(self):
        """Ensure the empty formula is satisfiable."""
        verdict = sat.solve(Cnf(0))
        assert verdict.is_sat
        assert verdict.model == []

    def test_contradiction(self, contradiction):
        """Ensure complementary units are unsatisfiable."""
        assert sat.solve(contradiction).is_unsat

    def test_empty_clause(self):
        """Ensure the empty clause is unsatisfiable."""
        assert sat.solve(Cnf(2, [[1, 2], []])).is_unsat

    def test_model_is_total(self):
        """Ensure models assign every declared variable."""
        cnf = Cnf(4, [[1, 2], [-1], [3, -3]])
        verdict = sat.solve(cnf)
        assert verdict.is_sat
        assert len(verdict.model) == 4
        assert cnf.satisfied_by(verdict.model)

    def test_pigeonhole(self):
        """Ensure a small pigeonhole formula is refuted."""
        assert sat.solve(pigeonhole(4)).is_unsat

    def test_reduce_keeps_glue(self):
        """Ensure clause deletion spares glue and binary clauses and drops
        the clauses spanning the most levels first."""
        solver = sat.Solver(Cnf(8))
        glue = solver._attach([2, 4, 6], True, 2)
        binary = solver._attach([8, 10], True, 5)
        wide = {lbd: solver._attach([2, 4, 6, 8], True, lbd)
                for lbd in (3, 4, 5, 6)}
        solver._reduce()
        assert solver.clauses[glue] is not None
        assert solver.clauses[binary] is not None
        assert solver.clauses[wide[6]] is None
        assert solver.clauses[wide[5]] is None
        assert solver.learnts == sorted([glue, binary, wide[3], wide[4]])
        assert solver.stats['reductions'] == 1

    def test_undeclared(self):
        """Ensure literals beyond the declared count are rejected."""
        cnf = Cnf(3, [[3]])
        cnf.num_vars = 2
        with pytest.raises(SolverError):
            sat.Solver(cnf)

    def test_deterministic(self):
        """Ensure equal seeds give equal runs."""
        cnf = theorem_cnf(('LIN_E', 'SUA_V'), 3)
        first = sat.solve(cnf, sat.SolverConfig(seed=7))
        second = sat.solve(cnf, sat.SolverConfig(seed=7))
        assert first == second
        assert first.stats['conflicts'] == second.stats['conflicts']

    def test_timeout(self):
        """Ensure the time budget yields an unknown verdict."""
        verdict = sat.solve(pigeonhole(9), sat.SolverConfig(time_budget=0.05))
        assert verdict.is_unknown
        assert verdict.reason == 'timeout'
        assert repr(verdict) == 'Verdict(UNKNOWN, timeout)'

    def test_memory(self):
        """Ensure the memory cap yields an unknown verdict."""
        verdict = sat.solve(pigeonhole(4), sat.SolverConfig(memory_cap=0))
        assert verdict.is_unknown
        assert verdict.reason == 'memory'


class TestSolverConfig:
    """Test the SolverConfig class."""

    def test_defaults(self):
        """Ensure settings default to the package defaults."""
        config = sat.SolverConfig()
        assert config.seed == defaults.SEED
        assert config.solver == defaults.SOLVER

    def test_replace(self):
        """Ensure replace copies and changes settings."""
        config = sat.SolverConfig(seed=3)
        changed = config.replace(proof=True)
        assert changed.proof and changed.seed == 3
        assert not config.proof

    def test_memory_bytes(self):
        """Ensure the cap converts from MiB."""
        assert sat.SolverConfig(memory_cap=2).memory_bytes == 2 * 1024 ** 2
        assert sat.SolverConfig(memory_cap=None).memory_bytes is None


class TestInstances:
    """Test solving axiom instances."""

    def test_uncertainty_aversion_at_three(self):
        """Ensure linearity and both uncertainty aversions clash on three
        elements."""
        assert sat.solve(theorem_cnf(('LIN_E', 'SUA_V', 'SUA_P'), 3)).is_unsat

    def test_uncertainty_aversion_at_two(self):
        """Ensure the same axioms have a decodable witness on two
        elements."""
        axioms = ('LIN_E', 'SUA_V', 'SUA_P')
        verdict = sat.solve(theorem_cnf(axioms, 2))
        assert verdict.is_sat
        order, relation = decode_model(verdict.model, Domain(2))
        assert holds_all(axioms, order, relation)

    @pytest.mark.slow
    @pytest.mark.parametrize('theorem', NAMED_THEOREMS,
                             ids=lambda theorem: str(theorem.number))
    def test_named_theorems(self, theorem):
        """Ensure each listed impossibility is unsatisfiable at its size."""
        assert sat.solve(theorem_cnf(theorem.axioms, theorem.size)).is_unsat

    @pytest.mark.slow
    @pytest.mark.parametrize('theorem', NAMED_THEOREMS,
                             ids=lambda theorem: str(theorem.number))
    def test_named_theorems_one_smaller(self, theorem):
        """Ensure each listed impossibility has a witness one size down."""
        assert sat.solve(theorem_cnf(theorem.axioms,
                                     theorem.size - 1)).is_sat

    @pytest.mark.slow
    def test_sets_tie_with_extremes(self):
        """Ensure witnesses without uncertainty aversion rank every set
        like its best and worst member together."""
        axioms = ('LIN_E', 'REFL_S', 'COMPL_S', 'TRANS_S', 'GF1', 'GF2',
                  'IND')
        domain = Domain(5)
        verdict = sat.solve(theorem_cnf(axioms, 5))
        assert verdict.is_sat
        order, relation = decode_model(verdict.model, domain)
        for a in domain.sets():
            extremes = (1 << order.max_of(a)) | (1 << order.min_of(a))
            assert relation.indifferent(a, extremes)


class TestVerifyModel:
    """Test verify_model."""

    def test_short_model(self):
        """Ensure partial models are rejected."""
        with pytest.raises(SolverError):
            sat.verify_model(Cnf(2, [[1]]), [True])

    def test_falsified(self):
        """Ensure models falsifying a clause are rejected."""
        with pytest.raises(SolverError):
            sat.verify_model(Cnf(2, [[1, 2]]), [False, False])


class TestDimacs:
    """Test export_dimacs and import_dimacs."""

    def test_export(self):
        """Ensure the header and clause lines follow DIMACS."""
        assert sat.export_dimacs(Cnf(2, [[1, -2]])) == 'p cnf 2 1\n1 -2 0\n'

    def test_export_instance(self):
        """Ensure instances export with the layout's variable count."""
        text = sat.export_dimacs(clauses_for('REFL_S', 3))
        assert text.splitlines()[0] == 'p cnf {} 7'.format(
            Domain(3).num_vars)

    def test_import(self):
        """Ensure comments are skipped and clauses may span lines."""
        text = 'c comment\np cnf 3 2\n1 -2\n 0 3 0\n%\n0\n'
        cnf = sat.import_dimacs(text)
        assert cnf.num_vars == 3
        assert cnf.clauses == ((1, -2), (3,))

    def test_import_export(self):
        """Ensure exported text reads back to the same formula."""
        cnf = clauses_for('SUA_V', 2)
        assert sat.import_dimacs(sat.export_dimacs(cnf)) == cnf

    @pytest.mark.parametrize('text, line', [
        ('p dnf 2 1\n1 0\n', 1),
        ('p cnf 2 1\n1 x 0\n', 2),
        ('p cnf 2 1\n1 3 0\n', 2),
        ('p cnf 2 1\n1 2\n', 2),
        ('p cnf 2 2\n1 2 0\n', 2),
        ('c only a comment\n', 1),
    ])
    def test_import_errors(self, text, line):
        """Ensure malformed text is reported with its line."""
        with pytest.raises(DimacsError) as excinfo:
            sat.import_dimacs(text)
        assert excinfo.value.line == line

    def test_empty_text(self):
        """Ensure empty text has no header."""
        with pytest.raises(DimacsError) as excinfo:
            sat.import_dimacs('')
        assert excinfo.value.line is None


class TestProofs:
    """Test emit_proof and check_proof."""

    def test_instance_proof(self):
        """Ensure a refutation of an instance checks."""
        cnf = theorem_cnf(('LIN_E', 'SUA_V', 'SUA_P'), 3)
        proof = sat.emit_proof(cnf)
        assert proof.endswith('0\n')
        assert sat.check_proof(cnf, proof)

    @pytest.mark.parametrize('theorem', [
        theorem if theorem.size <= 3 else
        pytest.param(theorem, marks=pytest.mark.slow)
        for theorem in NAMED_THEOREMS if theorem.size <= 4
    ], ids=lambda theorem: 'no{}'.format(theorem.number))
    def test_named_theorem_proofs(self, theorem):
        """Ensure every named refutation up to size four checks."""
        cnf = theorem_cnf(theorem.axioms, theorem.size)
        assert sat.check_proof(cnf, sat.emit_proof(cnf))

    def test_pigeonhole_proof(self):
        """Ensure proofs with deletions check."""
        cnf = pigeonhole(5)
        assert sat.check_proof(cnf, sat.emit_proof(cnf))

    def test_trivial_proof(self, contradiction):
        """Ensure refutations by top-level propagation check."""
        proof = sat.emit_proof(contradiction)
        assert proof == '0\n'
        assert sat.check_proof(contradiction, proof)

    def test_satisfiable(self):
        """Ensure satisfiable formulas have no proof."""
        with pytest.raises(ProofError):
            sat.emit_proof(Cnf(1, [[1]]))

    def test_bad_lemma(self):
        """Ensure lemmas that do not follow are rejected."""
        with pytest.raises(ProofError):
            sat.check_proof(Cnf(2, [[1, 2]]), '1 0\n0\n')

    def test_unterminated(self, contradiction):
        """Ensure lines must end with 0."""
        with pytest.raises(ProofError):
            sat.check_proof(contradiction, '1\n')

    def test_no_empty_clause(self, contradiction):
        """Ensure a proof must derive the empty clause."""
        with pytest.raises(ProofError):
            sat.check_proof(contradiction, '')

    @pytest.mark.skipif(shutil.which('drat-trim') is None,
                        reason='drat-trim not installed')
    def test_drat_trim(self, tmp_path):
        """Ensure an external checker accepts emitted proofs."""
        cnf = theorem_cnf(('LIN_E', 'SUA_V', 'SUA_P'), 3)
        formula = tmp_path / 'instance.cnf'
        proof = tmp_path / 'instance.drat'
        formula.write_text(sat.export_dimacs(cnf))
        proof.write_text(sat.emit_proof(cnf))
        result = subprocess.run(['drat-trim', str(formula), str(proof)],
                                stdout=subprocess.PIPE,
                                universal_newlines=True)
        assert 's VERIFIED' in result.stdout


class TestExternalSolver:
    """Test ExternalSolver and parse_solver_output."""

    def test_no_path(self, monkeypatch):
        """Ensure a binary must be configured."""
        monkeypatch.delenv(defaults.SOLVER_ENV, raising=False)
        with pytest.raises(SolverError):
            sat.ExternalSolver()

    def test_environment(self, monkeypatch):
        """Ensure the binary may come from the environment."""
        monkeypatch.setenv(defaults.SOLVER_ENV, '/opt/solver')
        assert sat.ExternalSolver().path == '/opt/solver'

    def test_satisfiable(self, tmp_path):
        """Ensure models printed by the binary are read and verified."""
        path = fake_solver(tmp_path, 'echo "s SATISFIABLE"\necho "v 1 -2 0"\n')
        config = sat.SolverConfig(solver='external', solver_path=path)
        verdict = sat.solve(Cnf(2, [[1], [-2]]), config)
        assert verdict == sat.Verdict(sat.SAT, model=[True, False])

    def test_wrong_model(self, tmp_path):
        """Ensure models that falsify the formula are rejected."""
        path = fake_solver(tmp_path, 'echo "s SATISFIABLE"\necho "v -1 0"\n')
        config = sat.SolverConfig(solver='external', solver_path=path)
        with pytest.raises(SolverError):
            sat.solve(Cnf(1, [[1]]), config)

    def test_unsatisfiable(self, tmp_path, contradiction):
        """Ensure refutations are reported."""
        path = fake_solver(tmp_path, 'echo "s UNSATISFIABLE"\n')
        assert sat.ExternalSolver(path).solve(contradiction).is_unsat

    def test_receives_dimacs(self, tmp_path):
        """Ensure the binary is given the formula as a DIMACS file."""
        copy = tmp_path / 'seen.cnf'
        path = fake_solver(tmp_path, 'cp "$1" {}\necho UNSATISFIABLE\n'
                           .format(copy))
        sat.ExternalSolver(path).solve(Cnf(2, [[1, -2]]))
        assert copy.read_text() == 'p cnf 2 1\n1 -2 0\n'

    def test_timeout(self, tmp_path):
        """Ensure a slow binary yields an unknown verdict."""
        path = fake_solver(tmp_path, 'exec sleep 5\n')
        verdict = sat.ExternalSolver(path).solve(
            Cnf(1, [[1]]), sat.SolverConfig(time_budget=0.2))
        assert verdict == sat.Verdict(sat.UNKNOWN, reason='timeout')

    def test_missing_binary(self, tmp_path):
        """Ensure a binary that cannot run is reported."""
        solver = sat.ExternalSolver(str(tmp_path / 'absent'))
        with pytest.raises(SolverError):
            solver.solve(Cnf(1, [[1]]))

    def test_plain_status(self):
        """Ensure status lines without the s prefix are read and missing
        values default to false."""
        verdict = sat.parse_solver_output('SATISFIABLE\nv 2\nv 0\n', 3)
        assert verdict.model == [False, True, False]

    def test_no_status(self):
        """Ensure output without a status is rejected."""
        with pytest.raises(SolverError):
            sat.parse_solver_output('c nothing\n', 1)


class TestEntailment:
    """Test entails and equivalent."""

    def test_completeness_without_reflexivity(self):
        """Ensure completeness over distinct sets leaves reflexivity open."""
        complete = clauses_for('COMPL_S', 2)
        reflexive = clauses_for('REFL_S', 2)
        assert not sat.entails(complete, reflexive)
        assert not sat.entails(reflexive, complete)
        assert not sat.equivalent(complete, reflexive)

    def test_reflexive_completeness(self):
        """Ensure completeness and reflexivity give comparability of every
        pair of sets, equal ones included."""
        complete = clauses_for('COMPL_S', 2)
        both = complete.extended(clauses_for('REFL_S', 2).clauses)
        total = ground(parse('forall_s A. forall_s B. '
                             'wpref(A, B) or wpref(B, A)', closed=True), 2)
        assert sat.entails(both, total)
        assert sat.entails(total, both)
        assert not sat.entails(complete, total)

    def test_self_equivalence(self):
        """Ensure a formula is equivalent to itself."""
        cnf = clauses_for('TRANS_S', 2)
        assert sat.equivalent(cnf, cnf.simplified())

    def test_auxiliary_variables(self):
        """Ensure formulas with definitions are refused."""
        with pytest.raises(SolverError):
            sat.entails(Cnf(3, [[1, 3]], base_vars=2), Cnf(2, [[1]]))
