"""Deciding CNF formulas.

The built-in solver is conflict-driven: two watched literals per clause,
first-UIP learning with local minimization, activity-based branching with
saved phases, geometric restarts and periodic reduction of learnt clauses
ranked by the decision levels they span. An external DIMACS solver can stand
in for it, and unsatisfiable runs of the built-in solver can leave a DRAT
trace behind for independent checking.

Internally a literal ``l`` is coded as ``2 * abs(l) + (l < 0)`` so that
negation is ``code ^ 1`` and per-literal state fits in flat lists.

"""

import collections
import heapq
import logging
import os
import random
import re
import subprocess
import tempfile
import time

import bitmath

import rankset.defaults as defaults
from rankset.errors import DimacsError, ProofError, SolverError
from rankset.models import Cnf, EqualityMixin

log = logging.getLogger(__name__)

SAT = 'SAT'
UNSAT = 'UNSAT'
UNKNOWN = 'UNKNOWN'

# How often (in main loop iterations) budgets are checked.
_BUDGET_INTERVAL = 512
# Rough in-memory cost of a clause and of one literal in it.
_CLAUSE_BYTES = 120
_LITERAL_BYTES = 40
# Learnt clauses spanning at most this many decision levels are kept.
_GLUE_LBD = 2


class Verdict(EqualityMixin):
    """The outcome of a solver run.

    Args:
        status (:obj:`str`): :obj:`SAT`, :obj:`UNSAT` or :obj:`UNKNOWN`.
        model (:obj:`list` of :obj:`bool`, optional): For SAT, the value of
            every declared variable, indexed by ``var - 1``.
        reason (:obj:`str`, optional): For UNKNOWN, ``'timeout'`` or
            ``'memory'``.
        stats (:obj:`dict`, optional): Solver statistics. Not compared.
        proof (:obj:`list` of :obj:`str`, optional): DRAT lines, when
            requested. Not compared.

    """

    equality_ignore = ['stats', 'proof']

    def __init__(self, status, model=None, reason=None, stats=None,
                 proof=None):
        self.status = status
        self.model = model
        self.reason = reason
        self.stats = stats or {}
        self.proof = proof

    def __repr__(self):
        if self.status == UNKNOWN:
            return 'Verdict(UNKNOWN, {})'.format(self.reason)
        return 'Verdict({})'.format(self.status)

    @property
    def is_sat(self):
        """:obj:`bool`: The formula has a model."""
        return self.status == SAT

    @property
    def is_unsat(self):
        """:obj:`bool`: The formula has no model."""
        return self.status == UNSAT

    @property
    def is_unknown(self):
        """:obj:`bool`: The run ended on a budget."""
        return self.status == UNKNOWN


class SolverConfig(object):
    """Settings for a solver run.

    Every argument defaults to the matching constant in
    :obj:`rankset.defaults`.

    Args:
        time_budget (:obj:`float`, optional): Seconds before giving up with
            ``Unknown('timeout')``; None for no limit.
        memory_cap (:obj:`int`, optional): MiB of clause storage before
            giving up with ``Unknown('memory')``.
        restart_first (:obj:`int`, optional): Conflicts before the first
            restart.
        restart_factor (:obj:`float`, optional): Growth of the restart
            interval.
        var_decay (:obj:`float`, optional): Variable activity decay.
        clause_decay (:obj:`float`, optional): Learnt clause activity decay.
        random_freq (:obj:`float`, optional): Share of random decisions.
        seed (:obj:`int`, optional): Seed for tie-breaking and random
            decisions.
        proof (:obj:`bool`, optional): Record a DRAT trace.
        solver (:obj:`str`, optional): ``'builtin'`` or ``'external'``.
        solver_path (:obj:`str`, optional): External solver binary; falls
            back to the environment variable named by
            :obj:`defaults.SOLVER_ENV`.

    """

    def __init__(self, time_budget=defaults.TIME_BUDGET,
                 memory_cap=defaults.MEMORY_CAP_MIB,
                 restart_first=defaults.RESTART_FIRST,
                 restart_factor=defaults.RESTART_FACTOR,
                 var_decay=defaults.VAR_DECAY,
                 clause_decay=defaults.CLAUSE_DECAY,
                 random_freq=defaults.RANDOM_FREQ, seed=defaults.SEED,
                 proof=False, solver=defaults.SOLVER, solver_path=None):
        self.time_budget = time_budget
        self.memory_cap = memory_cap
        self.restart_first = restart_first
        self.restart_factor = restart_factor
        self.var_decay = var_decay
        self.clause_decay = clause_decay
        self.random_freq = random_freq
        self.seed = seed
        self.proof = proof
        self.solver = solver
        self.solver_path = solver_path

    def replace(self, **changes):
        """Return a copy with some settings changed."""
        settings = dict(self.__dict__)
        settings.update(changes)
        return SolverConfig(**settings)

    @property
    def memory_bytes(self):
        """:obj:`int`: The memory cap in bytes, or None without a cap."""
        if self.memory_cap is None:
            return None
        return int(bitmath.MiB(self.memory_cap).to_Byte().value)


def _code(lit):
    return 2 * lit if lit > 0 else -2 * lit + 1


def _lit(code):
    return -(code >> 1) if code & 1 else code >> 1


class Solver(object):
    """A CDCL solver for one formula.

    Args:
        cnf (:obj:`Cnf`): The formula. Tautological clauses are skipped.
        config (:obj:`SolverConfig`, optional): Settings.

    Raises:
        :obj:`SolverError`: If a literal lies outside the declared variables.

    """

    def __init__(self, cnf, config=None):
        self.config = config or SolverConfig()
        self.num_vars = nv = cnf.num_vars
        self.values = [0] * (2 * nv + 2)
        self.level = [0] * (nv + 1)
        self.reason = [None] * (nv + 1)
        self.seen = [False] * (nv + 1)
        self.polarity = [False] * (nv + 1)
        self.watches = [[] for _ in range(2 * nv + 2)]
        self.clauses = []
        self.learnts = []
        self.clause_activity = {}
        self.clause_lbd = {}
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.literals = 0
        self.rng = random.Random(self.config.seed)
        self.activity = [0.0] + [self.rng.random() * 1e-5
                                 for _ in range(nv)]
        self.heap = [(-self.activity[v], v) for v in range(1, nv + 1)]
        heapq.heapify(self.heap)
        self.proof = [] if self.config.proof else None
        self.stats = collections.Counter()
        self.ok = True
        self._load(cnf)

    def _load(self, cnf):
        units = []
        for clause in cnf.clauses:
            if any(lit == 0 or abs(lit) > self.num_vars for lit in clause):
                raise SolverError('clause {} references undeclared variables'
                                  .format(list(clause)))
            if Cnf.is_tautology(clause):
                continue
            codes = [_code(lit) for lit in clause]
            if not codes:
                self.ok = False
            elif len(codes) == 1:
                units.append(codes[0])
            else:
                self._attach(codes)
        for code in units:
            if self.values[code] == -1:
                self.ok = False
            elif self.values[code] == 0:
                self._enqueue(code, None)

    def _attach(self, codes, learnt=False, lbd=0):
        index = len(self.clauses)
        self.clauses.append(codes)
        self.watches[codes[0]].append(index)
        self.watches[codes[1]].append(index)
        self.literals += len(codes)
        if learnt:
            self.learnts.append(index)
            self.clause_activity[index] = self.cla_inc
            self.clause_lbd[index] = lbd
        return index

    def _enqueue(self, code, reason):
        var = code >> 1
        self.values[code] = 1
        self.values[code ^ 1] = -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(code)

    def _propagate(self):
        values, clauses, watches = self.values, self.clauses, self.watches
        trail = self.trail
        propagated = 0
        while self.qhead < len(trail):
            false_lit = trail[self.qhead] ^ 1
            self.qhead += 1
            propagated += 1
            pending = watches[false_lit]
            kept = watches[false_lit] = []
            position, total = 0, len(pending)
            while position < total:
                index = pending[position]
                position += 1
                clause = clauses[index]
                if clause is None:
                    continue
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], false_lit
                first = clause[0]
                if values[first] == 1:
                    kept.append(index)
                    continue
                for k in range(2, len(clause)):
                    candidate = clause[k]
                    if values[candidate] != -1:
                        clause[1], clause[k] = candidate, false_lit
                        watches[candidate].append(index)
                        break
                else:
                    kept.append(index)
                    if values[first] == -1:
                        kept.extend(pending[position:])
                        self.qhead = len(trail)
                        self.stats['propagations'] += propagated
                        return index
                    self._enqueue(first, index)
        self.stats['propagations'] += propagated
        return None

    def _bump_var(self, var):
        self.activity[var] += self.var_inc
        if self.activity[var] > 1e100:
            self.activity = [act * 1e-100 for act in self.activity]
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[v], v)
                         for v in range(1, self.num_vars + 1)
                         if self.values[2 * v] == 0]
            heapq.heapify(self.heap)
        elif self.values[2 * var] == 0:
            heapq.heappush(self.heap, (-self.activity[var], var))

    def _bump_clause(self, index):
        if index not in self.clause_activity:
            return
        self.clause_activity[index] += self.cla_inc
        if self.clause_activity[index] > 1e20:
            for key in self.clause_activity:
                self.clause_activity[key] *= 1e-20
            self.cla_inc *= 1e-20

    def _analyze(self, conflict):
        seen, level, reason, trail = (self.seen, self.level, self.reason,
                                      self.trail)
        current = len(self.trail_lim)
        learnt = [0]
        counter = 0
        code = None
        position = len(trail) - 1
        while True:
            self._bump_clause(conflict)
            clause = self.clauses[conflict]
            for other in (clause if code is None else clause[1:]):
                var = other >> 1
                if not seen[var] and level[var] > 0:
                    self._bump_var(var)
                    seen[var] = True
                    if level[var] >= current:
                        counter += 1
                    else:
                        learnt.append(other)
            while not seen[trail[position] >> 1]:
                position -= 1
            code = trail[position]
            position -= 1
            conflict = reason[code >> 1]
            seen[code >> 1] = False
            counter -= 1
            if counter == 0:
                break
        learnt[0] = code ^ 1

        kept = [learnt[0]]
        for other in learnt[1:]:
            why = reason[other >> 1]
            if why is None or not all(seen[lit >> 1] or level[lit >> 1] == 0
                                      for lit in self.clauses[why][1:]):
                kept.append(other)
        for other in learnt:
            seen[other >> 1] = False

        if len(kept) == 1:
            return kept, 0
        best = max(range(1, len(kept)), key=lambda i: level[kept[i] >> 1])
        kept[1], kept[best] = kept[best], kept[1]
        return kept, level[kept[1] >> 1]

    def _backtrack(self, target):
        if len(self.trail_lim) <= target:
            return
        stop = self.trail_lim[target]
        for code in self.trail[stop:]:
            var = code >> 1
            self.values[code] = self.values[code ^ 1] = 0
            self.reason[var] = None
            self.polarity[var] = not code & 1
            heapq.heappush(self.heap, (-self.activity[var], var))
        del self.trail[stop:]
        del self.trail_lim[target:]
        self.qhead = len(self.trail)

    def _pick(self):
        if self.config.random_freq and \
                self.rng.random() < self.config.random_freq:
            var = self.rng.randint(1, self.num_vars)
            if self.values[2 * var] == 0:
                self.stats['random_decisions'] += 1
                return var
        while self.heap:
            neg_activity, var = heapq.heappop(self.heap)
            if self.values[2 * var] == 0 and \
                    -neg_activity == self.activity[var]:
                return var
        for var in range(1, self.num_vars + 1):
            if self.values[2 * var] == 0:
                return var
        return None

    def _locked(self, index):
        first = self.clauses[index][0]
        return (self.values[first] == 1
                and self.reason[first >> 1] == index)

    def _reduce(self):
        # Glue and binary clauses stay. Others go by levels spanned, then
        # activity.
        lbd, activity = self.clause_lbd, self.clause_activity
        keep = [index for index in self.learnts
                if lbd[index] <= _GLUE_LBD or len(self.clauses[index]) <= 2]
        ordered = sorted((index for index in self.learnts
                          if lbd[index] > _GLUE_LBD
                          and len(self.clauses[index]) > 2),
                         key=lambda i: (-lbd[i], activity[i], i))
        half = len(ordered) // 2
        for position, index in enumerate(ordered):
            clause = self.clauses[index]
            if position < half and not self._locked(index):
                self._log_proof(clause, delete=True)
                self.literals -= len(clause)
                self.clauses[index] = None
                del activity[index]
                del lbd[index]
            else:
                keep.append(index)
        self.learnts = sorted(keep)
        self.stats['reductions'] += 1

    def _log_proof(self, codes, delete=False):
        if self.proof is None:
            return
        line = ' '.join(str(_lit(code)) for code in codes)
        line = (line + ' 0') if line else '0'
        self.proof.append('d ' + line if delete else line)

    def _verdict(self, status, started, reason=None):
        self.stats['seconds'] = round(time.monotonic() - started, 3)
        model = None
        if status == SAT:
            model = [self.values[2 * var] == 1
                     for var in range(1, self.num_vars + 1)]
        if status == UNSAT and self.proof is not None:
            self.proof.append('0')
        log.debug('%s after %d conflicts, %d decisions, %.3fs', status,
                  self.stats['conflicts'], self.stats['decisions'],
                  self.stats['seconds'])
        return Verdict(status, model=model, reason=reason,
                       stats=dict(self.stats), proof=self.proof)

    def _over_budget(self, started):
        budget = self.config.time_budget
        if budget is not None and time.monotonic() - started > budget:
            return 'timeout'
        used = (len(self.clauses) * _CLAUSE_BYTES
                + self.literals * _LITERAL_BYTES)
        cap = self.config.memory_bytes
        if cap is not None and used > cap:
            return 'memory'
        return None

    def solve(self):
        """Run the search.

        Returns:
            :obj:`Verdict`: SAT with a total model, UNSAT, or UNKNOWN when a
            budget ran out.

        """
        started = time.monotonic()
        if not self.ok or self._propagate() is not None:
            return self._verdict(UNSAT, started)
        overflow = self._over_budget(started)
        if overflow:
            return self._verdict(UNKNOWN, started, overflow)

        restart_limit = self.config.restart_first
        since_restart = 0
        max_learnts = max(len(self.clauses) / defaults.LEARNT_FACTOR, 1000.0)
        steps = 0
        while True:
            steps += 1
            if steps % _BUDGET_INTERVAL == 0:
                overflow = self._over_budget(started)
                if overflow:
                    return self._verdict(UNKNOWN, started, overflow)

            conflict = self._propagate()
            if conflict is not None:
                self.stats['conflicts'] += 1
                since_restart += 1
                if not self.trail_lim:
                    return self._verdict(UNSAT, started)
                learnt, target = self._analyze(conflict)
                lbd = len({self.level[code >> 1] for code in learnt})
                self._backtrack(target)
                self._log_proof(learnt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    index = self._attach(learnt, True, lbd)
                    self._enqueue(learnt[0], index)
                self.var_inc /= self.config.var_decay
                self.cla_inc /= self.config.clause_decay
                continue

            if since_restart >= restart_limit:
                self.stats['restarts'] += 1
                self._backtrack(0)
                since_restart = 0
                restart_limit *= self.config.restart_factor
                max_learnts *= 1.1
            if len(self.learnts) - len(self.trail) >= max_learnts:
                self._reduce()
                max_learnts = max(max_learnts, len(self.learnts) * 1.1)

            var = self._pick()
            if var is None:
                return self._verdict(SAT, started)
            self.stats['decisions'] += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(2 * var + (not self.polarity[var]), None)


def verify_model(cnf, model):
    """Check a model against every clause.

    Raises:
        :obj:`SolverError`: If the model is too short or falsifies a clause.

    """
    if model is None or len(model) < cnf.num_vars:
        raise SolverError('model does not cover all {} variables'
                          .format(cnf.num_vars))
    for clause in cnf.clauses:
        if not any(model[abs(lit) - 1] == (lit > 0) for lit in clause):
            raise SolverError('model falsifies clause {}'.format(list(clause)))


class ExternalSolver(object):
    """Run a DIMACS solver binary on a temporary file.

    The binary receives the file path as its only argument and must print
    ``s SATISFIABLE`` or ``s UNSATISFIABLE`` (the ``s`` prefix is optional)
    and, when satisfiable, the model on ``v`` lines.

    Args:
        path (:obj:`str`, optional): The binary. Defaults to the environment
            variable named by :obj:`defaults.SOLVER_ENV`.

    Raises:
        :obj:`SolverError`: If no binary is configured.

    """

    def __init__(self, path=None):
        self.path = path or os.environ.get(defaults.SOLVER_ENV)
        if not self.path:
            raise SolverError('no external solver configured; pass a path '
                              'or set {}'.format(defaults.SOLVER_ENV))

    def solve(self, cnf, config=None):
        """Decide ``cnf`` with the external binary.

        Returns:
            :obj:`Verdict`: UNKNOWN with reason ``'timeout'`` when the time
            budget of ``config`` runs out.

        Raises:
            :obj:`SolverError`: If the binary cannot be run or its output
                cannot be read.

        """
        config = config or SolverConfig()
        started = time.monotonic()
        handle = tempfile.NamedTemporaryFile('w', suffix='.cnf', delete=False)
        try:
            with handle:
                handle.write(export_dimacs(cnf))
            try:
                result = subprocess.run([self.path, handle.name],
                                        stdout=subprocess.PIPE,
                                        stderr=subprocess.PIPE,
                                        universal_newlines=True,
                                        timeout=config.time_budget)
            except subprocess.TimeoutExpired:
                return Verdict(UNKNOWN, reason='timeout')
            except OSError as _e:
                raise SolverError('cannot run {}: {}'.format(self.path, _e))
        finally:
            os.unlink(handle.name)
        verdict = parse_solver_output(result.stdout, cnf.num_vars)
        verdict.stats['seconds'] = round(time.monotonic() - started, 3)
        return verdict


def parse_solver_output(text, num_vars):
    """Read the verdict printed by a DIMACS solver.

    Raises:
        :obj:`SolverError`: If no status line is found.

    """
    status = None
    values = {}
    for line in text.splitlines():
        fields = line.split()
        if not fields:
            continue
        if fields[0] == 's':
            fields = fields[1:]
        if fields and fields[0] in ('SATISFIABLE', 'UNSATISFIABLE'):
            status = SAT if fields[0] == 'SATISFIABLE' else UNSAT
        elif fields and fields[0] == 'v':
            for token in fields[1:]:
                lit = int(token)
                if lit:
                    values[abs(lit)] = lit > 0
    if status is None:
        raise SolverError('solver output has no status line')
    if status == UNSAT:
        return Verdict(UNSAT)
    return Verdict(SAT, model=[values.get(var, False)
                               for var in range(1, num_vars + 1)])


def solve(cnf, config=None):
    """Decide a formula.

    Args:
        cnf (:obj:`Cnf`): The formula.
        config (:obj:`SolverConfig`, optional): Settings; ``solver`` picks
            the built-in or an external solver.

    Returns:
        :obj:`Verdict`: Models of SAT verdicts have been verified.

    Raises:
        :obj:`SolverError`: On malformed input, or a model that fails
            verification.

    """
    config = config or SolverConfig()
    if config.solver == 'external':
        verdict = ExternalSolver(config.solver_path).solve(cnf, config)
    else:
        verdict = Solver(cnf, config).solve()
    if verdict.is_sat:
        verify_model(cnf, verdict.model)
    return verdict


def export_dimacs(cnf):
    """:obj:`str`: The formula in DIMACS CNF, one clause per line."""
    lines = ['p cnf {} {}'.format(cnf.num_vars, len(cnf.clauses))]
    for clause in cnf.clauses:
        lines.append(' '.join([str(lit) for lit in clause] + ['0']))
    return '\n'.join(lines) + '\n'


_HEADER = re.compile(r'^p\s+cnf\s+(\d+)\s+(\d+)\s*$')


def import_dimacs(text):
    """Parse DIMACS CNF text.

    Comment lines starting with ``c`` are skipped and clauses may span
    lines.

    Returns:
        :obj:`Cnf`: The formula; its variable count comes from the header.

    Raises:
        :obj:`DimacsError`: On a missing or malformed header, a non-integer
            or out-of-range literal, an unterminated clause or a clause count
            that disagrees with the header. The error carries the line.

    """
    header = None
    clauses, current = [], []
    line_number = 0
    for line_number, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith('c'):
            continue
        if stripped == '%':
            break
        if header is None:
            match = _HEADER.match(stripped)
            if match is None:
                raise DimacsError('expected "p cnf <vars> <clauses>", got {!r}'
                                  .format(stripped), line_number)
            header = (int(match.group(1)), int(match.group(2)))
            continue
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError('not an integer: {!r}'.format(token),
                                  line_number)
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError('literal {} beyond {} declared variables'
                                  .format(lit, header[0]), line_number)
            else:
                current.append(lit)
    if header is None:
        raise DimacsError('missing header', line_number or None)
    if current:
        raise DimacsError('last clause is not terminated by 0', line_number)
    if len(clauses) != header[1]:
        raise DimacsError('header declares {} clauses, found {}'
                          .format(header[1], len(clauses)), line_number)
    return Cnf(header[0], clauses)


def emit_proof(cnf, config=None):
    """Solve with the built-in solver and return its DRAT trace.

    Returns:
        :obj:`str`: One lemma or deletion per line, ending with ``0``.

    Raises:
        :obj:`ProofError`: If the formula is not found unsatisfiable.

    """
    config = (config or SolverConfig()).replace(proof=True, solver='builtin')
    verdict = Solver(cnf, config).solve()
    if not verdict.is_unsat:
        raise ProofError('no refutation: solver returned {}'
                         .format(verdict.status))
    return '\n'.join(verdict.proof) + '\n'


class _RupChecker(object):
    """A clause database that answers reverse-unit-propagation queries."""

    def __init__(self, clauses):
        self.clauses = {}
        self.occurs = collections.defaultdict(set)
        self.by_key = collections.defaultdict(list)
        self.units = set()
        self.empty = 0
        self.next_id = 0
        for clause in clauses:
            self.add(clause)

    def add(self, clause):
        clause = tuple(dict.fromkeys(clause))
        ident = self.next_id
        self.next_id += 1
        self.clauses[ident] = clause
        self.by_key[frozenset(clause)].append(ident)
        for lit in clause:
            self.occurs[lit].add(ident)
        if len(clause) == 1:
            self.units.add(ident)
        if not clause:
            self.empty += 1

    def delete(self, clause):
        idents = self.by_key.get(frozenset(clause))
        if not idents:
            log.debug('proof deletes unknown clause %s', list(clause))
            return
        ident = idents.pop()
        for lit in self.clauses[ident]:
            self.occurs[lit].discard(ident)
        self.units.discard(ident)
        if not self.clauses.pop(ident):
            self.empty -= 1

    def implied(self, lemma):
        """:obj:`bool`: Unit propagation on the negated lemma conflicts."""
        if self.empty:
            return True
        assigned = {}
        queue = []

        def assign(lit):
            if assigned.get(abs(lit)) == (lit < 0):
                return False
            if abs(lit) not in assigned:
                assigned[abs(lit)] = lit > 0
                queue.append(lit)
            return True

        for lit in lemma:
            if not assign(-lit):
                return True
        for ident in self.units:
            if not assign(self.clauses[ident][0]):
                return True
        while queue:
            lit = queue.pop()
            for ident in self.occurs[-lit]:
                free = None
                count = 0
                satisfied = False
                for other in self.clauses[ident]:
                    value = assigned.get(abs(other))
                    if value is None:
                        free = other
                        count += 1
                    elif value == (other > 0):
                        satisfied = True
                        break
                if satisfied or count > 1:
                    continue
                if count == 0:
                    return True
                assign(free)
        return False


def check_proof(cnf, proof):
    """Check a clausal proof in which every lemma is a RUP inference.

    Args:
        cnf (:obj:`Cnf`): The refuted formula.
        proof (:obj:`str`): DRAT text as written by :obj:`emit_proof`.

    Returns:
        :obj:`bool`: True once the empty clause has been derived.

    Raises:
        :obj:`ProofError`: If a lemma is not implied by unit propagation,
            a line cannot be read, or the empty clause is never derived.

    """
    checker = _RupChecker(cnf.clauses)
    for line_number, line in enumerate(proof.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0] == 'c':
            continue
        delete = fields[0] == 'd'
        try:
            lits = [int(token) for token in fields[delete:]]
        except ValueError:
            raise ProofError('line {}: not a clause: {!r}'
                             .format(line_number, line))
        if not lits or lits[-1] != 0:
            raise ProofError('line {}: clause is not terminated by 0'
                             .format(line_number))
        lemma = lits[:-1]
        if delete:
            checker.delete(lemma)
            continue
        if not checker.implied(lemma):
            raise ProofError('line {}: lemma {} is not implied by unit '
                             'propagation'.format(line_number, lemma))
        if not lemma:
            return True
        checker.add(lemma)
    raise ProofError('proof never derives the empty clause')


def _require_plain(*formulas):
    for formula in formulas:
        if formula.num_vars != formula.base_vars:
            raise SolverError('entailment checks need formulas without '
                              'auxiliary variables')


def entails(premise, conclusion, config=None):
    """Decide whether every model of ``premise`` satisfies ``conclusion``.

    Clauses of the conclusion already present in the premise are skipped;
    every other clause is refuted by solving the premise together with its
    negation.

    Raises:
        :obj:`SolverError`: If either formula has auxiliary variables, or a
            check ends undecided.

    """
    _require_plain(premise, conclusion)
    known = {frozenset(clause) for clause in premise.simplified().clauses}
    num_vars = max(premise.num_vars, conclusion.num_vars)
    for clause in conclusion.simplified().clauses:
        if frozenset(clause) in known:
            continue
        test = premise.extended([[-lit] for lit in clause], num_vars)
        verdict = solve(test, config)
        if verdict.is_unknown:
            raise SolverError('entailment check undecided ({})'
                              .format(verdict.reason))
        if verdict.is_sat:
            return False
    return True


def equivalent(first, second, config=None):
    """:obj:`bool`: Both formulas have the same models."""
    return (entails(first, second, config)
            and entails(second, first, config))
