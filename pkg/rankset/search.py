"""Exhaustive search over axiom sets and domain sizes.

The lattice holds one status per (axiom subset of the universe, domain size)
cell. Sizes are processed in increasing order; within a size, cells are
solved in fixed-size batches taken alternately from the small and the large
end of the subset order, and every verdict is propagated with four monotone
rules:

1. impossible at size n, hence impossible at every larger size (ESG sets only)
2. impossible, hence every superset is impossible at the same size
3. possible at size n, hence possible at every smaller size (ESG sets only)
4. possible, hence every subset is possible at the same size

Subsets of the universe are stored as *local* masks (bit ``i`` stands for the
``i``-th member of the universe); checkpoints and results use *global* masks
over the whole catalog.

"""

import collections
import concurrent.futures
import contextlib
import csv
import io
import itertools
import json
import logging
import math
import os

import numpy as np

import rankset.defaults as defaults
import rankset.mslsp as mslsp
import rankset.sat as sat
from rankset.axioms import (AXIOMS, LABELS, AxiomSet, ProblemInstance,
                            holds_all, holds_mask)
from rankset.errors import (CheckpointError, DomainError,
                            IncompleteLatticeError, LatticeConflictError,
                            OracleError, ReportError)
from rankset.models import ElementOrder, EqualityMixin, SetRelation

log = logging.getLogger(__name__)

UNKNOWN, POSSIBLE, IMPOSSIBLE, TIMEOUT = 0, 1, 2, 3
STATUS_NAMES = ('Unknown', 'Possible', 'Impossible', 'Timeout')

SOLVED = 0
RULES = ('solved', 'larger size', 'superset', 'smaller size', 'subset')

_FROM_VERDICT = {sat.SAT: POSSIBLE, sat.UNSAT: IMPOSSIBLE,
                 sat.UNKNOWN: TIMEOUT}
_TO_VERDICT = {status: verdict for verdict, status in _FROM_VERDICT.items()}

CAVEAT = ('Results are exhaustive only up to domain size {}: there could '
          'theoretically be more impossibilities hidden that only occur from '
          'larger domain sizes onwards.')

NamedTheorem = collections.namedtuple('NamedTheorem', 'number size axioms')

NAMED_THEOREMS = (
    NamedTheorem(2, 3, ('LIN_E', 'SUA_V', 'SUA_P')),
    NamedTheorem(9, 4, ('LIN_E', 'TRANS_S', 'GF1', 'GF2', 'IND', 'SUA_V')),
    NamedTheorem(12, 4, ('LIN_E', 'TRANS_S', 'GF1', 'GF2', 'IND', 'SUA_P')),
    NamedTheorem(16, 4, ('LIN_E', 'TRANS_S', 'SDOM', 'IND', 'SUA_V',
                         'S_TOP_MON')),
    NamedTheorem(19, 4, ('LIN_E', 'TRANS_S', 'SDOM', 'IND', 'SUA_P',
                         'S_BOT_MON')),
    NamedTheorem(26, 4, ('LIN_E', 'TRANS_S', 'SUA_V', 'S_TOP_MON', 'BOT_IND',
                         'MC')),
    NamedTheorem(28, 4, ('LIN_E', 'TRANS_S', 'GF1', 'GF2', 'SUA_V', 'TOP_IND',
                         'BOT_IND')),
    NamedTheorem(48, 5, ('LIN_E', 'TRANS_S', 'GF1', 'SUA_V', 'TOP_IND',
                         'BOT_IND')),
    NamedTheorem(52, 5, ('LIN_E', 'REFL_S', 'COMPL_S', 'TRANS_S',
                         'STRICT_IND', 'SUA_V', 'MC')),
    NamedTheorem(57, 6, ('LIN_E', 'COMPL_S', 'TRANS_S', 'GF1', 'GF2', 'IND')),
)


def named_theorem(axioms, size):
    """:obj:`NamedTheorem`: The table entry for an impossibility, or None."""
    for theorem in NAMED_THEOREMS:
        if theorem.size == size and \
                AxiomSet.from_names(theorem.axioms) == axioms:
            return theorem
    return None


class MinimalImpossibility(EqualityMixin):
    """An axiom set that is impossible at ``size`` while every proper subset
    is possible at ``size`` and the set itself is possible at ``size - 1``.

    Args:
        axioms (:obj:`AxiomSet`): The axioms.
        size (:obj:`int`): The smallest impossible domain size.
        provenance (:obj:`tuple`, optional): ``(rule, AxiomSet, size)`` of
            the cell that decided it. Not compared.

    """

    equality_ignore = ['provenance']

    def __init__(self, axioms, size, provenance=None):
        self.axioms = axioms
        self.size = size
        self.provenance = provenance

    def __repr__(self):
        return 'MinimalImpossibility({}, size={})'.format(
            ', '.join(self.axioms.names()), self.size)

    @property
    def sort_key(self):
        """:obj:`tuple`: Size, then number of axioms, then catalog mask."""
        return (self.size, len(self.axioms), self.axioms.mask)


class SearchLattice(object):
    """Cell statuses for every subset of ``universe`` at every size from
    ``min_n`` to ``max_n``.

    Args:
        universe (:obj:`AxiomSet`): The axioms under study; nonempty.
        max_n (:obj:`int`): Largest domain size.
        min_n (:obj:`int`, optional): Smallest domain size.
        settings (:obj:`dict`, optional): Echo of the run configuration
            (seed, budgets) written to results.
        certified (:obj:`frozenset`, optional): Axioms known to be ESG.
            Defaults to :obj:`mslsp.certified_axioms`.

    Attributes:
        status (:obj:`dict`): Size to :obj:`numpy.ndarray` of statuses,
            indexed by local mask.
        rule (:obj:`dict`): Size to provenance rule per cell; -1 while
            unknown.
        source (:obj:`dict`): Size to the local mask of the deciding cell.
        source_size (:obj:`dict`): Size to the size of the deciding cell.
        solved (:obj:`list`): ``(size, local mask, status)`` for every solved
            cell, in the order verdicts were applied.

    Raises:
        :obj:`DomainError`: For an empty universe or sizes out of bounds.

    """

    def __init__(self, universe, max_n, min_n=defaults.MIN_SIZE,
                 settings=None, certified=None):
        if not len(universe):
            raise DomainError('axiom universe is empty')
        if not defaults.MIN_SIZE <= min_n <= max_n <= defaults.MAX_SIZE:
            raise DomainError('sizes {}..{} outside {}..{}'.format(
                min_n, max_n, defaults.MIN_SIZE, defaults.MAX_SIZE))
        self.universe = universe
        self.min_n = min_n
        self.max_n = max_n
        self.settings = dict(settings or {})
        self.positions = [AXIOMS.index(name) for name in universe]
        self.width = len(self.positions)
        self.masks = np.arange(2 ** self.width, dtype=np.int64)
        self.global_masks = np.zeros_like(self.masks)
        for bit, position in enumerate(self.positions):
            self.global_masks |= ((self.masks >> bit) & 1) << position
        if certified is None:
            certified = mslsp.certified_axioms()
        self.certified = sum(1 << bit
                             for bit, position in enumerate(self.positions)
                             if AXIOMS[position] in certified)
        cells = len(self.masks)
        self.status, self.rule, self.source, self.source_size = {}, {}, {}, {}
        for n in self.sizes:
            self.status[n] = np.zeros(cells, dtype=np.int8)
            self.rule[n] = np.full(cells, -1, dtype=np.int8)
            self.source[n] = np.full(cells, -1, dtype=np.int64)
            self.source_size[n] = np.zeros(cells, dtype=np.int8)
        self.solved = []

    def __repr__(self):
        return 'SearchLattice({!r}, sizes {}..{})'.format(
            self.universe, self.min_n, self.max_n)

    @property
    def sizes(self):
        """:obj:`range`: The domain sizes covered."""
        return range(self.min_n, self.max_n + 1)

    def to_local(self, axioms):
        """Translate an :obj:`AxiomSet` into a local mask.

        Raises:
            :obj:`DomainError`: If ``axioms`` is not within the universe.

        """
        if not axioms <= self.universe:
            raise DomainError('{!r} is not within {!r}'.format(
                axioms, self.universe))
        return sum(1 << bit for bit, position in enumerate(self.positions)
                   if axioms.mask >> position & 1)

    def to_axioms(self, local):
        """:obj:`AxiomSet`: The axioms of a local mask."""
        return AxiomSet(int(self.global_masks[local]))

    def status_of(self, axioms, n):
        """:obj:`int`: The status of a cell."""
        return int(self.status[n][self.to_local(axioms)])

    def provenance(self, axioms, n):
        """Describe how a cell was decided.

        Returns:
            :obj:`tuple`: ``(rule name, AxiomSet, size)`` of the solved cell
            the status derives from, or None while the cell is unknown.

        """
        local = self.to_local(axioms)
        return self._provenance(n, local)

    def _provenance(self, n, local):
        rule = int(self.rule[n][local])
        if rule < 0:
            return None
        return (RULES[rule], self.to_axioms(int(self.source[n][local])),
                int(self.source_size[n][local]))

    def count(self, status, n=None):
        """:obj:`int`: Number of cells with ``status``, at one or all
        sizes."""
        sizes = self.sizes if n is None else [n]
        return sum(int(np.count_nonzero(self.status[m] == status))
                   for m in sizes)

    @property
    def is_complete(self):
        """:obj:`bool`: No cell is unknown or timed out."""
        return self.count(UNKNOWN) == 0 and self.count(TIMEOUT) == 0

    def settle(self, n, cells, status, rule, source_n, source):
        """Move cells to ``status`` and record where the status came from.

        Cells already holding ``status`` keep their provenance; unknown and
        timed-out cells are overwritten.

        Returns:
            :obj:`numpy.ndarray`: The local masks that changed.

        Raises:
            :obj:`LatticeConflictError`: If a cell holds the opposite status.

        """
        current = self.status[n][cells]
        if status == TIMEOUT:
            fresh = cells[current == UNKNOWN]
        else:
            opposite = IMPOSSIBLE if status == POSSIBLE else POSSIBLE
            clash = cells[current == opposite]
            if clash.size:
                raise LatticeConflictError(
                    '{} at size {} ({}) contradicts {} at size {}'.format(
                        self.to_axioms(source), source_n,
                        STATUS_NAMES[status], self.to_axioms(int(clash[0])),
                        n))
            fresh = cells[(current == UNKNOWN) | (current == TIMEOUT)]
        self.status[n][fresh] = status
        self.rule[n][fresh] = rule
        self.source[n][fresh] = source
        self.source_size[n][fresh] = source_n
        return fresh


def apply_pruning(lattice, n, local, status, prune=True):
    """Record a solved cell and propagate its status.

    Args:
        lattice (:obj:`SearchLattice`): The lattice to update.
        n (:obj:`int`): Size of the solved cell.
        local (:obj:`int`): Local mask of the solved cell.
        status (:obj:`int`): :obj:`POSSIBLE`, :obj:`IMPOSSIBLE` or
            :obj:`TIMEOUT`.
        prune (:obj:`bool`, optional): Propagate at all.

    Returns:
        :obj:`dict`: Size to :obj:`numpy.ndarray` of newly pruned local
        masks.

    Raises:
        :obj:`LatticeConflictError`: If the verdict contradicts a resolved
            cell.

    """
    lattice.settle(n, np.array([local], dtype=np.int64), status, SOLVED, n,
                   local)
    lattice.solved.append((n, local, status))
    pruned = {}
    if status == TIMEOUT or not prune:
        return pruned
    masks = lattice.masks
    preserved = (local & ~lattice.certified) == 0
    if status == IMPOSSIBLE:
        cells = masks[(masks & local) == local]
        targets = [(n, 2)]
        if preserved:
            targets += [(m, 1) for m in lattice.sizes if m > n]
    else:
        cells = masks[(masks | local) == local]
        targets = [(n, 4)]
        if preserved:
            targets += [(m, 3) for m in lattice.sizes if m < n]
    for m, rule in targets:
        fresh = lattice.settle(m, cells, status, rule, n, local)
        if fresh.size:
            pruned[m] = fresh
    return pruned


def _solve_cell(task):
    mask, n, config = task
    verdict = sat.solve(ProblemInstance(AxiomSet(mask), n).cnf(), config)
    if verdict.is_unknown:
        log.warning('%r at size %d undecided (%s)', AxiomSet(mask), n,
                    verdict.reason)
    return verdict.status


def _next_batch(status, low, high, descending, size):
    window = np.flatnonzero(status[low:high + 1] == UNKNOWN) + low
    if not window.size:
        return [], low, high
    low, high = int(window[0]), int(window[-1])
    picked = window[::-1][:size] if descending else window[:size]
    return [int(cell) for cell in picked], low, high


class Scheduler(object):
    """Drive a search over every cell of a lattice.

    Args:
        universe (:obj:`AxiomSet`): Axioms under study.
        max_n (:obj:`int`): Largest domain size.
        config (:obj:`sat.SolverConfig`, optional): Solver settings.
        workers (:obj:`int`, optional): Parallel solver processes.
        batch_size (:obj:`int`, optional): Cells dispatched together.
        switch_every (:obj:`int`, optional): Solved cells between direction
            switches within a size.
        prune (:obj:`bool`, optional): Apply the pruning rules.
        checkpoint (:obj:`str`, optional): Append-only record of solved
            cells; replayed first when it exists.
        progress (callable, optional): Called as ``progress(n, resolved,
            total)`` after every batch.
        min_n (:obj:`int`, optional): Smallest domain size.

    """

    def __init__(self, universe, max_n, config=None,
                 workers=defaults.WORKERS, batch_size=defaults.BATCH_SIZE,
                 switch_every=defaults.SWITCH_EVERY, prune=True,
                 checkpoint=None, progress=None, min_n=defaults.MIN_SIZE):
        self.universe = universe
        self.max_n = max_n
        self.min_n = min_n
        self.config = config or sat.SolverConfig()
        self.workers = workers
        self.batch_size = batch_size
        self.switch_every = switch_every
        self.prune = prune
        self.checkpoint = checkpoint
        self.progress = progress

    def lattice(self):
        """:obj:`SearchLattice`: A fresh lattice, with the checkpoint
        replayed when there is one."""
        settings = {'seed': self.config.seed,
                    'time_budget': self.config.time_budget,
                    'batch_size': self.batch_size,
                    'switch_every': self.switch_every,
                    'prune': self.prune}
        lattice = SearchLattice(self.universe, self.max_n, self.min_n,
                                settings)
        if self.checkpoint and os.path.exists(self.checkpoint):
            checkpoint_load(self.checkpoint, lattice, self.prune)
        return lattice

    def run(self):
        """Search every size in turn.

        Returns:
            :obj:`SearchLattice`: The finished lattice.

        """
        lattice = self.lattice()
        pool = (concurrent.futures.ProcessPoolExecutor(self.workers)
                if self.workers > 1 else contextlib.nullcontext())
        with pool as executor:
            mapper = executor.map if executor else map
            for n in lattice.sizes:
                self._level(lattice, n, mapper)
        return lattice

    def _level(self, lattice, n, mapper):
        status = lattice.status[n]
        total = len(status)
        solved = sum(1 for size, _, _ in lattice.solved if size == n)
        log.info('size %d: %d of %d cells open', n,
                 int(np.count_nonzero(status == UNKNOWN)), total)
        low, high = 0, total - 1
        pruned = 0
        while True:
            descending = solved // self.switch_every % 2 == 0
            batch, low, high = _next_batch(status, low, high, descending,
                                           self.batch_size)
            if not batch:
                break
            tasks = [(int(lattice.global_masks[cell]), n, self.config)
                     for cell in batch]
            records = []
            for cell, verdict in zip(batch, mapper(_solve_cell, tasks)):
                fresh = apply_pruning(lattice, n, cell, _FROM_VERDICT[verdict],
                                      self.prune)
                pruned += sum(len(cells) for cells in fresh.values())
                records.append((int(lattice.global_masks[cell]), n, verdict))
            solved += len(batch)
            if self.checkpoint:
                _append_records(self.checkpoint, records, self.config.seed)
            if self.progress:
                self.progress(n, total - int(np.count_nonzero(
                    status == UNKNOWN)), total)
        log.info('size %d: %d solved, %d pruned, %d impossible, %d timed out',
                 n, solved, pruned, lattice.count(IMPOSSIBLE, n),
                 lattice.count(TIMEOUT, n))


def search(universe, max_n, config=None, **options):
    """Run a full search.

    Args:
        universe (:obj:`AxiomSet`): Axioms under study.
        max_n (:obj:`int`): Largest domain size.
        config (:obj:`sat.SolverConfig`, optional): Solver settings.
        **options: Passed on to :obj:`Scheduler`.

    Returns:
        :obj:`SearchLattice`: The finished lattice.

    """
    return Scheduler(universe, max_n, config, **options).run()


# -- reading results off a lattice -------------------------------------------


def _candidates(lattice, n):
    status = lattice.status[n]
    masks = lattice.masks
    cells = len(masks)
    below = lattice.status.get(n - 1)
    if below is None:
        below_ok = np.ones(cells, dtype=bool)
        below_open = np.zeros(cells, dtype=bool)
    else:
        below_ok = below == POSSIBLE
        below_open = below == TIMEOUT
    subsets_ok = np.ones(cells, dtype=bool)
    subsets_open = np.ones(cells, dtype=bool)
    for bit in range(lattice.width):
        outside = ((masks >> bit) & 1) == 0
        child = status[masks ^ (1 << bit)]
        subsets_ok &= outside | (child == POSSIBLE)
        subsets_open &= outside | (child == POSSIBLE) | (child == TIMEOUT)
    impossible = status == IMPOSSIBLE
    confirmed = impossible & below_ok & subsets_ok
    unconfirmed = (impossible & (below_ok | below_open) & subsets_open
                   & ~confirmed)
    return confirmed, unconfirmed


def _entries(lattice, n, selected):
    return [MinimalImpossibility(lattice.to_axioms(int(local)), n,
                                 lattice._provenance(n, int(local)))
            for local in np.flatnonzero(selected)]


def minimal_impossibilities(lattice):
    """List the doubly minimal impossibilities of a lattice.

    Returns:
        :obj:`list` of :obj:`MinimalImpossibility`: Sorted by size, then by
        number of axioms, then by catalog mask. Candidates whose minimality
        depends on a timed-out cell are left out (see
        :obj:`unconfirmed_impossibilities`).

    """
    found = []
    for n in lattice.sizes:
        confirmed, _ = _candidates(lattice, n)
        found.extend(_entries(lattice, n, confirmed))
    unconfirmed = unconfirmed_impossibilities(lattice)
    if unconfirmed:
        log.warning('%d candidate impossibilities unconfirmed because of '
                    'timeouts', len(unconfirmed))
    return sorted(found, key=lambda entry: entry.sort_key)


def unconfirmed_impossibilities(lattice):
    """:obj:`list` of :obj:`MinimalImpossibility`: Impossible cells that
    would be minimal if their timed-out neighbours turned out possible."""
    found = []
    for n in lattice.sizes:
        _, weak = _candidates(lattice, n)
        found.extend(_entries(lattice, n, weak))
    return sorted(found, key=lambda entry: entry.sort_key)


def count_inconsistent(lattice):
    """Count axiom sets impossible at some size of the lattice.

    Raises:
        :obj:`IncompleteLatticeError`: If any cell is unknown or timed out.

    """
    if not lattice.is_complete:
        raise IncompleteLatticeError(
            '{} unknown and {} timed-out cells'.format(
                lattice.count(UNKNOWN), lattice.count(TIMEOUT)))
    impossible = np.zeros(len(lattice.masks), dtype=bool)
    for n in lattice.sizes:
        impossible |= lattice.status[n] == IMPOSSIBLE
    return int(np.count_nonzero(impossible))


# -- brute-force oracle ------------------------------------------------------


def fubini(k):
    """:obj:`int`: Number of weak orders on ``k`` items."""
    counts = [1]
    for size in range(1, k + 1):
        counts.append(sum(math.comb(size, first) * counts[size - first]
                          for first in range(1, size + 1)))
    return counts[k]


def weak_orders(items):
    """Yield every weak order on ``items`` as a list of tiers, best first."""
    items = list(items)
    if not items:
        yield []
        return
    for size in range(1, len(items) + 1):
        for first in itertools.combinations(items, size):
            rest = [item for item in items if item not in first]
            for tail in weak_orders(rest):
                yield [list(first)] + tail


_ORACLE_BASE = ('REFL_S', 'COMPL_S', 'TRANS_S')


def brute_force_oracle(axioms, n=3):
    """Decide an axiom set at size 3 by enumerating weak orders.

    The element order is fixed to the canonical linear order, which loses
    nothing because every catalog axiom is invariant under relabelling the
    elements. Without ``LIN_E`` the set is possible outright: the all-true
    element relation with the all-indifferent set relation satisfies every
    other axiom.

    Args:
        axioms (:obj:`AxiomSet`): Must contain ``REFL_S``, ``COMPL_S`` and
            ``TRANS_S``.
        n (:obj:`int`, optional): Must be 3.

    Returns:
        :obj:`int`: :obj:`POSSIBLE` or :obj:`IMPOSSIBLE`.

    Raises:
        :obj:`OracleError`: Outside those preconditions.

    """
    if n != 3:
        raise OracleError('the oracle only enumerates size 3')
    missing = [name for name in _ORACLE_BASE if name not in axioms]
    if missing:
        raise OracleError('weak-order enumeration needs {}'.format(
            ', '.join(missing)))
    if 'LIN_E' not in axioms:
        return POSSIBLE
    order = ElementOrder.canonical(n)
    for tiers in weak_orders(range(1, 2 ** n)):
        if holds_all(axioms, order, SetRelation.from_tiers(n, tiers)):
            return POSSIBLE
    return IMPOSSIBLE


def oracle_table():
    """Possibility of every catalog subset at size 3 among weak orders.

    Every weak order on the seven sets is evaluated once under the canonical
    element order; a set is possible iff one of the weak orders satisfies a
    superset of it.

    Returns:
        :obj:`numpy.ndarray`: Booleans indexed by global mask. Entries are
        only meaningful for sets containing ``REFL_S``, ``COMPL_S`` and
        ``TRANS_S``.

    """
    order = ElementOrder.canonical(3)
    possible = np.zeros(2 ** len(AXIOMS), dtype=bool)
    for tiers in weak_orders(range(1, 8)):
        possible[holds_mask(order, SetRelation.from_tiers(3, tiers)).mask] = \
            True
    for bit in range(len(AXIOMS)):
        blocks = possible.reshape(-1, 2, 2 ** bit)
        blocks[:, 0, :] |= blocks[:, 1, :]
    return possible


# -- checkpoints -------------------------------------------------------------

_CHECKPOINT_HEADER = '# rankset-checkpoint'


def _append_records(path, records, seed):
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, 'a', encoding='utf-8') as handle:
        if fresh:
            handle.write('{} {}\n'.format(_CHECKPOINT_HEADER,
                                          defaults.CHECKPOINT_VERSION))
        for mask, n, verdict in records:
            handle.write('{:05x} {} {} {}\n'.format(mask, n, verdict, seed))


def checkpoint_save(lattice, path):
    """Write every solved cell of ``lattice`` to ``path``, replacing it."""
    if os.path.exists(path):
        os.remove(path)
    seed = lattice.settings.get('seed', defaults.SEED)
    _append_records(path, [(int(lattice.global_masks[local]), n,
                            _TO_VERDICT[status])
                           for n, local, status in lattice.solved], seed)


def checkpoint_load(path, lattice, prune=True):
    """Replay the solved cells recorded in ``path`` onto ``lattice``.

    Records are applied in file order through :obj:`apply_pruning`, so pruned
    cells are recomputed. Records outside the lattice's universe or sizes
    are skipped. An empty file leaves the lattice untouched.

    Returns:
        :obj:`SearchLattice`: ``lattice``.

    Raises:
        :obj:`CheckpointError`: On a version mismatch or a corrupt record.

    """
    with open(path, encoding='utf-8') as handle:
        lines = handle.read().splitlines()
    records = [(number, line.split()) for number, line
               in enumerate(lines, 1) if line.strip()]
    if not records:
        return lattice
    number, header = records[0]
    if ' '.join(header[:2]) != _CHECKPOINT_HEADER or len(header) != 3:
        raise CheckpointError(path, 'line {}: missing header'.format(number))
    if header[2] != str(defaults.CHECKPOINT_VERSION):
        raise CheckpointError(path, 'version {} is not {}'.format(
            header[2], defaults.CHECKPOINT_VERSION))
    universe = lattice.universe.mask
    replayed = 0
    for number, fields in records[1:]:
        try:
            mask, n, verdict, _ = fields
            mask, n = int(mask, 16), int(n)
            status = _FROM_VERDICT[verdict]
        except (ValueError, KeyError):
            raise CheckpointError(path, 'line {}: corrupt record {!r}'.format(
                number, ' '.join(fields)))
        if mask & ~universe or n not in lattice.sizes:
            log.debug('skipping checkpoint record on line %d', number)
            continue
        apply_pruning(lattice, n, lattice.to_local(AxiomSet(mask)), status,
                      prune)
        replayed += 1
    log.info('replayed %d solved cells from %s', replayed, path)
    return lattice


# -- results and reports -----------------------------------------------------


def _entry_to_dict(entry):
    record = {'size': entry.size, 'axioms': entry.axioms.names()}
    if entry.provenance:
        rule, source, size = entry.provenance
        record['provenance'] = {'rule': rule, 'axioms': source.names(),
                                'size': size}
    return record


def _entry_from_dict(record):
    provenance = record.get('provenance')
    if provenance:
        provenance = (provenance['rule'],
                      AxiomSet.from_names(provenance['axioms']),
                      provenance['size'])
    return MinimalImpossibility(AxiomSet.from_names(record['axioms']),
                                record['size'], provenance)


class SearchResults(EqualityMixin):
    """The outcome of a search, detached from the lattice arrays.

    Args:
        universe (:obj:`AxiomSet`): Axioms under study.
        min_n (:obj:`int`): Smallest size searched.
        max_n (:obj:`int`): Largest size searched.
        minimal (:obj:`list` of :obj:`MinimalImpossibility`): Sorted list.
        unconfirmed (:obj:`list` of :obj:`MinimalImpossibility`, optional):
            Candidates blocked by timeouts.
        inconsistent (:obj:`int`, optional): Impossible sets, None when the
            lattice is incomplete.
        unknown (:obj:`int`, optional): Cells never resolved.
        timeouts (:obj:`int`, optional): Cells that timed out.
        solved (:obj:`list`, optional): ``[hex mask, size, verdict]`` per
            solved cell, in application order.
        settings (:obj:`dict`, optional): Configuration echo.

    """

    def __init__(self, universe, min_n, max_n, minimal, unconfirmed=None,
                 inconsistent=None, unknown=0, timeouts=0, solved=None,
                 settings=None):
        self.universe = universe
        self.min_n = min_n
        self.max_n = max_n
        self.minimal = list(minimal)
        self.unconfirmed = list(unconfirmed or [])
        self.inconsistent = inconsistent
        self.unknown = unknown
        self.timeouts = timeouts
        self.solved = [list(record) for record in solved or []]
        self.settings = dict(settings or {})

    @classmethod
    def from_lattice(cls, lattice):
        """Summarize a lattice."""
        inconsistent = (count_inconsistent(lattice) if lattice.is_complete
                        else None)
        solved = [['{:05x}'.format(int(lattice.global_masks[local])), n,
                   _TO_VERDICT[status]]
                  for n, local, status in lattice.solved]
        return cls(lattice.universe, lattice.min_n, lattice.max_n,
                   minimal_impossibilities(lattice),
                   unconfirmed_impossibilities(lattice), inconsistent,
                   lattice.count(UNKNOWN), lattice.count(TIMEOUT), solved,
                   lattice.settings)

    @property
    def complete(self):
        """:obj:`bool`: Every cell was resolved."""
        return not self.unknown and not self.timeouts

    def to_dict(self):
        """:obj:`dict`: A JSON-ready representation."""
        return {
            'version': defaults.RESULTS_VERSION,
            'universe': self.universe.names(),
            'min_size': self.min_n,
            'max_size': self.max_n,
            'settings': self.settings,
            'minimal': [_entry_to_dict(entry) for entry in self.minimal],
            'unconfirmed': [_entry_to_dict(entry)
                            for entry in self.unconfirmed],
            'inconsistent': self.inconsistent,
            'unknown': self.unknown,
            'timeouts': self.timeouts,
            'solved': self.solved,
        }

    @classmethod
    def from_dict(cls, info):
        """Rebuild results from :obj:`to_dict` output.

        Raises:
            :obj:`ReportError`: On a version mismatch or missing field.

        """
        if info.get('version') != defaults.RESULTS_VERSION:
            raise ReportError('results version {!r} is not {}'.format(
                info.get('version'), defaults.RESULTS_VERSION))
        try:
            return cls(AxiomSet.from_names(info['universe']),
                       info['min_size'], info['max_size'],
                       [_entry_from_dict(r) for r in info['minimal']],
                       [_entry_from_dict(r) for r in info['unconfirmed']],
                       info['inconsistent'], info['unknown'],
                       info['timeouts'], info['solved'], info['settings'])
        except KeyError as _e:
            raise ReportError('results are missing {}'.format(_e))

    def dumps(self):
        """:obj:`str`: Deterministic JSON text."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n'

    @classmethod
    def loads(cls, text):
        """Parse :obj:`dumps` output."""
        try:
            info = json.loads(text)
        except ValueError as _e:
            raise ReportError('results are not JSON: {}'.format(_e))
        return cls.from_dict(info)


def _text_report(results):
    head = ['No.', 'Size'] + [LABELS[axiom] for axiom in AXIOMS] + ['Named']
    rows = []
    for index, entry in enumerate(results.minimal, 1):
        theorem = named_theorem(entry.axioms, entry.size)
        rows.append([str(index), str(entry.size)]
                    + ['x' if axiom in entry.axioms else '.'
                       for axiom in AXIOMS]
                    + ['No. {}'.format(theorem.number) if theorem else ''])
    widths = [max(len(row[column]) for row in [head] + rows)
              for column in range(len(head))]

    def render(cells):
        padded = [cell.rjust(width) for cell, width
                  in zip(cells[:-1], widths)]
        return '  '.join(padded + [cells[-1]]).rstrip()

    text = [render(head)] + [render(row) for row in rows]
    text.append('')
    text.append('{} minimal impossibilities up to size {}'.format(
        len(results.minimal), results.max_n))
    if results.inconsistent is not None:
        text.append('{} inconsistent axiom sets'.format(results.inconsistent))
    if not results.complete:
        text.append('partial lattice: {} cells unknown, {} timed out, {} '
                    'candidates unconfirmed'.format(
                        results.unknown, results.timeouts,
                        len(results.unconfirmed)))
    text.append(CAVEAT.format(results.max_n))
    return '\n'.join(text) + '\n'


def _csv_report(results):
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow(['Size'] + list(AXIOMS))
    for entry in results.minimal:
        writer.writerow([entry.size] + [int(axiom in entry.axioms)
                                        for axiom in AXIOMS])
    return output.getvalue()


def report(source, fmt='text'):
    """Render search results.

    Args:
        source (:obj:`SearchLattice` or :obj:`SearchResults`): What to render.
        fmt (:obj:`str`, optional): ``'text'`` for an aligned table, ``'csv'``
            or ``'json'``.

    Returns:
        :obj:`str`: The rendered report.

    """
    results = (SearchResults.from_lattice(source)
               if isinstance(source, SearchLattice) else source)
    if fmt == 'json':
        return results.dumps()
    if fmt == 'csv':
        return _csv_report(results)
    if fmt == 'text':
        return _text_report(results)
    raise ValueError('unknown report format: {}'.format(fmt))


def parse_csv(text):
    """Read a CSV report back into its minimal impossibilities.

    Raises:
        :obj:`ReportError`: If the header or a row is malformed.

    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ['Size'] + list(AXIOMS):
        raise ReportError('CSV header must be Size followed by the catalog')
    found = []
    for number, row in enumerate(rows[1:], 2):
        if not row:
            continue
        try:
            size = int(row[0])
            marks = [int(cell) for cell in row[1:]]
        except ValueError:
            raise ReportError('row {} is not numeric'.format(number))
        if len(marks) != len(AXIOMS) or set(marks) - {0, 1}:
            raise ReportError('row {} needs one 0/1 per axiom'.format(number))
        mask = sum(1 << bit for bit, mark in enumerate(marks) if mark)
        found.append(MinimalImpossibility(AxiomSet(mask), size))
    return found


def size_histogram(minimal):
    """:obj:`dict`: Size to number of minimal impossibilities."""
    return dict(sorted(collections.Counter(
        entry.size for entry in minimal).items()))
