"""Command-Line Interface for rankset.

This module contains the Click command definitions as well as helper
functions. Verdict commands exit with the SAT-solver convention: 0 for SAT,
20 for UNSAT and 30 when a budget ran out; bad options exit with 64.

"""

import functools
import logging
import os

import bitmath
import click

import rankset.defaults as defaults
import rankset.mslsp as mslsp
import rankset.sat as sat
from rankset.axioms import ProblemInstance, estimate_memory
from rankset.cli_models import (AxiomListType, ParameterError, SearchProgress,
                                SizeType, display_verdict, display_witness)
from rankset.errors import (CheckpointError, DimacsError, DomainError, Error,
                            MslspSyntaxError, NotClosedError, ReportError)
from rankset.models import decode_model
from rankset.search import Scheduler, SearchResults, report as render_report

log = logging.getLogger(__name__)

# Allow help to be called with '-h' as well as the default '--help'.
CONTEXT_SETTINGS = dict(help_option_names=['-h', '--help'])

EXIT_CODES = {sat.SAT: defaults.EXIT_SAT, sat.UNSAT: defaults.EXIT_UNSAT,
              sat.UNKNOWN: defaults.EXIT_UNKNOWN}

# Errors caused by what the user fed in rather than by rankset itself.
INPUT_ERRORS = (CheckpointError, DimacsError, DomainError, MslspSyntaxError,
                NotClosedError, ReportError)


class UsageError(click.UsageError):
    """A usage error reported with exit code 64."""

    exit_code = defaults.EXIT_USAGE


def handle_errors(command):
    """Echo rankset errors in red and exit instead of printing a traceback.

    Input errors exit with :obj:`defaults.EXIT_USAGE`, everything else with
    :obj:`defaults.EXIT_ERROR`.

    """

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except Error as _e:
            click.secho('Error: {}'.format(_e), fg='red', err=True)
            code = (defaults.EXIT_USAGE if isinstance(_e, INPUT_ERRORS)
                    else defaults.EXIT_ERROR)
            click.get_current_context().exit(code)

    return wrapper


_SOLVER_OPTIONS = [
    click.option('--solver', type=click.Choice(['builtin', 'external']),
                 default=defaults.SOLVER, show_default=True,
                 help='Decide instances in-process or with a DIMACS binary.'),
    click.option('--solver-path', envvar=defaults.SOLVER_ENV,
                 type=click.Path(dir_okay=False),
                 help='External solver binary (or ${}).'.format(
                     defaults.SOLVER_ENV)),
    click.option('--seed', type=int, default=defaults.SEED, show_default=True,
                 help='Solver random seed.'),
    click.option('-t', '--time-budget', '--budget', 'time_budget',
                 type=click.FloatRange(min=0), default=defaults.TIME_BUDGET,
                 help='Seconds per instance before giving up.'),
    click.option('--memory-cap', type=click.IntRange(min=1),
                 default=defaults.MEMORY_CAP_MIB, show_default=True,
                 help='MiB of clause storage per instance.'),
]


def solver_options(command):
    """Add the shared solver options to a command."""
    for option in reversed(_SOLVER_OPTIONS):
        command = option(command)
    return command


def solver_config(solver, solver_path, seed, time_budget, memory_cap,
                  proof=False):
    """Build a :obj:`sat.SolverConfig` from the shared options.

    Raises:
        :obj:`UsageError`: If an external solver is requested without a
            path.

    """
    if solver == 'external' and not solver_path:
        raise UsageError('--solver external needs --solver-path or ${}'
                         .format(defaults.SOLVER_ENV))
    return sat.SolverConfig(time_budget=time_budget, memory_cap=memory_cap,
                            seed=seed, proof=proof, solver=solver,
                            solver_path=solver_path)


def warn_memory(instance, config):
    """Warn when an instance's estimated footprint exceeds the cap."""
    estimate = estimate_memory(instance)
    log.info('%r needs about %s', instance, estimate)
    if estimate > bitmath.MiB(config.memory_cap):
        click.secho('Warning: {!r} needs about {}, above the {} cap'.format(
            instance, estimate, bitmath.MiB(config.memory_cap)),
            fg='yellow', err=True)


def read_formula(source, closed):
    """Parse a formula from a file, or from the catalog when no such file
    exists (``gf1.mslsp`` falls back to the shipped ``gf1`` source).

    Raises:
        :obj:`ParameterError`: If neither exists.

    """
    if os.path.isfile(source):
        with open(source, encoding='utf-8') as handle:
            text = handle.read()
    else:
        stem = os.path.splitext(os.path.basename(source))[0]
        try:
            text = mslsp.load_source(stem)
        except (KeyError, OSError):
            raise ParameterError('no such file or catalog entry: {}'
                                 .format(source))
    return mslsp.parse(text, closed=closed)


@click.group(context_settings=CONTEXT_SETTINGS)
@click.option('-v', '--verbose', count=True,
              help='Log progress (-v) or solver details (-vv).')
def cli(verbose):
    """Search for impossibility theorems about ranking sets of objects.

    Axiom lists are comma separated catalog names (table spellings such as
    SUAv work too) or the word all.

    """

    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')


@cli.command()
@click.option('-a', '--axioms', type=AxiomListType(), required=True,
              help='Axioms to satisfy together.')
@click.option('-n', '--size', type=SizeType(), required=True,
              help='Number of elements.')
@solver_options
@click.option('--proof', type=click.Path(dir_okay=False, writable=True),
              help='Write a DRAT trace here when the result is UNSAT.')
@click.pass_context
@handle_errors
def check(ctx, axioms, size, proof, **options):
    """Decide whether axioms can hold together at one size."""

    if proof and options['solver'] != 'builtin':
        raise UsageError('--proof needs the builtin solver')
    config = solver_config(proof=bool(proof), **options)
    instance = ProblemInstance(axioms, size)
    warn_memory(instance, config)
    cnf = instance.cnf()
    verdict = sat.solve(cnf, config)
    display_verdict(verdict, cnf)
    if proof:
        if verdict.is_unsat:
            with open(proof, 'w', encoding='utf-8') as handle:
                handle.write('\n'.join(verdict.proof) + '\n')
            log.info('wrote %d proof lines to %s', len(verdict.proof), proof)
        else:
            click.secho('No proof written: the result is {}'.format(
                verdict.status), fg='yellow', err=True)
    ctx.exit(EXIT_CODES[verdict.status])


@cli.command()
@click.option('-a', '--axioms', type=AxiomListType(), required=True,
              help='Axioms to satisfy together.')
@click.option('-n', '--size', type=SizeType(), required=True,
              help='Number of elements.')
@solver_options
@click.pass_context
@handle_errors
def witness(ctx, axioms, size, **options):
    """Print relations satisfying the axioms at one size."""

    config = solver_config(**options)
    instance = ProblemInstance(axioms, size)
    warn_memory(instance, config)
    verdict = sat.solve(instance.cnf(), config)
    if verdict.is_sat:
        order, relation = decode_model(verdict.model, instance.domain)
        display_witness(order, relation)
    elif verdict.is_unsat:
        click.secho('No witness: the axioms are jointly unsatisfiable at '
                    'size {}'.format(size), fg='red')
    else:
        click.secho('No witness: gave up ({})'.format(verdict.reason),
                    fg='yellow')
    ctx.exit(EXIT_CODES[verdict.status])


@cli.command('search')
@click.option('-a', '--axioms', type=AxiomListType(), default='all',
              show_default=True, help='Universe of axioms to search.')
@click.option('-n', '--max-size', type=SizeType(), required=True,
              help='Largest number of elements.')
@click.option('--min-size', type=SizeType(), default=defaults.MIN_SIZE,
              show_default=True, help='Smallest number of elements.')
@click.option('-o', '--out', type=click.Path(dir_okay=False, writable=True),
              help='Write structured results (JSON) here.')
@click.option('-r', '--report', 'report_path',
              type=click.Path(dir_okay=False, writable=True),
              help='Write the report here instead of printing it.')
@click.option('-f', '--format', 'fmt', default='text', show_default=True,
              type=click.Choice(['text', 'csv', 'json']),
              help='Report format.')
@click.option('-c', '--checkpoint', type=click.Path(dir_okay=False),
              help='Append solved cells here; resume from it when present.')
@click.option('-w', '--workers', type=click.IntRange(min=1),
              default=defaults.WORKERS, show_default=True,
              help='Parallel solver processes.')
@click.option('--batch-size', type=click.IntRange(min=1),
              default=defaults.BATCH_SIZE, show_default=True,
              help='Cells dispatched together.')
@click.option('--switch-every', type=click.IntRange(min=1),
              default=defaults.SWITCH_EVERY, show_default=True,
              help='Solved cells between direction switches.')
@click.option('--no-prune', is_flag=True,
              help='Solve every cell instead of propagating verdicts.')
@click.option('-q', '--quiet', is_flag=True, help='Hide progress bars.')
@solver_options
@click.pass_context
@handle_errors
def search_command(ctx, axioms, max_size, min_size, out, report_path, fmt,
                   checkpoint, workers, batch_size, switch_every, no_prune,
                   quiet, **options):
    """Find all minimal impossibilities up to a size."""

    if min_size > max_size:
        raise UsageError('--min-size exceeds --max-size')
    config = solver_config(**options)
    progress = None if quiet else SearchProgress()
    scheduler = Scheduler(axioms, max_size, config, workers=workers,
                          batch_size=batch_size, switch_every=switch_every,
                          prune=not no_prune, checkpoint=checkpoint,
                          progress=progress, min_n=min_size)
    lattice = scheduler.run()
    if progress:
        progress.finish()
    results = SearchResults.from_lattice(lattice)
    if out:
        with open(out, 'w', encoding='utf-8') as handle:
            handle.write(results.dumps())
        log.info('wrote results to %s', out)
    text = render_report(results, fmt)
    if report_path:
        with open(report_path, 'w', encoding='utf-8') as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)
    ctx.exit(defaults.EXIT_SAT if results.complete
             else defaults.EXIT_UNKNOWN)


@cli.command()
@click.option('-a', '--axioms', type=AxiomListType(), required=True,
              help='Axioms to encode.')
@click.option('-n', '--size', type=SizeType(), required=True,
              help='Number of elements.')
@click.option('-o', '--output', type=click.File('w', encoding='utf-8'),
              default='-', help='Destination (default: stdout).')
@handle_errors
def dimacs(axioms, size, output):
    """Write an instance as DIMACS CNF."""

    cnf = ProblemInstance(axioms, size).cnf()
    log.info('%d variables, %d clauses', cnf.num_vars, len(cnf))
    output.write(sat.export_dimacs(cnf))


@cli.command('esg-check')
@click.argument('source')
@click.pass_context
@handle_errors
def esg_check(ctx, source):
    """Classify an MSLSP formula as existentially set-guarded or not.

    SOURCE is a file or the name of a shipped source (gf1, pb, ...).
    Exits with 1 when the formula is not ESG.

    """

    verdict = mslsp.classify_esg(read_formula(source, closed=False))
    if verdict:
        click.secho('ESG', fg='green', bold=True)
        return
    click.echo(click.style('NotESG', fg='red', bold=True) + ': '
               + verdict.reason)
    ctx.exit(defaults.EXIT_ERROR)


@cli.command()
@click.argument('source')
@click.option('-n', '--size', type=SizeType(minimum=1), required=True,
              help='Number of elements.')
@click.option('-o', '--output', type=click.File('w', encoding='utf-8'),
              default='-', help='Destination (default: stdout).')
@click.option('--budget', type=click.IntRange(min=1),
              default=defaults.CLAUSE_BUDGET, show_default=True,
              help='Literals a conjunct may distribute into before it is '
                   'encoded with definitions.')
@handle_errors
def ground(source, size, output, budget):
    """Ground a closed MSLSP formula into DIMACS CNF.

    SOURCE is a file or the name of a shipped source.

    """

    cnf = mslsp.ground(read_formula(source, closed=True), size, budget)
    log.info('%d variables (%d auxiliary), %d clauses', cnf.num_vars,
             cnf.num_vars - cnf.base_vars, len(cnf))
    output.write(sat.export_dimacs(cnf))


@cli.command('report')
@click.argument('results', type=click.File('r', encoding='utf-8'))
@click.option('-f', '--format', 'fmt', default='text', show_default=True,
              type=click.Choice(['text', 'csv', 'json']),
              help='Report format.')
@handle_errors
def report_command(results, fmt):
    """Re-render a results file written by search --out."""

    click.echo(render_report(SearchResults.loads(results.read()), fmt),
               nl=False)


if __name__ == '__main__':
    cli()
