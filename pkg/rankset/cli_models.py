"""CLI classes for rankset.

This module contains click parameter types for axiom lists and domain sizes,
the progress display used by long searches and helpers that echo verdicts and
witnesses.

"""

import click
import progressbar

import rankset.defaults as defaults
from rankset.axioms import AxiomSet
from rankset.models import Domain


class ParameterError(click.BadParameter):
    """A bad option value, reported with the usage exit code."""

    exit_code = defaults.EXIT_USAGE


class AxiomListType(click.ParamType):
    """Custom Click parameter type for a comma separated list of axioms.

    Names are matched against the catalog identifiers and the table
    spellings, ignoring case, so ``SUAv`` and ``sua_v`` both name ``SUA_V``.
    The word ``all`` selects the whole catalog.

    """

    name = 'axioms'

    def convert(self, value, param, ctx):
        """Turn the option text into an :obj:`AxiomSet`."""

        if isinstance(value, AxiomSet):
            return value
        if value.strip().lower() == 'all':
            return AxiomSet.all()
        names = [name for name in value.split(',') if name.strip()]
        if not names:
            raise ParameterError('no axioms given', ctx=ctx, param=param)
        try:
            return AxiomSet.from_names(name.strip() for name in names)
        except KeyError as _e:
            raise ParameterError(_e.args[0], ctx=ctx, param=param)


class SizeType(click.ParamType):
    """Custom Click parameter type for a domain size within the supported
    bounds."""

    name = 'size'

    def __init__(self, minimum=defaults.MIN_SIZE, maximum=defaults.MAX_SIZE):
        self.minimum = minimum
        self.maximum = maximum

    def convert(self, value, param, ctx):
        """Check the size against the bounds."""

        try:
            size = int(value)
        except (TypeError, ValueError):
            raise ParameterError('{!r} is not a number'.format(value),
                                 ctx=ctx, param=param)
        if not self.minimum <= size <= self.maximum:
            raise ParameterError('size must be between {} and {}'.format(
                self.minimum, self.maximum), ctx=ctx, param=param)
        return size


class SearchProgress(object):
    """One progress bar per domain size, fed by the search scheduler.

    Instances are passed as the ``progress`` callback of
    :obj:`rankset.search.Scheduler`.

    """

    def __init__(self):
        self.size = None
        self.pr_bar = None

    def __call__(self, n, resolved, total):
        if n != self.size:
            self.finish()
            self.size = n
            widgets = ['size {}'.format(n), ' | ', progressbar.Percentage(),
                       ' ', progressbar.Bar(), ' ', progressbar.Timer(),
                       ' | ', progressbar.ETA()]
            self.pr_bar = progressbar.ProgressBar(max_value=total,
                                                  widgets=widgets)
        self.pr_bar.update(resolved)

    def finish(self):
        """Close the current bar, if any."""
        if self.pr_bar is not None:
            self.pr_bar.finish()
            self.pr_bar = None


_COLOURS = {'SAT': 'green', 'UNSAT': 'red', 'UNKNOWN': 'yellow'}


def display_verdict(verdict, cnf):
    """Echo a one-line verdict with the instance size and solve time."""

    status = verdict.status
    if verdict.is_unknown:
        status = '{} ({})'.format(status, verdict.reason)
    click.echo(click.style(status, fg=_COLOURS[verdict.status], bold=True)
               + '  variables={} clauses={} time={:.3f}s'.format(
                   cnf.num_vars, len(cnf), verdict.stats.get('seconds', 0.0)))


def _element(x):
    return 'x{}'.format(x + 1)


def _chain(tiers, render):
    return ' ≻ '.join(' ∼ '.join(render(item) for item in tier)
                      for tier in tiers)


def format_order(order):
    """Render an element relation: ``x1 ≻ x2 ≻ x3`` when linear, otherwise
    one line per related pair."""
    if order.is_linear:
        return [' ≻ '.join(_element(x) for x in order.ranking())]
    elements = range(order.n)
    return ['{} ⪰ {}'.format(_element(x), _element(y))
            for x in elements for y in elements if order.geq(x, y)]


def format_relation(relation):
    """Render a set relation: tiers separated by ``≻`` with tied sets joined
    by ``∼`` when it is a weak order, otherwise one line per related pair."""
    domain = Domain(relation.n)
    if relation.is_weak_order:
        return [_chain(relation.tiers(), domain.format_set)]
    return ['{} ⪰ {}'.format(domain.format_set(a), domain.format_set(b))
            for a in domain.sets() for b in domain.sets()
            if relation.geq(a, b)]


def format_witness(order, relation):
    """:obj:`list` of :obj:`str`: Both relations, element order first."""
    return format_order(order) + format_relation(relation)


def display_witness(order, relation):
    """Echo a witness under coloured headings."""

    click.secho('Element order:', fg='cyan', bold=True)
    for line in format_order(order):
        click.echo(line)
    click.secho('Set ranking:', fg='cyan', bold=True)
    for line in format_relation(relation):
        click.echo(line)
