"""A two-sorted logic for set preferences.

Formulas talk about elements (sort ``elem``) and nonempty sets of elements
(sort ``set``). This module reads them from text, puts them into negation
normal form, decides whether they are existentially set-guarded, evaluates them
on a finite structure, and grounds them into CNF over the variable layout of
:obj:`rankset.models.Domain`.

The surface syntax::

    forall_e x. phi          forall_s A. phi
    exists_e x in t. phi     exists_e_unguarded x. phi     exists_s A. phi
    not phi   phi and psi   phi or psi   phi -> psi   phi <-> psi
    true   false   # comment to end of line

Terms are variables, ``union(A, B)``, ``sing(x)`` and ``replaceInBy(a, A, b)``.
Atoms are ``in(x, A)``, ``subseteq(A, B)``, ``disjoint(A, B)``,
``evencard(A)``, ``equalcard(A, B)``, ``wpref(A, B)``, ``lpref(x, y)``,
``eq(s, t)`` and the strict forms ``wstrict`` and ``lstrict``, which are
rewritten to ``wpref(A, B) and not wpref(B, A)`` as they are read.

Binding strength increases from ``<->`` over ``->`` (right associative),
``or`` and ``and`` to ``not``; a quantifier body extends as far to the right
as possible. Free variables take their sort from their name: lowercase
initials are elements, uppercase initials are sets.

"""

import functools
import itertools
import logging
import pkgutil
from dataclasses import dataclass

from ply import lex, yacc

import rankset.defaults as defaults
from rankset.axioms import AXIOMS, axiom_id
from rankset.errors import (ArityError, MslspSyntaxError, NotClosedError,
                            SortError, UnboundVariableError)
from rankset.models import Cnf, Domain, popcount

log = logging.getLogger(__name__)

ELEM = 'elem'
SET = 'set'

SAMPLES = ('pb', 'three_distinct')


# -- abstract syntax ----------------------------------------------------------


@dataclass(frozen=True)
class Var:
    """A variable. ``uid`` is 0 for free variables and unique per binder
    otherwise."""
    name: str
    sort: str
    uid: int = 0


@dataclass(frozen=True)
class Union:
    left: object
    right: object
    sort = SET


@dataclass(frozen=True)
class Singleton:
    element: object
    sort = SET


@dataclass(frozen=True)
class ReplaceInBy:
    old: object
    target: object
    new: object
    sort = SET


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Atom:
    relation: str
    args: tuple


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True)
class Forall:
    var: Var
    body: object


@dataclass(frozen=True)
class Exists:
    var: Var
    body: object


FUNCTIONS = {
    'union': ((SET, SET), Union),
    'sing': ((ELEM,), Singleton),
    'replaceInBy': ((ELEM, SET, ELEM), ReplaceInBy),
}

RELATIONS = {
    'in': (ELEM, SET),
    'subseteq': (SET, SET),
    'disjoint': (SET, SET),
    'evencard': (SET,),
    'equalcard': (SET, SET),
    'wpref': (SET, SET),
    'lpref': (ELEM, ELEM),
    'wstrict': (SET, SET),
    'lstrict': (ELEM, ELEM),
    'eq': (None, None),
}

_STRICT = {'wstrict': 'wpref', 'lstrict': 'lpref'}


def term_vars(term):
    """:obj:`set` of :obj:`Var`: Variables occurring in a term."""
    if isinstance(term, Var):
        return {term}
    if isinstance(term, Union):
        return term_vars(term.left) | term_vars(term.right)
    if isinstance(term, Singleton):
        return term_vars(term.element)
    return term_vars(term.old) | term_vars(term.target) | term_vars(term.new)


def free_vars(formula):
    """:obj:`set` of :obj:`Var`: Variables occurring free in a formula."""
    if isinstance(formula, Const):
        return set()
    if isinstance(formula, Atom):
        return set().union(*[term_vars(arg) for arg in formula.args])
    if isinstance(formula, Not):
        return free_vars(formula.body)
    if isinstance(formula, (And, Or)):
        return set().union(*[free_vars(part) for part in formula.parts])
    if isinstance(formula, (Implies, Iff)):
        return free_vars(formula.left) | free_vars(formula.right)
    return free_vars(formula.body) - {formula.var}


def is_quantifier_free(formula):
    """:obj:`bool`: True iff no quantifier occurs in ``formula``."""
    if isinstance(formula, (Forall, Exists)):
        return False
    if isinstance(formula, Not):
        return is_quantifier_free(formula.body)
    if isinstance(formula, (And, Or)):
        return all(is_quantifier_free(part) for part in formula.parts)
    if isinstance(formula, (Implies, Iff)):
        return (is_quantifier_free(formula.left)
                and is_quantifier_free(formula.right))
    return True


# -- concrete syntax ----------------------------------------------------------


class _Grammar(object):
    """ply lexer and parser rules producing a raw, unsorted tree."""

    reserved = {
        'forall_e': 'FORALL_E', 'forall_s': 'FORALL_S',
        'exists_e': 'EXISTS_E', 'exists_e_unguarded': 'EXISTS_E_UNGUARDED',
        'exists_s': 'EXISTS_S', 'and': 'AND', 'or': 'OR', 'not': 'NOT',
        'in': 'IN', 'true': 'TRUE', 'false': 'FALSE',
    }

    tokens = ('IDENT', 'LPAREN', 'RPAREN', 'COMMA', 'DOT', 'IFF',
              'IMPLIES') + tuple(sorted(set(reserved.values())))

    precedence = (
        ('right', 'QUANT'),
        ('left', 'IFF'),
        ('right', 'IMPLIES'),
        ('left', 'OR'),
        ('left', 'AND'),
        ('right', 'NOT'),
    )

    t_LPAREN = r'\('
    t_RPAREN = r'\)'
    t_COMMA = r','
    t_DOT = r'\.'
    t_IFF = r'<->'
    t_IMPLIES = r'->'
    t_ignore = ' \t\r'
    t_ignore_COMMENT = r'\#[^\n]*'

    def t_IDENT(self, t):
        r"[A-Za-z][A-Za-z0-9_']*"
        t.type = self.reserved.get(t.value, 'IDENT')
        return t

    def t_newline(self, t):
        r'\n+'
        t.lexer.lineno += len(t.value)

    def t_error(self, t):
        raise MslspSyntaxError('illegal character {!r}'.format(t.value[0]),
                               t.lexer.lineno,
                               _column(t.lexer.lexdata, t.lexpos))

    @staticmethod
    def _pos(p, index):
        return (p.lineno(index), _column(p.lexer.lexdata, p.lexpos(index)))

    def p_formula_binary(self, p):
        '''formula : formula IFF formula
                   | formula IMPLIES formula
                   | formula OR formula
                   | formula AND formula'''
        p[0] = ('bin', p.slice[2].type, p[1], p[3], self._pos(p, 2))

    def p_formula_not(self, p):
        'formula : NOT formula'
        p[0] = ('not', p[2], self._pos(p, 1))

    def p_formula_group(self, p):
        'formula : LPAREN formula RPAREN'
        p[0] = p[2]

    def p_formula_const(self, p):
        '''formula : TRUE
                   | FALSE'''
        p[0] = ('const', p[1] == 'true', self._pos(p, 1))

    def p_formula_quant(self, p):
        '''formula : FORALL_E IDENT DOT formula %prec QUANT
                   | FORALL_S IDENT DOT formula %prec QUANT
                   | EXISTS_E_UNGUARDED IDENT DOT formula %prec QUANT
                   | EXISTS_S IDENT DOT formula %prec QUANT'''
        p[0] = ('quant', p.slice[1].type, p[2], None, p[4], self._pos(p, 2))

    def p_formula_guarded(self, p):
        'formula : EXISTS_E IDENT IN term DOT formula %prec QUANT'
        p[0] = ('quant', 'EXISTS_E', p[2], p[4], p[6], self._pos(p, 2))

    def p_formula_unguarded_error(self, p):
        'formula : EXISTS_E IDENT DOT formula %prec QUANT'
        line, column = self._pos(p, 1)
        raise MslspSyntaxError('exists_e needs a guard: write "exists_e {0} '
                               'in <set>." or "exists_e_unguarded {0}."'
                               .format(p[2]), line, column)

    def p_formula_atom(self, p):
        '''formula : IDENT LPAREN terms RPAREN
                   | IN LPAREN terms RPAREN'''
        p[0] = ('atom', p[1], p[3], self._pos(p, 1))

    def p_term_var(self, p):
        'term : IDENT'
        p[0] = ('var', p[1], self._pos(p, 1))

    def p_term_app(self, p):
        'term : IDENT LPAREN terms RPAREN'
        p[0] = ('app', p[1], p[3], self._pos(p, 1))

    def p_terms(self, p):
        '''terms : term
                 | terms COMMA term'''
        p[0] = [p[1]] if len(p) == 2 else p[1] + [p[3]]

    def p_error(self, tok):
        if tok is None:
            raise MslspSyntaxError('unexpected end of input')
        raise MslspSyntaxError('unexpected {!r}'.format(tok.value),
                               tok.lineno, _column(tok.lexer.lexdata,
                                                   tok.lexpos))


def _column(text, pos):
    return pos - text.rfind('\n', 0, pos)


@functools.lru_cache(maxsize=None)
def _parser():
    grammar = _Grammar()
    lexer = lex.lex(module=grammar)
    parser = yacc.yacc(module=grammar, debug=False, write_tables=False,
                       errorlog=yacc.NullLogger())
    return lexer, parser


class _Builder(object):
    """Elaborate a raw tree into the sorted AST, renaming bound variables
    apart."""

    _QUANTIFIERS = {
        'FORALL_E': (Forall, ELEM), 'FORALL_S': (Forall, SET),
        'EXISTS_E': (Exists, ELEM), 'EXISTS_E_UNGUARDED': (Exists, ELEM),
        'EXISTS_S': (Exists, SET),
    }

    _CONNECTIVES = {'AND': And, 'OR': Or}

    def __init__(self, closed):
        self.closed = closed
        self.counter = itertools.count(1)

    def formula(self, raw, scope):
        kind = raw[0]
        if kind == 'const':
            return Const(raw[1])
        if kind == 'not':
            return Not(self.formula(raw[1], scope))
        if kind == 'bin':
            _, op, left, right, _ = raw
            left, right = self.formula(left, scope), self.formula(right, scope)
            if op == 'IMPLIES':
                return Implies(left, right)
            if op == 'IFF':
                return Iff(left, right)
            return self._CONNECTIVES[op]((left, right))
        if kind == 'quant':
            return self.quantifier(raw, scope)
        return self.atom(raw, scope)

    def quantifier(self, raw, scope):
        _, op, name, guard, body, _ = raw
        cls, sort = self._QUANTIFIERS[op]
        if guard is not None:
            guard = self.expect(guard, SET, scope)
        var = Var(name, sort, next(self.counter))
        inner = dict(scope)
        inner[name] = var
        body = self.formula(body, inner)
        if guard is not None:
            rest = body.parts if isinstance(body, And) else (body,)
            body = And((Atom('in', (var, guard)),) + rest)
        return cls(var, body)

    def atom(self, raw, scope):
        _, name, args, (line, column) = raw
        if name not in RELATIONS:
            raise MslspSyntaxError('unknown relation {!r}'.format(name),
                                   line, column)
        sorts = RELATIONS[name]
        if len(args) != len(sorts):
            raise ArityError('{} takes {} argument(s), got {}'
                             .format(name, len(sorts), len(args)),
                             line, column)
        if name == 'eq':
            left = self.term(args[0], scope)
            right = self.expect(args[1], left.sort, scope)
            return Atom('eq', (left, right))
        terms = tuple(self.expect(arg, sort, scope)
                      for arg, sort in zip(args, sorts))
        if name in _STRICT:
            weak = _STRICT[name]
            return And((Atom(weak, terms),
                        Not(Atom(weak, (terms[1], terms[0])))))
        return Atom(name, terms)

    def expect(self, raw, sort, scope):
        term = self.term(raw, scope)
        if term.sort != sort:
            line, column = raw[-1]
            raise SortError('expected a term of sort {}, got {} of sort {}'
                            .format(sort, to_text(term), term.sort),
                            line, column)
        return term

    def term(self, raw, scope):
        if raw[0] == 'var':
            _, name, (line, column) = raw
            if name in scope:
                return scope[name]
            if self.closed:
                raise UnboundVariableError('unbound variable {!r}'
                                           .format(name), line, column)
            return Var(name, SET if name[0].isupper() else ELEM)
        _, name, args, (line, column) = raw
        if name not in FUNCTIONS:
            raise MslspSyntaxError('unknown function {!r}'.format(name),
                                   line, column)
        sorts, cls = FUNCTIONS[name]
        if len(args) != len(sorts):
            raise ArityError('{} takes {} argument(s), got {}'
                             .format(name, len(sorts), len(args)),
                             line, column)
        return cls(*[self.expect(arg, sort, scope)
                     for arg, sort in zip(args, sorts)])


def parse(text, closed=False):
    """Read a formula.

    Args:
        text (:obj:`str`): Source in the surface syntax.
        closed (:obj:`bool`, optional): Reject free variables. Defaults to
            False.

    Returns:
        The sorted formula.

    Raises:
        :obj:`MslspSyntaxError`: On a lexical or grammatical error. The
            subclasses :obj:`SortError`, :obj:`ArityError` and
            :obj:`UnboundVariableError` report sort, arity and scoping
            problems. All carry a line and column where known.

    """
    lexer, parser = _parser()
    lexer = lexer.clone()
    lexer.lineno = 1
    raw = parser.parse(text, lexer=lexer)
    if raw is None:
        raise MslspSyntaxError('empty formula')
    return _Builder(closed).formula(raw, {})


def load_source(name):
    """Return the shipped source text for a catalog axiom or a sample.

    Args:
        name (:obj:`str`): An axiom identifier or alias, or one of
            :obj:`SAMPLES`.

    Raises:
        :obj:`KeyError`: If no such source ships with the package.

    """
    stem = name if name in SAMPLES else axiom_id(name).lower()
    return pkgutil.get_data('rankset', 'catalog/{}.mslsp'.format(stem)) \
        .decode('utf-8')


@functools.lru_cache(maxsize=None)
def catalog_formula(name):
    """Parse the shipped source of a catalog axiom or sample."""
    return parse(load_source(name), closed=True)


# -- normal form and classification -------------------------------------------


def _flatten(cls, parts):
    flat = []
    for part in parts:
        if isinstance(part, cls):
            flat.extend(part.parts)
        else:
            flat.append(part)
    return flat


def _join(cls, parts):
    unit, zero = (True, False) if cls is And else (False, True)
    kept = []
    for part in _flatten(cls, parts):
        if isinstance(part, Const):
            if part.value == zero:
                return Const(zero)
            continue
        kept.append(part)
    if not kept:
        return Const(unit)
    if len(kept) == 1:
        return kept[0]
    return cls(tuple(kept))


def normalize(formula):
    """Negation normal form.

    Implications and biconditionals are eliminated, negations sit directly on
    atoms, nested conjunctions and disjunctions are flattened and constants
    are folded into their parents. The result is logically equivalent to the
    input and ``normalize`` is idempotent.

    """
    return _nnf(formula, True)


def _nnf(formula, positive):
    if isinstance(formula, Const):
        return Const(formula.value == positive)
    if isinstance(formula, Atom):
        return formula if positive else Not(formula)
    if isinstance(formula, Not):
        return _nnf(formula.body, not positive)
    if isinstance(formula, (And, Or)):
        same = isinstance(formula, And) == positive
        return _join(And if same else Or,
                     [_nnf(part, positive) for part in formula.parts])
    if isinstance(formula, Implies):
        return _nnf(Or((Not(formula.left), formula.right)), positive)
    if isinstance(formula, Iff):
        left, right = formula.left, formula.right
        if positive:
            return _nnf(And((Or((Not(left), right)),
                             Or((left, Not(right))))), True)
        return _nnf(And((Or((left, right)),
                         Or((Not(left), Not(right))))), True)
    if isinstance(formula, Forall):
        cls = Forall if positive else Exists
    else:
        cls = Exists if positive else Forall
    return cls(formula.var, _nnf(formula.body, positive))


class EsgVerdict(object):
    """Outcome of :obj:`classify_esg`.

    Attributes:
        ok (:obj:`bool`): True iff the formula is existentially set-guarded.
        offending: The first subformula that breaks the guard condition, or
            None.

    """

    def __init__(self, ok, offending=None):
        self.ok = ok
        self.offending = offending

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return 'ESG' if self.ok else 'NotESG({})'.format(self.reason)

    @property
    def reason(self):
        """:obj:`str`: The offending subformula in surface syntax."""
        return to_text(self.offending) if self.offending is not None else ''


def _is_guard(part, var):
    return (isinstance(part, Atom) and part.relation == 'in'
            and part.args[0] == var and var not in term_vars(part.args[1]))


def classify_esg(formula):
    """Decide syntactically whether a formula is existentially set-guarded.

    The formula is normalized first. Quantifier-free formulas qualify;
    conjunctions, disjunctions and universal quantifications qualify when
    their parts do; an element existential qualifies when its body is a
    conjunction containing ``in(y, t)`` for the bound ``y`` with ``y`` not in
    ``t`` and the remaining conjuncts qualify. Set existentials never
    qualify.

    Returns:
        :obj:`EsgVerdict`: The verdict with the first offending subformula.

    """
    offending = _esg(normalize(formula))
    return EsgVerdict(offending is None, offending)


def _esg(formula):
    if is_quantifier_free(formula):
        return None
    if isinstance(formula, (And, Or)):
        for part in formula.parts:
            offending = _esg(part)
            if offending is not None:
                return offending
        return None
    if isinstance(formula, Forall):
        return _esg(formula.body)
    if isinstance(formula, Exists):
        if formula.var.sort == SET:
            return formula
        parts = (formula.body.parts if isinstance(formula.body, And)
                 else (formula.body,))
        guards = [i for i, part in enumerate(parts)
                  if _is_guard(part, formula.var)]
        if not guards:
            return formula
        rest = parts[:guards[0]] + parts[guards[0] + 1:]
        for part in rest:
            offending = _esg(part)
            if offending is not None:
                return offending
        return None
    return formula


@functools.lru_cache(maxsize=None)
def certified_axioms():
    """:obj:`frozenset` of :obj:`str`: Catalog axioms whose shipped sources
    classify as existentially set-guarded."""
    certified = set()
    for axiom in AXIOMS:
        verdict = classify_esg(catalog_formula(axiom))
        if verdict:
            certified.add(axiom)
        else:
            log.warning('%s is not certified ESG: %s', axiom, verdict.reason)
    return frozenset(certified)


# -- semantics ----------------------------------------------------------------


def _value(term, env):
    if isinstance(term, Var):
        return env[term]
    if isinstance(term, Union):
        return _value(term.left, env) | _value(term.right, env)
    if isinstance(term, Singleton):
        return 1 << _value(term.element, env)
    return Domain.replace_in_by(_value(term.old, env),
                                _value(term.target, env),
                                _value(term.new, env))


def _fixed(relation, values):
    """Evaluate a signature predicate that does not depend on the model."""
    if relation == 'in':
        return bool(values[1] >> values[0] & 1)
    if relation == 'subseteq':
        return values[0] | values[1] == values[1]
    if relation == 'disjoint':
        return values[0] & values[1] == 0
    if relation == 'evencard':
        return popcount(values[0]) % 2 == 0
    if relation == 'equalcard':
        return popcount(values[0]) == popcount(values[1])
    return values[0] == values[1]


def _bind(formula, env):
    """Map free variables to values given by name."""
    bound = {}
    for var in free_vars(formula):
        if var.name not in env:
            raise NotClosedError([v.name for v in free_vars(formula)
                                  if v.name not in env])
        bound[var] = env[var.name]
    return bound


def evaluate(formula, order, relation, env=None):
    """Evaluate a formula on a finite structure.

    Args:
        formula: A sorted formula.
        order (:obj:`ElementOrder`): Interpretation of ``lpref``.
        relation (:obj:`SetRelation`): Interpretation of ``wpref``; must
            share the domain size of ``order``.
        env (:obj:`dict`, optional): Values for free variables, by name.

    Returns:
        :obj:`bool`: The truth value.

    Raises:
        :obj:`NotClosedError`: If a free variable has no value.

    """
    domain = Domain(order.n)
    return _eval(formula, _bind(formula, env or {}), order, relation, domain)


def _eval(formula, env, order, relation, domain):
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, Atom):
        values = [_value(arg, env) for arg in formula.args]
        if formula.relation == 'lpref':
            return order.geq(*values)
        if formula.relation == 'wpref':
            return relation.geq(*values)
        return _fixed(formula.relation, values)
    if isinstance(formula, Not):
        return not _eval(formula.body, env, order, relation, domain)
    if isinstance(formula, And):
        return all(_eval(part, env, order, relation, domain)
                   for part in formula.parts)
    if isinstance(formula, Or):
        return any(_eval(part, env, order, relation, domain)
                   for part in formula.parts)
    if isinstance(formula, Implies):
        return (not _eval(formula.left, env, order, relation, domain)
                or _eval(formula.right, env, order, relation, domain))
    if isinstance(formula, Iff):
        return (_eval(formula.left, env, order, relation, domain)
                == _eval(formula.right, env, order, relation, domain))
    values = domain.elements() if formula.var.sort == ELEM else domain.sets()
    results = (_eval(formula.body, _extend(env, formula.var, value),
                     order, relation, domain)
               for value in values)
    return all(results) if isinstance(formula, Forall) else any(results)


def _extend(env, var, value):
    inner = dict(env)
    inner[var] = value
    return inner


# -- grounding ----------------------------------------------------------------
#
# Grounded formulas are True, False, a nonzero int literal, or a tuple
# ('and' | 'or', children) with at least two children.


def _gjoin(op, children):
    unit, zero = (True, False) if op == 'and' else (False, True)
    kept = []
    for child in children:
        if child is zero:
            return zero
        if child is unit:
            continue
        if isinstance(child, tuple) and child[0] == op:
            kept.extend(child[1])
        else:
            kept.append(child)
    if not kept:
        return unit
    if len(kept) == 1:
        return kept[0]
    return (op, tuple(kept))


def _ground(formula, env, domain):
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, Atom):
        values = [_value(arg, env) for arg in formula.args]
        if formula.relation == 'lpref':
            return domain.var_l(*values)
        if formula.relation == 'wpref':
            return domain.var_w(*values)
        return _fixed(formula.relation, values)
    if isinstance(formula, Not):
        inner = _ground(formula.body, env, domain)
        return not inner if isinstance(inner, bool) else -inner
    if isinstance(formula, (And, Or)):
        op = 'and' if isinstance(formula, And) else 'or'
        return _gjoin(op, [_ground(part, env, domain)
                           for part in formula.parts])
    var = formula.var
    values = domain.elements() if var.sort == ELEM else domain.sets()
    op = 'and' if isinstance(formula, Forall) else 'or'
    return _gjoin(op, [_ground(formula.body, _extend(env, var, value), domain)
                       for value in values])


def _size(node):
    """Clauses and literals ``node`` distributes into."""
    if isinstance(node, int):
        return 1, 1
    sizes = [_size(child) for child in node[1]]
    if node[0] == 'and':
        return sum(c for c, _ in sizes), sum(l for _, l in sizes)
    clauses, literals = 1, 0
    for c, l in sizes:
        literals = literals * c + l * clauses
        clauses *= c
    return clauses, literals


def _distribute(node):
    if isinstance(node, int):
        return [[node]]
    if node[0] == 'and':
        return [clause for child in node[1] for clause in _distribute(child)]
    clauses = [[]]
    for child in node[1]:
        clauses = [left + right for left in clauses
                   for right in _distribute(child)]
    return clauses


class _Definitions(object):
    """Positive-polarity definitional clauses with fresh variables."""

    def __init__(self, first_var):
        self.next_var = first_var
        self.clauses = []

    def literal(self, node):
        if isinstance(node, int):
            return node
        children = [self.literal(child) for child in node[1]]
        var = self.next_var
        self.next_var += 1
        if node[0] == 'and':
            self.clauses.extend([-var, child] for child in children)
        else:
            self.clauses.append([-var] + children)
        return var

    def top(self, node):
        if isinstance(node, tuple) and node[0] == 'or':
            self.clauses.append([self.literal(child) for child in node[1]])
        else:
            self.clauses.append([self.literal(node)])


def ground(formula, n, budget=None):
    """Ground a closed formula over an ``n``-element domain into CNF.

    Quantifiers expand into conjunctions or disjunctions over all elements or
    all nonempty sets, signature predicates are folded to constants, and
    ``lpref``/``wpref`` atoms become the layout's variables. Each top-level
    conjunct is distributed into clauses when that takes at most ``budget``
    literals; larger conjuncts are encoded with fresh definition variables
    numbered after the layout, which preserves the models projected to the
    layout.

    Args:
        formula: A closed, sorted formula.
        n (:obj:`int`): The domain size, at least 1.
        budget (:obj:`int`, optional): Distribution limit in literals.
            Defaults to :obj:`defaults.CLAUSE_BUDGET`.

    Returns:
        :obj:`Cnf`: Without tautologies; ``base_vars`` is the layout size.

    Raises:
        :obj:`NotClosedError`: If ``formula`` has free variables.

    """
    budget = budget if budget is not None else defaults.CLAUSE_BUDGET
    free = free_vars(formula)
    if free:
        raise NotClosedError([var.name for var in free])
    domain = Domain(n)
    grounded = _ground(normalize(formula), {}, domain)
    if grounded is True:
        return Cnf(domain.num_vars, [], domain.num_vars)
    if grounded is False:
        return Cnf(domain.num_vars, [[]], domain.num_vars)
    conjuncts = (grounded[1] if isinstance(grounded, tuple)
                 and grounded[0] == 'and' else (grounded,))
    clauses = []
    definitions = _Definitions(domain.num_vars + 1)
    for conjunct in conjuncts:
        if _size(conjunct)[1] <= budget:
            clauses.extend(_distribute(conjunct))
        else:
            definitions.top(conjunct)
    if definitions.clauses:
        log.debug('defined %d auxiliary variables',
                  definitions.next_var - domain.num_vars - 1)
    return Cnf(definitions.next_var - 1, clauses + definitions.clauses,
               domain.num_vars).simplified()


# -- printing -----------------------------------------------------------------


def to_text(node):
    """Render a term or formula in the surface syntax."""
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Union):
        return 'union({}, {})'.format(to_text(node.left), to_text(node.right))
    if isinstance(node, Singleton):
        return 'sing({})'.format(to_text(node.element))
    if isinstance(node, ReplaceInBy):
        return 'replaceInBy({}, {}, {})'.format(
            to_text(node.old), to_text(node.target), to_text(node.new))
    if isinstance(node, Const):
        return 'true' if node.value else 'false'
    if isinstance(node, Atom):
        return '{}({})'.format(node.relation,
                               ', '.join(to_text(arg) for arg in node.args))
    if isinstance(node, Not):
        return 'not {}'.format(_wrap(node.body))
    if isinstance(node, And):
        return ' and '.join(_wrap(part) for part in node.parts)
    if isinstance(node, Or):
        return ' or '.join(_wrap(part) for part in node.parts)
    if isinstance(node, Implies):
        return '{} -> {}'.format(_wrap(node.left), _wrap(node.right))
    if isinstance(node, Iff):
        return '{} <-> {}'.format(_wrap(node.left), _wrap(node.right))
    var = node.var
    if isinstance(node, Forall):
        keyword = 'forall_e' if var.sort == ELEM else 'forall_s'
        return '{} {}. {}'.format(keyword, var.name, to_text(node.body))
    if var.sort == SET:
        return 'exists_s {}. {}'.format(var.name, to_text(node.body))
    parts = node.body.parts if isinstance(node.body, And) else (node.body,)
    if _is_guard(parts[0], var):
        rest = parts[1:]
        body = (to_text(And(rest)) if len(rest) > 1
                else to_text(rest[0]) if rest else 'true')
        return 'exists_e {} in {}. {}'.format(
            var.name, to_text(parts[0].args[1]), body)
    return 'exists_e_unguarded {}. {}'.format(var.name, to_text(node.body))


def _wrap(node):
    if isinstance(node, (Atom, Const, Not)):
        return to_text(node)
    return '({})'.format(to_text(node))
