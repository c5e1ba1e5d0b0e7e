"""Core classes for rankset.

This module contains the shared substrate every other module builds on: the
coding of elements and sets, set algebra on those codes, the enumeration of
propositional variables, the relations a model decodes to, and the
:obj:`Cnf` container. It should stand alone, and allow for other interfaces
to be built using it.

Elements of an ``n``-element domain are coded ``0 .. n-1``. A nonempty set of
elements is coded as its characteristic function read as a binary number, so
bit ``i`` of a set code is set iff element ``i`` is a member. The empty set is
never a set code.

Propositional variables are laid out row-major: ``l(x, y)`` ("x is at least as
good as y") occupies ``1 .. n**2`` and ``w(A, B)`` ("A is at least as good as
B") occupies ``n**2 + 1 .. n**2 + (2**n - 1)**2``. Strict preference never
gets a variable of its own.

"""

import itertools

import rankset.defaults as defaults
from rankset.errors import DecodeError, DomainError


class EqualityMixin(object):
    """Mixin class that adds equality checking.

    Note:
        Equality checks are performed by checking the equality of the
        :obj:`object.__dict__` methods of the classes at issue.

        To exclude attributes from the comparison, add an attribute
        :obj:`equality_ignore` to the class. Populate this attribute with a
        :obj:`list` of :obj:`str` names of attributes to exclude.

    """

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            ignore = getattr(self, 'equality_ignore', [])
            keys = [key for key in self.__dict__ if key not in ignore]
            return all(other.__dict__.get(key) == self.__dict__[key]
                       for key in keys)
        else:
            return NotImplemented

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        ignore = getattr(self, 'equality_ignore', [])
        return hash(tuple((key, value) for key, value
                          in sorted(self.__dict__.items())
                          if key not in ignore))


def popcount(mask):
    """:obj:`int`: The number of set bits in ``mask``."""
    return bin(mask).count('1')


def bits(mask):
    """Return the indexes of the set bits of ``mask`` in ascending order."""
    return [index for index in range(mask.bit_length()) if mask >> index & 1]


class Domain(EqualityMixin):
    """A fixed finite domain of ``n`` linearly ordered objects and the codes
    of its nonempty subsets.

    Args:
        n (:obj:`int`): The number of elements.
        max_size (:obj:`int`, optional): Largest domain accepted. Defaults to
            :obj:`defaults.MAX_SIZE`.

    Attributes:
        n (:obj:`int`): The number of elements.
        num_sets (:obj:`int`): ``2**n - 1``, the number of nonempty subsets.
        num_l_vars (:obj:`int`): Number of element-pair variables, ``n**2``.
        num_vars (:obj:`int`): Total number of ``l`` and ``w`` variables.
        full (:obj:`int`): The set code of the whole domain.

    Raises:
        :obj:`DomainError`: If ``n`` is smaller than 1 or larger than
            ``max_size``.

    """

    def __init__(self, n, max_size=None):
        max_size = max_size if max_size else defaults.MAX_SIZE
        if not isinstance(n, int) or n < 1 or n > max_size:
            raise DomainError('domain size must be between 1 and {}, got {}'
                              .format(max_size, n))
        self.n = n
        self.num_sets = 2 ** n - 1
        self.num_l_vars = n * n
        self.num_vars = self.num_l_vars + self.num_sets ** 2
        self.full = self.num_sets

    def __repr__(self):
        return 'Domain({})'.format(self.n)

    def elements(self):
        """:obj:`range`: All element codes."""
        return range(self.n)

    def sets(self):
        """:obj:`range`: All set codes, in ascending order."""
        return range(1, self.num_sets + 1)

    def check_element(self, x):
        """Raise :obj:`DomainError` unless ``x`` is a valid element code."""
        if not 0 <= x < self.n:
            raise DomainError('element code {} out of range for n={}'
                              .format(x, self.n))

    def check_set(self, a):
        """Raise :obj:`DomainError` unless ``a`` is a valid set code."""
        if not 1 <= a <= self.num_sets:
            raise DomainError('set code {} out of range for n={}'
                              .format(a, self.n))

    def members(self, a):
        """:obj:`list` of :obj:`int`: The element codes contained in set
        ``a``."""
        return bits(a)

    def non_members(self, a):
        """:obj:`list` of :obj:`int`: The element codes not in set ``a``."""
        return bits(self.full & ~a)

    # -- signature functions ------------------------------------------------

    @staticmethod
    def union(a, b):
        """:obj:`int`: The union of two set codes."""
        return a | b

    def singleton(self, x):
        """:obj:`int`: The code of the singleton set ``{x}``.

        Raises:
            :obj:`DomainError`: If ``x`` is not an element of this domain.

        """
        self.check_element(x)
        return 1 << x

    @staticmethod
    def replace_in_by(a, s, b):
        """:obj:`int`: ``(s - {a}) | {b}``.

        Note:
            Total on purpose: if ``a`` is not in ``s`` the result is ``s``
            with ``b`` added, and the result is never empty.

        """
        return (s & ~(1 << a)) | (1 << b)

    # -- signature relations ------------------------------------------------

    @staticmethod
    def member(x, a):
        """:obj:`bool`: True iff element ``x`` is in set ``a``."""
        return bool(a >> x & 1)

    @staticmethod
    def subseteq(a, b):
        """:obj:`bool`: True iff ``a`` is a subset of ``b``."""
        return a | b == b

    @staticmethod
    def disjoint(a, b):
        """:obj:`bool`: True iff ``a`` and ``b`` share no element."""
        return a & b == 0

    @staticmethod
    def evencard(a):
        """:obj:`bool`: True iff ``a`` has an even number of elements."""
        return popcount(a) % 2 == 0

    @staticmethod
    def equalcard(a, b):
        """:obj:`bool`: True iff ``a`` and ``b`` have the same cardinality."""
        return popcount(a) == popcount(b)

    def set_predicates(self, a, b):
        """Evaluate every binary set predicate of the signature on a pair.

        Returns:
            :obj:`dict`: ``subseteq``, ``disjoint``, ``evencard`` (of ``a``),
            ``equalcard`` and ``members`` (the element codes of ``a``).

        """
        self.check_set(a)
        self.check_set(b)
        return {'subseteq': self.subseteq(a, b),
                'disjoint': self.disjoint(a, b),
                'evencard': self.evencard(a),
                'equalcard': self.equalcard(a, b),
                'members': self.members(a)}

    # -- variable layout ----------------------------------------------------

    def var_l(self, x, y):
        """:obj:`int`: The variable id of ``l(x, y)``."""
        return 1 + x * self.n + y

    def var_w(self, a, b):
        """:obj:`int`: The variable id of ``w(a, b)``."""
        return self.num_l_vars + 1 + (a - 1) * self.num_sets + (b - 1)

    def describe_var(self, var):
        """Invert the variable layout.

        Args:
            var (:obj:`int`): A variable id in ``1 .. num_vars``.

        Returns:
            :obj:`tuple`: ``('l', x, y)`` or ``('w', a, b)``.

        Raises:
            :obj:`DomainError`: If ``var`` is outside the layout.

        """
        if 1 <= var <= self.num_l_vars:
            x, y = divmod(var - 1, self.n)
            return ('l', x, y)
        if self.num_l_vars < var <= self.num_vars:
            a, b = divmod(var - self.num_l_vars - 1, self.num_sets)
            return ('w', a + 1, b + 1)
        raise DomainError('variable {} outside the layout for n={}'
                          .format(var, self.n))

    def format_set(self, a):
        """:obj:`str`: ``{x1, x3}`` style rendering of set code ``a``."""
        return '{' + ', '.join('x{}'.format(x + 1)
                               for x in self.members(a)) + '}'


class ElementOrder(EqualityMixin):
    """A binary relation on the elements of a domain, usually linear.

    Args:
        n (:obj:`int`): The domain size.
        matrix (:obj:`tuple` of :obj:`tuple` of :obj:`bool`): ``matrix[x][y]``
            is True iff x is at least as good as y.

    """

    def __init__(self, n, matrix):
        self.n = n
        self.matrix = tuple(tuple(bool(cell) for cell in row)
                            for row in matrix)

    @classmethod
    def from_ranking(cls, ranking):
        """Build the linear order listing ``ranking`` from best to worst.

        Args:
            ranking (:obj:`list` of :obj:`int`): Every element code exactly
                once, best first.

        """
        n = len(ranking)
        position = {x: index for index, x in enumerate(ranking)}
        return cls(n, [[position[x] <= position[y] for y in range(n)]
                       for x in range(n)])

    @classmethod
    def canonical(cls, n):
        """The linear order with element 0 best and element ``n-1`` worst."""
        return cls.from_ranking(list(range(n)))

    @classmethod
    def universal(cls, n):
        """The relation in which every element is at least as good as every
        other one."""
        return cls(n, [[True] * n for _ in range(n)])

    def geq(self, x, y):
        """:obj:`bool`: x is at least as good as y."""
        return self.matrix[x][y]

    def strict(self, x, y):
        """:obj:`bool`: x is strictly better than y."""
        return self.matrix[x][y] and not self.matrix[y][x]

    @property
    def is_linear(self):
        """:obj:`bool`: Reflexive, complete, transitive and antisymmetric."""
        rel, elements = self.matrix, range(self.n)
        for x in elements:
            if not rel[x][x]:
                return False
            for y in elements:
                if x != y and rel[x][y] == rel[y][x]:
                    return False
                for z in elements:
                    if rel[x][y] and rel[y][z] and not rel[x][z]:
                        return False
        return True

    def ranking(self):
        """Return the element codes from best to worst.

        Raises:
            :obj:`DecodeError`: If the order is not linear.

        """
        if not self.is_linear:
            raise DecodeError('element relation is not a linear order')
        return sorted(range(self.n),
                      key=lambda x: -sum(self.matrix[x]))

    def max_of(self, a):
        """:obj:`int`: The best member of set code ``a``.

        Raises:
            :obj:`DecodeError`: If the order is not linear.

        """
        ranking = self.ranking()
        return next(x for x in ranking if a >> x & 1)

    def min_of(self, a):
        """:obj:`int`: The worst member of set code ``a``.

        Raises:
            :obj:`DecodeError`: If the order is not linear.

        """
        ranking = self.ranking()
        return next(x for x in reversed(ranking) if a >> x & 1)


class SetRelation(EqualityMixin):
    """A binary relation on the nonempty subsets of a domain.

    Note:
        Strict preference and indifference are derived from the weak
        relation on demand; they are never stored.

    Args:
        n (:obj:`int`): The domain size.
        matrix (:obj:`tuple` of :obj:`tuple` of :obj:`bool`): Indexed by set
            code, ``matrix[a][b]`` is True iff a is at least as good as b.
            Row and column 0 are padding and always False.

    """

    def __init__(self, n, matrix):
        self.n = n
        self.matrix = tuple(tuple(bool(cell) for cell in row)
                            for row in matrix)

    @classmethod
    def from_function(cls, n, geq):
        """Build the relation ``a >= b iff geq(a, b)``."""
        size = 2 ** n
        return cls(n, [[a > 0 and b > 0 and geq(a, b) for b in range(size)]
                       for a in range(size)])

    @classmethod
    def from_ranks(cls, n, ranks):
        """Build a weak order from a rank per set code (0 is best).

        Args:
            ranks (:obj:`dict` or :obj:`list`): ``ranks[a]`` for every set
                code ``a``.

        """
        return cls.from_function(n, lambda a, b: ranks[a] <= ranks[b])

    @classmethod
    def from_tiers(cls, n, tiers):
        """Build a weak order from indifference classes listed best first.

        Args:
            tiers (:obj:`list` of :obj:`list` of :obj:`int`): Every set code
                exactly once.

        """
        ranks = {a: index for index, tier in enumerate(tiers) for a in tier}
        return cls.from_ranks(n, ranks)

    @classmethod
    def universal_indifference(cls, n):
        """The relation in which all sets are indifferent."""
        return cls.from_function(n, lambda a, b: True)

    def geq(self, a, b):
        """:obj:`bool`: a is at least as good as b."""
        return self.matrix[a][b]

    def strict(self, a, b):
        """:obj:`bool`: a is strictly better than b."""
        return self.matrix[a][b] and not self.matrix[b][a]

    def indifferent(self, a, b):
        """:obj:`bool`: a and b are equally good."""
        return self.matrix[a][b] and self.matrix[b][a]

    @property
    def is_weak_order(self):
        """:obj:`bool`: Reflexive, complete and transitive."""
        rel, codes = self.matrix, range(1, 2 ** self.n)
        for a in codes:
            if not rel[a][a]:
                return False
            for b in codes:
                if not (rel[a][b] or rel[b][a]):
                    return False
        for a in codes:
            for b in codes:
                if rel[a][b]:
                    for c in codes:
                        if rel[b][c] and not rel[a][c]:
                            return False
        return True

    def tiers(self):
        """Group the sets of a weak order into indifference classes.

        Returns:
            :obj:`list` of :obj:`list` of :obj:`int`: Classes best first, set
            codes ascending within a class.

        Raises:
            :obj:`DecodeError`: If the relation is not a weak order.

        """
        if not self.is_weak_order:
            raise DecodeError('set relation is not a weak order')
        codes = range(1, 2 ** self.n)
        score = {a: sum(self.matrix[a][b] for b in codes) for a in codes}
        groups = itertools.groupby(sorted(codes, key=lambda a: -score[a]),
                                   key=lambda a: score[a])
        return [sorted(group) for _, group in groups]


class Cnf(EqualityMixin):
    """A propositional formula in conjunctive normal form.

    Args:
        num_vars (:obj:`int`): Declared number of variables.
        clauses (:obj:`list` of :obj:`list` of :obj:`int`): Clauses as lists
            of nonzero signed variable ids. Duplicate literals are merged;
            tautological clauses are kept until :obj:`Cnf.simplified`.
        base_vars (:obj:`int`, optional): Number of variables carrying
            meaning; any above it are auxiliary definitions. Defaults to
            ``num_vars``.

    Attributes:
        num_vars (:obj:`int`): Declared number of variables.
        clauses (:obj:`tuple` of :obj:`tuple` of :obj:`int`): The clauses.
        base_vars (:obj:`int`): Variables a model is projected to.

    Raises:
        :obj:`DomainError`: If a literal is zero or references a variable
            beyond ``num_vars``.

    """

    def __init__(self, num_vars, clauses=None, base_vars=None):
        self.num_vars = num_vars
        self.base_vars = base_vars if base_vars is not None else num_vars
        built = []
        for clause in clauses if clauses else []:
            lits = tuple(dict.fromkeys(clause))
            for lit in lits:
                if lit == 0 or abs(lit) > num_vars:
                    raise DomainError('literal {} outside 1..{}'
                                      .format(lit, num_vars))
            built.append(lits)
        self.clauses = tuple(built)

    def __repr__(self):
        return 'Cnf(vars={}, clauses={})'.format(self.num_vars,
                                                 len(self.clauses))

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    @staticmethod
    def is_tautology(clause):
        """:obj:`bool`: True iff the clause contains a literal and its
        negation."""
        lits = set(clause)
        return any(-lit in lits for lit in lits)

    def simplified(self):
        """Return a copy without tautological clauses."""
        return Cnf(self.num_vars,
                   [c for c in self.clauses if not self.is_tautology(c)],
                   self.base_vars)

    def extended(self, clauses, num_vars=None):
        """Return a copy with extra clauses appended.

        Args:
            clauses (:obj:`list` of :obj:`list` of :obj:`int`): New clauses.
            num_vars (:obj:`int`, optional): New declared variable count.

        """
        return Cnf(max(num_vars or 0, self.num_vars),
                   list(self.clauses) + [list(c) for c in clauses],
                   self.base_vars)

    @classmethod
    def concat(cls, formulas, num_vars):
        """Conjoin formulas over a shared variable numbering."""
        clauses = [clause for formula in formulas for clause in formula]
        return cls(num_vars, clauses)

    def satisfied_by(self, model):
        """Check a total assignment against every clause.

        Args:
            model (:obj:`list` of :obj:`bool`): ``model[v - 1]`` is the value
                of variable ``v``.

        Returns:
            :obj:`bool`: True iff every clause has a true literal.

        """
        return all(any(model[abs(lit) - 1] == (lit > 0) for lit in clause)
                   for clause in self.clauses)


def _lookup(assignment, var):
    try:
        if isinstance(assignment, dict):
            return bool(assignment[var])
        return bool(assignment[var - 1])
    except (KeyError, IndexError):
        raise DecodeError('assignment has no value for variable {}'
                          .format(var))


def decode_model(assignment, domain):
    """Read the element order and set relation off a truth assignment.

    Args:
        assignment (:obj:`list` or :obj:`dict`): Either a sequence indexed by
            ``var - 1`` or a mapping from variable id to truth value; must be
            total over ``1 .. domain.num_vars``.
        domain (:obj:`Domain`): The domain the variables were laid out for.

    Returns:
        :obj:`tuple`: (:obj:`ElementOrder`, :obj:`SetRelation`).

    Raises:
        :obj:`DecodeError`: If the assignment is partial.

    """
    n = domain.n
    order = ElementOrder(n, [[_lookup(assignment, domain.var_l(x, y))
                              for y in range(n)] for x in range(n)])
    size = 2 ** n
    relation = SetRelation(n, [[a > 0 and b > 0 and
                                _lookup(assignment, domain.var_w(a, b))
                                for b in range(size)] for a in range(size)])
    return order, relation


def encode_model(order, relation, domain):
    """Write an element order and set relation as a truth assignment.

    Returns:
        :obj:`list` of :obj:`bool`: Indexed by ``var - 1``.

    """
    model = [False] * domain.num_vars
    for x in domain.elements():
        for y in domain.elements():
            model[domain.var_l(x, y) - 1] = order.geq(x, y)
    for a in domain.sets():
        for b in domain.sets():
            model[domain.var_w(a, b) - 1] = relation.geq(a, b)
    return model
