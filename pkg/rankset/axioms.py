"""The axiom catalog for rankset.

Every catalog axiom exists twice: as a clause generator that writes the
axiom's quantifier expansion over a fixed domain straight into CNF, and as a
direct evaluator that checks the axiom on a decoded pair of relations. The two
are independent and serve as oracles for each other.

Generators emit one clause per quantifier instance and consequent conjunct.
Domain restrictions such as ``x not in A | B`` shrink the quantifier range,
while conditions on the element order become part of the antecedent.
Tautological instances are kept so clause counts follow closed-form formulas;
:obj:`rankset.models.Cnf.simplified` drops them.

"""

import functools
import itertools
import math

import bitmath

import rankset.defaults as defaults
from rankset.errors import DomainError
from rankset.models import (Cnf, Domain, ElementOrder, EqualityMixin,
                            SetRelation, popcount)

AXIOMS = ('LIN_E', 'REFL_S', 'COMPL_S', 'TRANS_S', 'EXT', 'SDOM', 'GF1', 'GF2',
          'IND', 'STRICT_IND', 'SUA_V', 'SUA_P', 'S_TOP_MON', 'S_BOT_MON',
          'TOP_IND', 'BOT_IND', 'DIS_IND', 'INT_IND', 'EVEN_EXT', 'MC')

LABELS = {
    'LIN_E': 'LINε', 'REFL_S': 'REFLσ', 'COMPL_S': 'COMPLσ',
    'TRANS_S': 'TRANSσ', 'EXT': 'EXT', 'SDOM': 'SDom', 'GF1': 'GF1',
    'GF2': 'GF2', 'IND': 'IND', 'STRICT_IND': 'strictIND', 'SUA_V': 'SUAv',
    'SUA_P': 'SUAp', 'S_TOP_MON': 'STopMon', 'S_BOT_MON': 'SBotMon',
    'TOP_IND': 'topIND', 'BOT_IND': 'botIND', 'DIS_IND': 'disIND',
    'INT_IND': 'intIND', 'EVEN_EXT': 'evenExt', 'MC': 'MC',
}

DESCRIPTIONS = {
    'LIN_E': 'the element relation is a linear order',
    'REFL_S': 'reflexivity of the set relation',
    'COMPL_S': 'completeness of the set relation',
    'TRANS_S': 'transitivity of the set relation',
    'EXT': 'extension: singletons are ranked like their elements',
    'SDOM': 'simple dominance',
    'GF1': 'Gardenfors principle, adding a better element',
    'GF2': 'Gardenfors principle, adding a worse element',
    'IND': 'independence',
    'STRICT_IND': 'strict independence',
    'SUA_V': 'simple uncertainty aversion',
    'SUA_P': 'simple uncertainty appeal',
    'S_TOP_MON': 'simple top monotonicity',
    'S_BOT_MON': 'simple bottom monotonicity',
    'TOP_IND': 'top independence',
    'BOT_IND': 'bottom independence',
    'DIS_IND': 'disjoint independence',
    'INT_IND': 'intermediate independence',
    'EVEN_EXT': 'even-numbered extension of equivalence',
    'MC': 'monotone consistency',
}


def _normalize_name(name):
    return (name.lower().replace('_', '').replace('-', '').replace(' ', '')
            .replace('ε', 'e').replace('σ', 's'))


_ALIASES = {}
for _axiom in AXIOMS:
    _ALIASES[_normalize_name(_axiom)] = _axiom
    _ALIASES[_normalize_name(LABELS[_axiom])] = _axiom


def axiom_id(name):
    """Resolve a catalog name or one of its aliases.

    Note:
        Matching ignores case, underscores, dashes and spaces, and reads
        ``ε``/``σ`` as ``e``/``s``, so ``SUAv``, ``sua_v`` and ``SUA_V`` all
        name the same axiom.

    Args:
        name (:obj:`str`): The name to resolve.

    Returns:
        :obj:`str`: The canonical axiom identifier.

    Raises:
        :obj:`KeyError`: If the name matches no catalog axiom.

    """
    try:
        return _ALIASES[_normalize_name(name)]
    except KeyError:
        raise KeyError('unknown axiom: {}'.format(name))


class AxiomSet(EqualityMixin):
    """A subset of the catalog, stored as a 20-bit mask.

    Bit ``i`` stands for ``AXIOMS[i]``, so iterating yields the members in
    catalog (table column) order.

    Args:
        mask (:obj:`int`, optional): The bit mask. Defaults to the empty set.

    """

    def __init__(self, mask=0):
        if not 0 <= mask < 2 ** len(AXIOMS):
            raise DomainError('axiom mask {} out of range'.format(mask))
        self.mask = mask

    @classmethod
    def from_names(cls, names):
        """Build a set from names or aliases.

        Raises:
            :obj:`KeyError`: On an unknown name.

        """
        mask = 0
        for name in names:
            mask |= 1 << AXIOMS.index(axiom_id(name))
        return cls(mask)

    @classmethod
    def all(cls):
        """The full catalog."""
        return cls(2 ** len(AXIOMS) - 1)

    def __repr__(self):
        return 'AxiomSet({{{}}})'.format(', '.join(self.names()))

    def __iter__(self):
        return iter(self.names())

    def __len__(self):
        return popcount(self.mask)

    def __contains__(self, name):
        return bool(self.mask >> AXIOMS.index(axiom_id(name)) & 1)

    def __or__(self, other):
        return AxiomSet(self.mask | other.mask)

    def __le__(self, other):
        return self.mask | other.mask == other.mask

    def names(self):
        """:obj:`list` of :obj:`str`: Member identifiers in catalog order."""
        return [axiom for index, axiom in enumerate(AXIOMS)
                if self.mask >> index & 1]

    def without(self, name):
        """Return a copy with one axiom removed."""
        return AxiomSet(self.mask & ~(1 << AXIOMS.index(axiom_id(name))))


class ProblemInstance(EqualityMixin):
    """An axiom set paired with a domain size.

    Args:
        axioms (:obj:`AxiomSet`): The axioms to satisfy.
        n (:obj:`int`): The domain size.
        max_size (:obj:`int`, optional): Largest size accepted. Defaults to
            :obj:`defaults.MAX_SIZE`.

    Raises:
        :obj:`DomainError`: If ``n`` is outside ``MIN_SIZE .. max_size``.

    """

    def __init__(self, axioms, n, max_size=None):
        if n < defaults.MIN_SIZE:
            raise DomainError('problem instances need at least {} elements'
                              .format(defaults.MIN_SIZE))
        self.domain = Domain(n, max_size)
        self.axioms = axioms
        self.n = n

    def __repr__(self):
        return 'ProblemInstance({!r}, n={})'.format(self.axioms, self.n)

    def cnf(self):
        """:obj:`Cnf`: Shortcut for :obj:`instance_cnf`."""
        return instance_cnf(self)


# -- clause generators --------------------------------------------------------
#
# Each generator takes a Domain and yields clauses. ``_not_lstrict`` and
# ``_not_wstrict`` return the two literals of a negated strict preference.


def _not_lstrict(d, x, y):
    return [-d.var_l(x, y), d.var_l(y, x)]


def _not_wstrict(d, a, b):
    return [-d.var_w(a, b), d.var_w(b, a)]


def _wstrict(d, a, b):
    return [[d.var_w(a, b)], [-d.var_w(b, a)]]


def _gen_lin_e(d):
    elements = d.elements()
    for x in elements:
        yield [d.var_l(x, x)]
    for x, y in itertools.permutations(elements, 2):
        yield [d.var_l(x, y), d.var_l(y, x)]
    for x, y, z in itertools.product(elements, repeat=3):
        yield [-d.var_l(x, y), -d.var_l(y, z), d.var_l(x, z)]
    for x, y in itertools.permutations(elements, 2):
        yield [-d.var_l(x, y), -d.var_l(y, x)]


def _gen_refl_s(d):
    for a in d.sets():
        yield [d.var_w(a, a)]


def _gen_compl_s(d):
    for a, b in itertools.permutations(d.sets(), 2):
        yield [d.var_w(a, b), d.var_w(b, a)]


def _gen_trans_s(d):
    for a, b, c in itertools.product(d.sets(), repeat=3):
        yield [-d.var_w(a, b), -d.var_w(b, c), d.var_w(a, c)]


def _gen_ext(d):
    for x, y in itertools.product(d.elements(), repeat=2):
        single = d.var_w(1 << x, 1 << y)
        yield [-d.var_l(x, y), single]
        yield [d.var_l(x, y), -single]


def _gen_sdom(d):
    for x, y in itertools.product(d.elements(), repeat=2):
        pair = 1 << x | 1 << y
        base = _not_lstrict(d, x, y)
        for cons in _wstrict(d, 1 << x, pair) + _wstrict(d, pair, 1 << y):
            yield base + cons


def _gen_gf1(d):
    for a in d.sets():
        for x in d.elements():
            base = [lit for m in d.members(a) for lit in _not_lstrict(d, x, m)]
            for cons in _wstrict(d, a | 1 << x, a):
                yield base + cons


def _gen_gf2(d):
    for a in d.sets():
        for x in d.elements():
            base = [lit for m in d.members(a) for lit in _not_lstrict(d, m, x)]
            for cons in _wstrict(d, a, a | 1 << x):
                yield base + cons


def _independence(d, strict=False, side=None, disjoint=False):
    """Shared body of the independence family.

    ``side(x, union)`` returns extra antecedent literals for the element
    order condition, or None when there is none.

    """
    for x in d.elements():
        bit = 1 << x
        outside = [a for a in d.sets() if not a & bit]
        for a, b in itertools.product(outside, repeat=2):
            if disjoint and a & b:
                continue
            base = _not_wstrict(d, a, b)
            if side:
                base = side(x, a | b) + base
            if strict:
                for cons in _wstrict(d, a | bit, b | bit):
                    yield base + cons
            else:
                yield base + [d.var_w(a | bit, b | bit)]


def _gen_ind(d):
    return _independence(d)


def _gen_strict_ind(d):
    return _independence(d, strict=True)


def _gen_top_ind(d):
    def side(x, union):
        return [lit for y in d.members(union)
                for lit in _not_lstrict(d, x, y)]
    return _independence(d, side=side)


def _gen_bot_ind(d):
    def side(x, union):
        return [lit for y in d.members(union)
                for lit in _not_lstrict(d, y, x)]
    return _independence(d, side=side)


def _gen_dis_ind(d):
    return _independence(d, disjoint=True)


def _gen_int_ind(d):
    for x, y in itertools.permutations(d.elements(), 2):
        both = 1 << x | 1 << y
        outside = [a for a in d.sets() if not a & both]
        for a, b in itertools.product(outside, repeat=2):
            side = [lit for z in d.members(a | b)
                    for lit in _not_lstrict(d, x, z) + _not_lstrict(d, z, y)]
            yield side + _not_wstrict(d, a, b) + [d.var_w(a | both, b | both)]


def _triples(d):
    return itertools.product(d.elements(), repeat=3)


def _gen_sua_v(d):
    for x, y, z in _triples(d):
        base = _not_lstrict(d, x, y) + _not_lstrict(d, y, z)
        for cons in _wstrict(d, 1 << y, 1 << x | 1 << z):
            yield base + cons


def _gen_sua_p(d):
    for x, y, z in _triples(d):
        base = _not_lstrict(d, x, y) + _not_lstrict(d, y, z)
        for cons in _wstrict(d, 1 << x | 1 << z, 1 << y):
            yield base + cons


def _gen_s_top_mon(d):
    for x, y, z in _triples(d):
        base = (_not_lstrict(d, x, y) + _not_lstrict(d, x, z)
                + _not_lstrict(d, y, z))
        for cons in _wstrict(d, 1 << x | 1 << z, 1 << y | 1 << z):
            yield base + cons


def _gen_s_bot_mon(d):
    for x, y, z in _triples(d):
        base = (_not_lstrict(d, y, z) + _not_lstrict(d, x, y)
                + _not_lstrict(d, x, z))
        for cons in _wstrict(d, 1 << x | 1 << y, 1 << x | 1 << z):
            yield base + cons


def _gen_even_ext(d):
    for a in d.sets():
        if popcount(a) % 2:
            continue
        for x, y in itertools.permutations(d.non_members(a), 2):
            ax, ay = a | 1 << x, a | 1 << y
            axy, xy = a | 1 << x | 1 << y, 1 << x | 1 << y
            base = [-d.var_w(ax, 1 << x), -d.var_w(1 << x, ax),
                    -d.var_w(ay, 1 << y), -d.var_w(1 << y, ay)]
            yield base + [d.var_w(axy, xy)]
            yield base + [d.var_w(xy, axy)]


def _gen_mc(d):
    for a, b in itertools.product(d.sets(), repeat=2):
        yield [-d.var_w(a, b), d.var_w(a | b, b)]


GENERATORS = {
    'LIN_E': _gen_lin_e, 'REFL_S': _gen_refl_s, 'COMPL_S': _gen_compl_s,
    'TRANS_S': _gen_trans_s, 'EXT': _gen_ext, 'SDOM': _gen_sdom,
    'GF1': _gen_gf1, 'GF2': _gen_gf2, 'IND': _gen_ind,
    'STRICT_IND': _gen_strict_ind, 'SUA_V': _gen_sua_v, 'SUA_P': _gen_sua_p,
    'S_TOP_MON': _gen_s_top_mon, 'S_BOT_MON': _gen_s_bot_mon,
    'TOP_IND': _gen_top_ind, 'BOT_IND': _gen_bot_ind,
    'DIS_IND': _gen_dis_ind, 'INT_IND': _gen_int_ind,
    'EVEN_EXT': _gen_even_ext, 'MC': _gen_mc,
}


@functools.lru_cache(maxsize=None)
def clauses_for(axiom, n):
    """Ground one catalog axiom over an ``n``-element domain.

    Args:
        axiom (:obj:`str`): Axiom identifier or alias.
        n (:obj:`int`): The domain size.

    Returns:
        :obj:`Cnf`: The axiom's quantifier expansion, declared over all
        ``l``/``w`` variables of the domain.

    """
    axiom = axiom_id(axiom)
    domain = Domain(n)
    return Cnf(domain.num_vars, GENERATORS[axiom](domain))


def instance_cnf(instance):
    """Conjoin the generators of every axiom in a problem instance.

    Args:
        instance (:obj:`ProblemInstance`): The instance to encode.

    Returns:
        :obj:`Cnf`: Clauses in catalog order over a shared numbering.

    """
    return Cnf.concat([clauses_for(axiom, instance.n)
                       for axiom in instance.axioms],
                      instance.domain.num_vars)


def clause_count(axiom, n):
    """:obj:`int`: The number of clauses :obj:`clauses_for` emits."""
    axiom = axiom_id(axiom)
    sets = 2 ** n - 1
    # Ordered pairs of nonempty sets avoiding ``k`` fixed elements.
    outside = (2 ** (n - 1) - 1) ** 2
    counts = {
        'LIN_E': n + 2 * n * (n - 1) + n ** 3,
        'REFL_S': sets,
        'COMPL_S': sets * (sets - 1),
        'TRANS_S': sets ** 3,
        'EXT': 2 * n * n,
        'SDOM': 4 * n * n,
        'GF1': 2 * n * sets,
        'GF2': 2 * n * sets,
        'IND': n * outside,
        'STRICT_IND': 2 * n * outside,
        'SUA_V': 2 * n ** 3,
        'SUA_P': 2 * n ** 3,
        'S_TOP_MON': 2 * n ** 3,
        'S_BOT_MON': 2 * n ** 3,
        'TOP_IND': n * outside,
        'BOT_IND': n * outside,
        'DIS_IND': n * (3 ** (n - 1) - 2 * 2 ** (n - 1) + 1),
        'INT_IND': (n * (n - 1) * (2 ** (n - 2) - 1) ** 2 if n >= 2 else 0),
        'EVEN_EXT': 2 * sum(math.comb(n, k) * (n - k) * (n - k - 1)
                            for k in range(2, n + 1, 2)),
        'MC': sets * sets,
    }
    return counts[axiom]


# Rough in-memory cost of one clause and one literal inside the solver.
_BYTES_PER_CLAUSE = 120
_BYTES_PER_LITERAL = 40


def _clause_width(axiom, n):
    widths = {'LIN_E': 3, 'REFL_S': 1, 'COMPL_S': 2, 'TRANS_S': 3, 'EXT': 2,
              'SDOM': 3, 'IND': 3, 'STRICT_IND': 3, 'SUA_V': 5, 'SUA_P': 5,
              'S_TOP_MON': 7, 'S_BOT_MON': 7, 'DIS_IND': 3, 'EVEN_EXT': 5,
              'MC': 2}
    return widths.get(axiom, n + 3)


def estimate_memory(instance):
    """Estimate the memory the built-in solver needs for an instance.

    Note:
        This is an order-of-magnitude estimate from closed-form clause counts;
        nothing is generated.

    Args:
        instance (:obj:`ProblemInstance`): The instance to size.

    Returns:
        :obj:`bitmath.Bitmath`: The estimate, at its best prefix.

    """
    total = 0
    for axiom in instance.axioms:
        count = clause_count(axiom, instance.n)
        total += count * (_BYTES_PER_CLAUSE + _BYTES_PER_LITERAL
                          * _clause_width(axiom, instance.n))
    total += instance.domain.num_vars * 2 * _BYTES_PER_CLAUSE
    return bitmath.Byte(total).best_prefix()


# -- direct evaluation --------------------------------------------------------


def _setup(order, relation):
    n = order.n
    lge = order.matrix
    wge = relation.matrix

    def lst(x, y):
        return lge[x][y] and not lge[y][x]

    def wst(a, b):
        return wge[a][b] and not wge[b][a]

    return n, range(n), range(1, 2 ** n), lge, wge, lst, wst


def _holds_lin_e(order, relation):
    return order.is_linear


def _holds_refl_s(order, relation):
    _, _, sets, _, wge, _, _ = _setup(order, relation)
    return all(wge[a][a] for a in sets)


def _holds_compl_s(order, relation):
    _, _, sets, _, wge, _, _ = _setup(order, relation)
    return all(wge[a][b] or wge[b][a]
               for a in sets for b in sets if a != b)


def _holds_trans_s(order, relation):
    _, _, sets, _, wge, _, _ = _setup(order, relation)
    for a in sets:
        row = wge[a]
        for b in sets:
            if row[b]:
                nxt = wge[b]
                if any(nxt[c] and not row[c] for c in sets):
                    return False
    return True


def _holds_ext(order, relation):
    _, elements, _, lge, wge, _, _ = _setup(order, relation)
    return all(lge[x][y] == wge[1 << x][1 << y]
               for x in elements for y in elements)


def _holds_sdom(order, relation):
    _, elements, _, _, _, lst, wst = _setup(order, relation)
    for x in elements:
        for y in elements:
            if lst(x, y):
                pair = 1 << x | 1 << y
                if not (wst(1 << x, pair) and wst(pair, 1 << y)):
                    return False
    return True


def _holds_gf(order, relation, better):
    _, elements, sets, _, _, lst, wst = _setup(order, relation)
    for a in sets:
        members = order_members(a, order.n)
        for x in elements:
            if better:
                if all(lst(x, m) for m in members) \
                        and not wst(a | 1 << x, a):
                    return False
            elif all(lst(m, x) for m in members) \
                    and not wst(a, a | 1 << x):
                return False
    return True


def order_members(a, n):
    """:obj:`list` of :obj:`int`: Element codes of set ``a`` in a domain of
    size ``n``."""
    return [x for x in range(n) if a >> x & 1]


def _holds_independence(order, relation, strict=False, side=None,
                        disjoint=False):
    n, elements, sets, _, wge, _, wst = _setup(order, relation)
    for x in elements:
        bit = 1 << x
        for a in sets:
            if a & bit:
                continue
            for b in sets:
                if b & bit or (disjoint and a & b):
                    continue
                if not wst(a, b):
                    continue
                if side and not side(x, order_members(a | b, n)):
                    continue
                if strict:
                    if not wst(a | bit, b | bit):
                        return False
                elif not wge[a | bit][b | bit]:
                    return False
    return True


def _holds_ind(order, relation):
    return _holds_independence(order, relation)


def _holds_strict_ind(order, relation):
    return _holds_independence(order, relation, strict=True)


def _holds_top_ind(order, relation):
    lge = order.matrix
    return _holds_independence(
        order, relation,
        side=lambda x, ys: all(lge[x][y] and not lge[y][x] for y in ys))


def _holds_bot_ind(order, relation):
    lge = order.matrix
    return _holds_independence(
        order, relation,
        side=lambda x, ys: all(lge[y][x] and not lge[x][y] for y in ys))


def _holds_dis_ind(order, relation):
    return _holds_independence(order, relation, disjoint=True)


def _holds_int_ind(order, relation):
    n, elements, sets, _, wge, lst, wst = _setup(order, relation)
    for x, y in itertools.permutations(elements, 2):
        both = 1 << x | 1 << y
        for a in sets:
            if a & both:
                continue
            for b in sets:
                if b & both or not wst(a, b):
                    continue
                if all(lst(x, z) and lst(z, y)
                       for z in order_members(a | b, n)) \
                        and not wge[a | both][b | both]:
                    return False
    return True


def _holds_sua(order, relation, aversion):
    _, elements, _, _, _, lst, wst = _setup(order, relation)
    for x, y, z in itertools.product(elements, repeat=3):
        if lst(x, y) and lst(y, z):
            single, pair = 1 << y, 1 << x | 1 << z
            if aversion and not wst(single, pair):
                return False
            if not aversion and not wst(pair, single):
                return False
    return True


def _holds_sua_v(order, relation):
    return _holds_sua(order, relation, aversion=True)


def _holds_sua_p(order, relation):
    return _holds_sua(order, relation, aversion=False)


def _holds_s_top_mon(order, relation):
    _, elements, _, _, _, lst, wst = _setup(order, relation)
    for x, y, z in itertools.product(elements, repeat=3):
        if lst(x, y) and lst(x, z) and lst(y, z) \
                and not wst(1 << x | 1 << z, 1 << y | 1 << z):
            return False
    return True


def _holds_s_bot_mon(order, relation):
    _, elements, _, _, _, lst, wst = _setup(order, relation)
    for x, y, z in itertools.product(elements, repeat=3):
        if lst(y, z) and lst(x, y) and lst(x, z) \
                and not wst(1 << x | 1 << y, 1 << x | 1 << z):
            return False
    return True


def _holds_even_ext(order, relation):
    n, _, sets, _, wge, _, _ = _setup(order, relation)

    def same(a, b):
        return wge[a][b] and wge[b][a]

    for a in sets:
        if popcount(a) % 2:
            continue
        rest = [x for x in range(n) if not a >> x & 1]
        for x, y in itertools.permutations(rest, 2):
            bx, by = 1 << x, 1 << y
            if same(a | bx, bx) and same(a | by, by) \
                    and not same(a | bx | by, bx | by):
                return False
    return True


def _holds_mc(order, relation):
    _, _, sets, _, wge, _, _ = _setup(order, relation)
    return all(wge[a | b][b] for a in sets for b in sets if wge[a][b])


EVALUATORS = {
    'LIN_E': _holds_lin_e, 'REFL_S': _holds_refl_s,
    'COMPL_S': _holds_compl_s, 'TRANS_S': _holds_trans_s, 'EXT': _holds_ext,
    'SDOM': _holds_sdom,
    'GF1': lambda order, relation: _holds_gf(order, relation, better=True),
    'GF2': lambda order, relation: _holds_gf(order, relation, better=False),
    'IND': _holds_ind, 'STRICT_IND': _holds_strict_ind,
    'SUA_V': _holds_sua_v, 'SUA_P': _holds_sua_p,
    'S_TOP_MON': _holds_s_top_mon, 'S_BOT_MON': _holds_s_bot_mon,
    'TOP_IND': _holds_top_ind, 'BOT_IND': _holds_bot_ind,
    'DIS_IND': _holds_dis_ind, 'INT_IND': _holds_int_ind,
    'EVEN_EXT': _holds_even_ext, 'MC': _holds_mc,
}


def holds(axiom, order, relation):
    """Evaluate a catalog axiom directly on a pair of relations.

    Args:
        axiom (:obj:`str`): Axiom identifier or alias.
        order (:obj:`ElementOrder`): The element relation.
        relation (:obj:`SetRelation`): The set relation, same domain size.

    Returns:
        :obj:`bool`: True iff the axiom holds.

    Raises:
        :obj:`DomainError`: If the relations disagree on the domain size.

    """
    if order.n != relation.n:
        raise DomainError('element order has n={} but set relation has n={}'
                          .format(order.n, relation.n))
    return EVALUATORS[axiom_id(axiom)](order, relation)


def holds_all(axioms, order, relation):
    """:obj:`bool`: True iff every axiom in ``axioms`` holds."""
    return all(holds(axiom, order, relation) for axiom in axioms)


def holds_mask(order, relation):
    """:obj:`AxiomSet`: The catalog axioms that hold for a pair."""
    mask = 0
    for index, axiom in enumerate(AXIOMS):
        if EVALUATORS[axiom](order, relation):
            mask |= 1 << index
    return AxiomSet(mask)


def minmax_order(order):
    """Rank sets by their worst element, then by their best element.

    ``A >= B`` iff ``min(A)`` is strictly better than ``min(B)``, or both
    minima coincide and ``max(A)`` is at least as good as ``max(B)``.

    Args:
        order (:obj:`ElementOrder`): A linear element order.

    Returns:
        :obj:`SetRelation`: A weak order on the nonempty subsets.

    Raises:
        :obj:`DecodeError`: If ``order`` is not linear.

    """
    ranking = order.ranking()
    position = {x: index for index, x in enumerate(ranking)}
    lows, highs = {}, {}
    for a in range(1, 2 ** order.n):
        members = [position[x] for x in order_members(a, order.n)]
        lows[a], highs[a] = max(members), min(members)

    def geq(a, b):
        if lows[a] != lows[b]:
            return lows[a] < lows[b]
        return highs[a] <= highs[b]

    return SetRelation.from_function(order.n, geq)


def parse_chain(text):
    """Read a set ranking written as a chain of digit-strings.

    ``"1 > 12 ~ 2 > 3"`` ranks ``{x1}`` first, then ``{x1, x2}`` and ``{x2}``
    tied, then ``{x3}``. Digits name elements from 1.

    Returns:
        :obj:`list` of :obj:`list` of :obj:`int`: Tiers of set codes, best
        first.

    """
    tiers = []
    for tier in text.split('>'):
        tiers.append([sum(1 << (int(digit) - 1) for digit in item.strip())
                      for item in tier.split('~')])
    return tiers


_FIXTURE_CHAINS = (
    ('strict-cardinality',
     '1 > 2 > 3 > 4 > 12 > 13 > 23 > 14 > 24 > 34 > 123 > 124 > 134 > 234'
     ' > 1234'),
    ('dominance-without-independence',
     '1 > 12 > 2 > 13 > 23 > 3 > 123 > 14 > 24 > 124 > 34 > 4 > 134 > 234'
     ' > 1234'),
    ('without-uncertainty-aversion',
     '1 > 12 > 13 ~ 123 > 2 > 23 > 3 > 14 ~ 124 ~ 134 ~ 1234 > 24 ~ 234'
     ' > 34 > 4'),
    ('without-top-monotonicity',
     '1 > 12 > 2 > 13 ~ 123 > 23 > 3 > 14 ~ 134 ~ 24 ~ 124 ~ 234 ~ 1234'
     ' > 34 > 4'),
)


def fixture_witnesses():
    """The four weak orders over four elements that separate simple
    dominance, independence, uncertainty aversion and top monotonicity.

    Each fixture satisfies exactly three of ``SDOM``, ``IND``, ``SUA_V`` and
    ``S_TOP_MON`` under the canonical element order ``x1 > x2 > x3 > x4``.

    Returns:
        :obj:`list` of :obj:`tuple`: ``(name, ElementOrder, SetRelation)``.

    """
    order = ElementOrder.canonical(4)
    return [(name, order, SetRelation.from_tiers(4, parse_chain(chain)))
            for name, chain in _FIXTURE_CHAINS]
