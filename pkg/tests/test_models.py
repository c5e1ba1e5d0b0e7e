"""Unit tests for rankset.models"""

import pytest

from rankset.errors import DecodeError, DomainError
from rankset.models import (Cnf, Domain, ElementOrder, SetRelation, bits,
                            decode_model, encode_model, popcount)


@pytest.fixture
def domain3():
    """Return the three element domain."""
    return Domain(3)


@pytest.fixture
def cardinality_relation():
    """Return the weak order on three elements ranking smaller sets first."""
    return SetRelation.from_function(
        3, lambda a, b: popcount(a) <= popcount(b))


class TestBits:
    """Test the bit helpers."""

    def test_popcount(self):
        """Ensure set bits are counted."""
        assert popcount(0) == 0
        assert popcount(0b1011) == 3

    def test_bits(self):
        """Ensure set bit indexes come back ascending."""
        assert bits(0b10110) == [1, 2, 4]
        assert bits(0) == []


class TestDomain:
    """Test the Domain class."""

    @pytest.mark.parametrize('n', [0, -1, 9])
    def test_out_of_bounds(self, n):
        """Ensure sizes outside 1..MAX_SIZE are rejected."""
        with pytest.raises(DomainError):
            Domain(n)

    def test_custom_bound(self):
        """Ensure a smaller maximum size is honoured."""
        with pytest.raises(DomainError):
            Domain(5, max_size=4)

    def test_counts(self, domain3):
        """Ensure the set and variable counts follow the layout."""
        assert domain3.num_sets == 7
        assert domain3.num_l_vars == 9
        assert domain3.num_vars == 9 + 49
        assert list(domain3.sets()) == list(range(1, 8))

    def test_size_six_variables(self):
        """Ensure six elements need exactly 4005 variables."""
        assert Domain(6).num_vars == 4005

    def test_layout_is_bijective(self, domain3):
        """Ensure every variable id names exactly one relation entry."""
        seen = set()
        for x in domain3.elements():
            for y in domain3.elements():
                var = domain3.var_l(x, y)
                assert domain3.describe_var(var) == ('l', x, y)
                seen.add(var)
        for a in domain3.sets():
            for b in domain3.sets():
                var = domain3.var_w(a, b)
                assert domain3.describe_var(var) == ('w', a, b)
                seen.add(var)
        assert seen == set(range(1, domain3.num_vars + 1))

    def test_describe_out_of_range(self, domain3):
        """Ensure ids outside the layout are rejected."""
        with pytest.raises(DomainError):
            domain3.describe_var(domain3.num_vars + 1)

    def test_checks(self, domain3):
        """Ensure invalid element and set codes are rejected."""
        with pytest.raises(DomainError):
            domain3.check_element(3)
        with pytest.raises(DomainError):
            domain3.check_set(0)
        with pytest.raises(DomainError):
            domain3.singleton(5)

    def test_signature(self, domain3):
        """Ensure the set functions and predicates behave on small sets."""
        assert domain3.union(0b001, 0b100) == 0b101
        assert domain3.singleton(2) == 0b100
        assert domain3.replace_in_by(0, 0b011, 2) == 0b110
        assert domain3.replace_in_by(2, 0b011, 2) == 0b111
        assert domain3.members(0b101) == [0, 2]
        assert domain3.non_members(0b101) == [1]
        assert domain3.member(1, 0b010)
        assert domain3.subseteq(0b001, 0b011)
        assert not domain3.subseteq(0b100, 0b011)
        assert domain3.disjoint(0b100, 0b011)
        assert domain3.evencard(0b011)
        assert domain3.equalcard(0b011, 0b110)

    def test_set_predicates(self, domain3):
        """Ensure the predicate bundle matches the individual checks."""
        assert domain3.set_predicates(0b001, 0b011) == {
            'subseteq': True, 'disjoint': False, 'evencard': False,
            'equalcard': False, 'members': [0]}

    def test_format_set(self, domain3):
        """Ensure sets render with elements numbered from 1."""
        assert domain3.format_set(0b101) == '{x1, x3}'


class TestElementOrder:
    """Test the ElementOrder class."""

    def test_canonical(self):
        """Ensure code 0 is best in the canonical order."""
        order = ElementOrder.canonical(3)
        assert order.is_linear
        assert order.ranking() == [0, 1, 2]
        assert order.strict(0, 2)
        assert not order.strict(2, 0)

    def test_from_ranking(self):
        """Ensure an arbitrary ranking round trips."""
        assert ElementOrder.from_ranking([2, 0, 1]).ranking() == [2, 0, 1]

    def test_max_min(self):
        """Ensure best and worst members follow the ranking."""
        order = ElementOrder.from_ranking([2, 0, 1])
        assert order.max_of(0b011) == 0
        assert order.min_of(0b111) == 1

    def test_universal_is_not_linear(self):
        """Ensure the all-true relation cannot be ranked."""
        order = ElementOrder.universal(3)
        assert not order.is_linear
        with pytest.raises(DecodeError):
            order.ranking()
        with pytest.raises(DecodeError):
            order.max_of(0b011)


class TestSetRelation:
    """Test the SetRelation class."""

    def test_weak_order(self, cardinality_relation):
        """Ensure a cardinality ranking is a weak order with three tiers."""
        assert cardinality_relation.is_weak_order
        assert cardinality_relation.tiers() == [[1, 2, 4], [3, 5, 6], [7]]
        assert cardinality_relation.indifferent(1, 4)
        assert cardinality_relation.strict(1, 3)

    def test_from_tiers(self, cardinality_relation):
        """Ensure tiers rebuild the same relation."""
        rebuilt = SetRelation.from_tiers(3, cardinality_relation.tiers())
        assert rebuilt == cardinality_relation

    def test_universal_indifference(self):
        """Ensure universal indifference is a single tier."""
        relation = SetRelation.universal_indifference(2)
        assert relation.tiers() == [[1, 2, 3]]

    def test_not_weak_order(self):
        """Ensure an incomplete relation has no tiers."""
        relation = SetRelation.from_function(2, lambda a, b: a == b)
        assert not relation.is_weak_order
        with pytest.raises(DecodeError):
            relation.tiers()


class TestCnf:
    """Test the Cnf class."""

    def test_rejects_bad_literals(self):
        """Ensure zero and undeclared literals are rejected."""
        with pytest.raises(DomainError):
            Cnf(2, [[1, 0]])
        with pytest.raises(DomainError):
            Cnf(2, [[3]])

    def test_merges_duplicates(self):
        """Ensure repeated literals are merged in order."""
        assert Cnf(2, [[1, 1, -2, 1]]).clauses == ((1, -2),)

    def test_simplified(self):
        """Ensure only tautologies are dropped."""
        cnf = Cnf(2, [[1, -1], [2], [1, 2, -2]])
        assert cnf.simplified().clauses == ((2,),)
        assert len(cnf) == 3

    def test_extended(self):
        """Ensure extra clauses and variables are appended."""
        cnf = Cnf(2, [[1]]).extended([[-3]], num_vars=3)
        assert cnf.num_vars == 3
        assert cnf.base_vars == 2
        assert cnf.clauses == ((1,), (-3,))

    def test_concat(self):
        """Ensure formulas conjoin over a shared numbering."""
        joined = Cnf.concat([Cnf(1, [[1]]), Cnf(2, [[-2]])], 2)
        assert joined.clauses == ((1,), (-2,))

    def test_satisfied_by(self):
        """Ensure models are checked clause by clause."""
        cnf = Cnf(2, [[1, 2], [-1]])
        assert cnf.satisfied_by([False, True])
        assert not cnf.satisfied_by([True, True])

    def test_empty_clause(self):
        """Ensure the empty clause is never satisfied."""
        assert not Cnf(1, [[]]).satisfied_by([True])
        assert Cnf(1).satisfied_by([False])


class TestModels:
    """Test encode_model and decode_model."""

    def test_round_trip(self, domain3, cardinality_relation):
        """Ensure decoding an encoded pair returns the pair."""
        order = ElementOrder.from_ranking([1, 2, 0])
        model = encode_model(order, cardinality_relation, domain3)
        assert len(model) == domain3.num_vars
        assert decode_model(model, domain3) == (order, cardinality_relation)

    def test_dict_assignment(self, domain3, cardinality_relation):
        """Ensure mappings from variable id are accepted."""
        order = ElementOrder.canonical(3)
        model = encode_model(order, cardinality_relation, domain3)
        assignment = {var: value for var, value in enumerate(model, 1)}
        assert decode_model(assignment, domain3)[0] == order

    def test_partial(self, domain3):
        """Ensure partial assignments are rejected."""
        with pytest.raises(DecodeError):
            decode_model([True] * (domain3.num_vars - 1), domain3)
        with pytest.raises(DecodeError):
            decode_model({1: True}, domain3)
