"""Unit tests for rankset.axioms"""

import random

import bitmath
import pytest

from rankset.axioms import (AXIOMS, AxiomSet, ProblemInstance, axiom_id,
                            clause_count, clauses_for, estimate_memory,
                            fixture_witnesses, holds, holds_all, holds_mask,
                            minmax_order, parse_chain)
from rankset.errors import DecodeError, DomainError
from rankset.models import (Domain, ElementOrder, SetRelation, encode_model,
                            popcount)

FIXTURE_FAILURES = {
    'strict-cardinality': 'SDOM',
    'dominance-without-independence': 'IND',
    'without-uncertainty-aversion': 'SUA_V',
    'without-top-monotonicity': 'S_TOP_MON',
}


def random_pair(rng, n, weak=False):
    """Return a random element relation and set relation on ``n``
    elements."""
    order = ElementOrder(n, [[rng.random() < 0.6 for _ in range(n)]
                             for _ in range(n)])
    if weak:
        ranks = {a: rng.randrange(4) for a in range(1, 2 ** n)}
        return order, SetRelation.from_ranks(n, ranks)
    return order, SetRelation.from_function(n, lambda a, b:
                                            rng.random() < 0.7)


@pytest.fixture
def fixtures():
    """Return the four separating weak orders by name."""
    return {name: (order, relation)
            for name, order, relation in fixture_witnesses()}


class TestAxiomNames:
    """Test axiom_id and AxiomSet."""

    @pytest.mark.parametrize('alias, axiom', [
        ('SUAv', 'SUA_V'), ('sua_v', 'SUA_V'), ('LINε', 'LIN_E'),
        ('lin-e', 'LIN_E'), ('TRANSσ', 'TRANS_S'), ('STopMon', 'S_TOP_MON'),
        ('strictIND', 'STRICT_IND'), ('evenExt', 'EVEN_EXT'), ('mc', 'MC'),
    ])
    def test_aliases(self, alias, axiom):
        """Ensure table spellings resolve case-insensitively."""
        assert axiom_id(alias) == axiom

    def test_unknown(self):
        """Ensure unknown names raise KeyError."""
        with pytest.raises(KeyError):
            axiom_id('NOPE')

    def test_catalog_order(self):
        """Ensure iteration follows catalog order regardless of input
        order."""
        axioms = AxiomSet.from_names(['SUAp', 'LIN_E', 'SUA_V'])
        assert axioms.names() == ['LIN_E', 'SUA_V', 'SUA_P']
        assert list(axioms) == axioms.names()
        assert len(axioms) == 3

    def test_all(self):
        """Ensure the full catalog holds twenty axioms."""
        assert len(AxiomSet.all()) == 20
        assert AxiomSet.all().names() == list(AXIOMS)

    def test_set_operations(self):
        """Ensure membership, union, inclusion and removal work."""
        small = AxiomSet.from_names(['IND'])
        large = AxiomSet.from_names(['IND', 'MC'])
        assert 'ind' in large
        assert 'GF1' not in large
        assert small <= large
        assert not large <= small
        assert small | AxiomSet.from_names(['MC']) == large
        assert large.without('MC') == small

    def test_mask_range(self):
        """Ensure masks beyond the catalog are rejected."""
        with pytest.raises(DomainError):
            AxiomSet(2 ** 20)


class TestProblemInstance:
    """Test the ProblemInstance class."""

    @pytest.mark.parametrize('n', [1, 9])
    def test_size_bounds(self, n):
        """Ensure instance sizes stay within MIN_SIZE..MAX_SIZE."""
        with pytest.raises(DomainError):
            ProblemInstance(AxiomSet.all(), n)

    def test_cnf_is_concatenation(self):
        """Ensure an instance conjoins its generators."""
        axioms = AxiomSet.from_names(['LIN_E', 'SUA_V', 'SUA_P'])
        cnf = ProblemInstance(axioms, 3).cnf()
        assert cnf.num_vars == Domain(3).num_vars
        assert len(cnf) == sum(clause_count(axiom, 3) for axiom in axioms)

    def test_memory_estimate(self):
        """Ensure memory estimates are positive bitmath sizes that grow with
        the domain."""
        small = estimate_memory(ProblemInstance(AxiomSet.all(), 3))
        large = estimate_memory(ProblemInstance(AxiomSet.all(), 5))
        assert isinstance(small, bitmath.Bitmath)
        assert bitmath.Byte(0) < small < large


class TestGenerators:
    """Test the clause generators."""

    @pytest.mark.parametrize('n', [2, 3, 4])
    @pytest.mark.parametrize('axiom', AXIOMS)
    def test_counts(self, axiom, n):
        """Ensure generators emit exactly the closed-form clause count."""
        assert len(clauses_for(axiom, n)) == clause_count(axiom, n)

    @pytest.mark.parametrize('n', [2, 3, 4, 5])
    def test_transitivity_count(self, n):
        """Ensure transitivity has one clause per triple of sets."""
        assert clause_count('TRANS_S', n) == (2 ** n - 1) ** 3

    def test_declared_variables(self):
        """Ensure every generator is declared over the whole layout."""
        for axiom in AXIOMS:
            assert clauses_for(axiom, 3).num_vars == Domain(3).num_vars

    @pytest.mark.parametrize('axiom', AXIOMS)
    def test_agree_with_evaluators(self, axiom):
        """Ensure clause satisfaction matches direct evaluation on random
        relations."""
        rng = random.Random(axiom)
        domain = Domain(3)
        cnf = clauses_for(axiom, 3)
        for trial in range(40):
            order, relation = random_pair(rng, 3, weak=trial % 2 == 0)
            if trial % 4 == 0:
                order = ElementOrder.from_ranking(rng.sample(range(3), 3))
            model = encode_model(order, relation, domain)
            assert cnf.satisfied_by(model) == holds(axiom, order, relation)

    def test_agree_on_fixtures(self, fixtures):
        """Ensure clause satisfaction matches evaluation on the fixtures."""
        domain = Domain(4)
        for order, relation in fixtures.values():
            model = encode_model(order, relation, domain)
            for axiom in AXIOMS:
                assert clauses_for(axiom, 4).satisfied_by(model) == \
                    holds(axiom, order, relation)


class TestEvaluators:
    """Test holds and the witness fixtures."""

    def test_universal_relations(self):
        """Ensure the all-true relations satisfy everything but LIN_E."""
        order = ElementOrder.universal(3)
        relation = SetRelation.universal_indifference(3)
        assert holds_mask(order, relation) == \
            AxiomSet.all().without('LIN_E')

    def test_size_mismatch(self):
        """Ensure relations on different domains are rejected."""
        with pytest.raises(DomainError):
            holds('IND', ElementOrder.canonical(3),
                  SetRelation.universal_indifference(2))

    def test_fixtures_are_weak_orders(self, fixtures):
        """Ensure every fixture is a weak order over a linear order."""
        assert sorted(fixtures) == sorted(FIXTURE_FAILURES)
        for order, relation in fixtures.values():
            assert order.is_linear
            assert relation.is_weak_order
            assert holds_all(['LIN_E', 'REFL_S', 'COMPL_S', 'TRANS_S'],
                             order, relation)

    @pytest.mark.parametrize('name', sorted(FIXTURE_FAILURES))
    def test_fixture_pattern(self, fixtures, name):
        """Ensure each fixture violates exactly its named axiom out of the
        four it separates."""
        order, relation = fixtures[name]
        for axiom in ('SDOM', 'IND', 'SUA_V', 'S_TOP_MON'):
            assert holds(axiom, order, relation) == \
                (axiom != FIXTURE_FAILURES[name])

    def test_minmax_violates_independence(self):
        """Ensure the min-max ranking is a weak order without IND."""
        relation = minmax_order(ElementOrder.canonical(4))
        assert relation.is_weak_order
        assert not holds('IND', ElementOrder.canonical(4), relation)

    def test_minmax_needs_linear_order(self):
        """Ensure the min-max ranking needs a ranking of the elements."""
        with pytest.raises(DecodeError):
            minmax_order(ElementOrder.universal(3))

    def test_minmax_ranks_by_worst_element(self):
        """Ensure sets with a better worst element come first."""
        relation = minmax_order(ElementOrder.canonical(3))
        assert relation.strict(0b011, 0b001 | 0b100)
        assert relation.strict(0b001 | 0b100, 0b100)
        assert relation.strict(0b001, 0b011)


class TestParseChain:
    """Test parse_chain."""

    def test_tiers(self):
        """Ensure digits name elements from 1 and ~ joins tiers."""
        assert parse_chain('1 > 12 ~ 2 > 3') == [[1], [3, 2], [4]]

    def test_fixture_chains_cover_all_sets(self, fixtures):
        """Ensure fixtures rank all fifteen sets."""
        for _, relation in fixtures.values():
            assert len([a for a in range(1, 16) if relation.geq(a, a)]) == 15
            assert all(popcount(a) for a in range(1, 16))
