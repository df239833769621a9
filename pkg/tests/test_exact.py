from fractions import Fraction
from math import factorial

import pytest

from combinatorics.partitions import dimension, enumerate_partitions
from sieve.class_algebra import ClassAlgebra, InvolutionOrbitAlgebra
from sieve.exact import (
    compositional_probability, conditional_label_distribution, enumerate_labelings,
    inhomogeneous_equality_violations, legal_assignment_sum, single_leaf_check, transcript_probability,
    tree_value, tv_distance,
)
from sieve.forest import Forest, enumerate_forests
from utils.errors import BudgetExceeded, TranscriptFormatError, UnsupportedTarget
from wreath.classes import SubgroupSpec
from wreath.distributions import wreath_natural_distribution, wreath_plancherel
from wreath.irreps import WreathIrrep, wreath_irreps

from conftest import P

CHERRY = Forest.of_leaves(2).combine(0, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("subgroup", list(SubgroupSpec))
def test_single_leaf_matches_leaf_distribution(n, subgroup):
    assert single_leaf_check(n, subgroup) == []


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("subgroup", list(SubgroupSpec))
def test_cherry_normalization(n, subgroup):
    total = sum(transcript_probability(CHERRY, labels, subgroup) for labels in enumerate_labelings(CHERRY, n))
    assert total == 1


def test_normalization_over_all_small_forests_n2():
    for forest in enumerate_forests(3, 5):
        report = tv_distance(forest, 2)
        assert report.total_trivial == 1
        assert report.total_order_two == 1


def test_inhomogeneous_equality_n2():
    for forest in enumerate_forests(3, 5):
        assert inhomogeneous_equality_violations(forest, 2) == []


@pytest.mark.slow
def test_inhomogeneous_equality_n3():
    for forest in enumerate_forests(3, 5):
        assert inhomogeneous_equality_violations(forest, 3) == []


@pytest.mark.parametrize("n", [2, 3])
def test_single_leaf_tv(n):
    expected = Fraction(sum(dimension(s) ** 3 for s in enumerate_partitions(n)), 2 * factorial(n) ** 2)
    assert tv_distance(Forest.of_leaves(1), n).distance == expected


def test_single_leaf_tv_n2_value():
    assert tv_distance(Forest.of_leaves(1), 2).distance == Fraction(1, 4)


@pytest.mark.parametrize("n", [2, 3])
def test_compositional_path_agrees_with_class_dp(n):
    forest = Forest.of_leaves(3).combine(0, 1).combine(2, 3)
    for labels in enumerate_labelings(forest, n):
        assert compositional_probability(forest, labels) == transcript_probability(
            forest, labels, SubgroupSpec.TRIVIAL)


def test_trivial_conditional_is_natural_distribution():
    first = WreathIrrep.inhomogeneous(P("3"), P("2+1"))
    second = WreathIrrep.homogeneous(P("2+1"), 1)
    labels = (first, second)
    got = conditional_label_distribution(Forest.of_leaves(2), labels, 0, 1, SubgroupSpec.TRIVIAL)
    assert got == wreath_natural_distribution(first, second)


@pytest.mark.parametrize("n", [2, 3])
def test_order_two_conditional_matches_joint_probabilities(n):
    leaves = Forest.of_leaves(2)
    for first in wreath_irreps(n):
        for second in wreath_irreps(n):
            joint = transcript_probability(leaves, (first, second), SubgroupSpec.ORDER_TWO)
            if not joint:
                continue
            conditional = conditional_label_distribution(leaves, (first, second), 0, 1, SubgroupSpec.ORDER_TWO)
            assert conditional.total() == 1
            for tau, p in conditional.items():
                assert transcript_probability(CHERRY, (first, second, tau), SubgroupSpec.ORDER_TWO) == joint * p


def test_target_strings():
    labels = (WreathIrrep.trivial(2),)
    leaf = Forest.of_leaves(1)
    assert legal_assignment_sum(leaf, labels, "1") == wreath_plancherel(2)[labels[0]]
    assert legal_assignment_sum(leaf, labels, "1,m") == 2 * wreath_plancherel(2)[labels[0]]
    with pytest.raises(UnsupportedTarget):
        legal_assignment_sum(leaf, labels, "1,m,m2")


def test_label_count_checked():
    with pytest.raises(TranscriptFormatError):
        transcript_probability(CHERRY, (WreathIrrep.trivial(2),), SubgroupSpec.TRIVIAL)


def test_order_two_budget(restore_config):
    labels = (WreathIrrep.trivial(4),)
    with pytest.raises(BudgetExceeded) as info:
        transcript_probability(Forest.of_leaves(1), labels, SubgroupSpec.ORDER_TWO)
    assert info.value.budget == "max_exact_n"


def test_enumeration_budget(restore_config):
    restore_config.apply({"MAX_ENUMERATION_NODES": 2})
    with pytest.raises(BudgetExceeded):
        tv_distance(CHERRY, 2)


@pytest.mark.parametrize("algebra_type", [ClassAlgebra, InvolutionOrbitAlgebra])
def test_vector_cache_stays_bounded(algebra_type):
    algebra = algebra_type(2)
    algebra.vector_cache_limit = 4
    for forest in enumerate_forests(2, 3):
        for labels in enumerate_labelings(forest, 2):
            value = Fraction(1)
            for root in forest.roots:
                value *= tree_value(algebra, forest, labels, root)
            assert value == transcript_probability(forest, labels, algebra.target)
            assert algebra.vector_cache_size <= 4
    assert algebra.vector_cache_size == 4
