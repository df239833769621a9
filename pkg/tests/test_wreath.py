from collections import Counter
from fractions import Fraction
from math import factorial

import pytest

from combinatorics.distributions import plancherel
from combinatorics.partitions import dimension, enumerate_partitions
from utils.errors import PartitionError
from wreath.classes import (
    SubgroupSpec, WreathClass, classify_element, involution_class, involution_element,
    wreath_classes, wreath_elements, wreath_order,
)
from wreath.distributions import (
    collision_bound, collision_probability, factorized_homogeneous_mass, hidden_subgroup_mass,
    leaf_distribution, leaf_homogeneous_probability, wreath_kron_multiplicity,
    wreath_natural_distribution, wreath_plancherel,
)
from wreath.irreps import (
    WreathIrrep, involution_character, wreath_character, wreath_character_table, wreath_irreps,
)

from conftest import P


def test_orders():
    assert wreath_order(2) == 8
    assert wreath_order(3) == 72
    assert len(wreath_elements(2)) == 8
    assert wreath_elements(3)[0].is_Identity


@pytest.mark.parametrize("n", range(1, 5))
def test_classes_and_irreps_match(n):
    classes = wreath_classes(n)
    assert len(classes) == len(wreath_irreps(n))
    assert sum(cls.size for cls in classes) == wreath_order(n)
    assert sum(sigma.dimension ** 2 for sigma in wreath_irreps(n)) == wreath_order(n)


@pytest.mark.parametrize("n", [2, 3])
def test_element_classification_matches_class_sizes(n):
    counts = Counter(classify_element(x, n) for x in wreath_elements(n))
    assert counts == {cls: cls.size for cls in wreath_classes(n)}


def test_involution():
    m = involution_element(3)
    assert classify_element(m, 3) == involution_class(3)
    assert (m * m).is_Identity


@pytest.mark.parametrize("n", range(1, 5))
def test_character_table_orthogonality(n):
    table = wreath_character_table(n)
    table.check_orthogonality()
    table.check_class_sizes()
    table.check_dimensions()


def test_involution_character():
    lam = P("2+1")
    assert involution_character(WreathIrrep.homogeneous(lam, 1)) == dimension(lam)
    assert involution_character(WreathIrrep.homogeneous(lam, -1)) == -dimension(lam)
    assert involution_character(WreathIrrep.inhomogeneous(P("3"), lam)) == 0


def test_character_at_identity_is_dimension():
    identity = WreathClass.nonflip(P("1+1+1"), P("1+1+1"))
    for sigma in wreath_irreps(3):
        assert wreath_character(sigma, identity) == sigma.dimension


def test_irrep_canonical_form():
    assert WreathIrrep.inhomogeneous(P("2+1"), P("3")) == WreathIrrep.inhomogeneous(P("3"), P("2+1"))
    assert str(WreathIrrep.inhomogeneous(P("2+1"), P("3"))) == "{3,2+1}"
    assert str(WreathIrrep.homogeneous(P("2+1"), -1)) == "(2+1)-"
    with pytest.raises(PartitionError):
        WreathIrrep.inhomogeneous(P("2+1"), P("2+1"))


def test_irrep_json():
    sigma = WreathIrrep.homogeneous(P("2+1"), -1)
    assert sigma.to_json() == {"kind": "hom", "a": "2+1", "sign": "-"}
    assert WreathIrrep.from_json({"kind": "inhom", "a": "2+1", "b": "3"}) == WreathIrrep.inhomogeneous(P("3"), P("2+1"))
    with pytest.raises(ValueError):
        WreathIrrep.from_json({"kind": "hom", "a": "2+1", "sign": "?"})


def test_class_parse():
    cls = WreathClass.parse("nonflip:1+1|2")
    assert cls == WreathClass.nonflip(P("2"), P("1+1"))
    assert str(WreathClass.parse("flip:2+1")) == "flip:2+1"


def test_leaf_homogeneous_mass_n3():
    assert wreath_plancherel(3).homogeneous_mass() == Fraction(1, 2)
    assert leaf_homogeneous_probability(3) == Fraction(1, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_missing_harmonics_leave_inhomogeneous_mass_unchanged(n):
    trivial = wreath_plancherel(n)
    for sigma in wreath_irreps(n):
        if not sigma.is_homogeneous:
            assert hidden_subgroup_mass(sigma) == trivial[sigma]


@pytest.mark.parametrize("n", range(1, 5))
def test_leaf_distributions_normalized(n):
    assert leaf_distribution(n, SubgroupSpec.TRIVIAL).total() == 1
    assert leaf_distribution(n, SubgroupSpec.ORDER_TWO).total() == 1


def test_order_two_homogeneous_leaf_mass():
    hidden = leaf_distribution(3, SubgroupSpec.ORDER_TWO)
    for lam in enumerate_partitions(3):
        d = dimension(lam)
        plus = hidden[WreathIrrep.homogeneous(lam, 1)]
        minus = hidden[WreathIrrep.homogeneous(lam, -1)]
        assert plus == Fraction(d ** 2 * (d ** 2 + d), 2 * factorial(3) ** 2)
        assert minus == Fraction(d ** 2 * (d ** 2 - d), 2 * factorial(3) ** 2)
        assert plus + minus == plancherel(3)[lam] ** 2
        if d == 1:
            assert minus == 0
    assert hidden[WreathIrrep.homogeneous(P("2+1"), -1)] == Fraction(1, 9)


def test_n1_has_only_homogeneous_irreps():
    assert all(sigma.is_homogeneous for sigma in wreath_irreps(1))
    assert leaf_homogeneous_probability(1) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_wreath_natural_distributions_normalized(n):
    irreps = wreath_irreps(n)
    for i, first in enumerate(irreps):
        for second in irreps[i:]:
            assert wreath_natural_distribution(first, second).total() == 1


def test_trivial_irrep_is_tensor_identity():
    sigma = WreathIrrep.inhomogeneous(P("3"), P("2+1"))
    distribution = wreath_natural_distribution(WreathIrrep.trivial(3), sigma)
    assert distribution.probs == {sigma: Fraction(1)}
    assert wreath_kron_multiplicity(sigma, WreathIrrep.trivial(3), sigma) == 1


def test_collision_probability():
    lam = P("2+1")
    assert collision_probability(lam, lam, lam, lam) == Fraction(3, 8)


def test_collision_bound_dominates():
    shapes = enumerate_partitions(4)
    for lam in shapes:
        for mu in shapes:
            p = collision_probability(lam, mu, mu, lam)
            assert float(p) <= float(collision_bound(lam, mu, mu, lam)) * (1 + 1e-9)


def test_factorized_homogeneous_mass_matches_natural_distribution():
    first = WreathIrrep.inhomogeneous(P("3"), P("2+1"))
    second = WreathIrrep.inhomogeneous(P("2+1"), P("1+1+1"))
    exact = wreath_natural_distribution(first, second).homogeneous_mass()
    assert factorized_homogeneous_mass(first, second) == exact


@pytest.mark.parametrize("n", range(2, 6))
def test_homogeneous_mass_of_inhomogeneous_pairs(n):
    inhom = [sigma for sigma in wreath_irreps(n) if not sigma.is_homogeneous]
    for i, first in enumerate(inhom):
        for second in inhom[i:]:
            distribution = wreath_natural_distribution(first, second)
            mass = distribution.homogeneous_mass()
            assert mass == factorized_homogeneous_mass(first, second)
            assert mass <= max(
                collision_probability(first.a, second.a, first.b, second.b),
                collision_probability(first.a, second.b, first.b, second.a),
            )
            for lam in enumerate_partitions(n):
                plus = distribution[WreathIrrep.homogeneous(lam, 1)]
                assert plus == distribution[WreathIrrep.homogeneous(lam, -1)]
