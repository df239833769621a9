"""
Exact transcript probabilities for a fixed forest topology.

For a tree the DP carries f_v(p) = sum_b d_v chi_v(p^-1 b) g_v(b) over prefix
states, where g_v is the target indicator at a leaf and the pointwise product
of the children's vectors at an internal node. The tree contributes
f_root(1) / |G|^k with k its node count.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from config.settings import config
from sieve.class_algebra import StateAlgebra, state_algebra
from sieve.forest import Forest
from utils.errors import BudgetExceeded, TranscriptFormatError, UnsupportedTarget
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec
from wreath.distributions import (
    WreathDistribution, leaf_distribution, wreath_natural_distribution, wreath_plancherel,
)
from wreath.irreps import wreath_irreps

logger = get_logger(__name__)

TARGETS = {"1": SubgroupSpec.TRIVIAL, "1,m": SubgroupSpec.ORDER_TWO}


def _labels_for(forest: Forest, labels) -> tuple:
    labels = tuple(labels)
    if len(labels) != forest.node_count or any(label is None for label in labels):
        raise TranscriptFormatError(f"Need a label for each of the {forest.node_count} nodes")
    sizes = {label.n for label in labels}
    if len(sizes) != 1:
        raise TranscriptFormatError(f"Labels mix different n: {sorted(sizes)}")
    return labels


def _labeled_shape(forest: Forest, labels: tuple, node: int):
    kids = forest.children[node]
    if not kids:
        return (labels[node],)
    left = _labeled_shape(forest, labels, kids[0])
    right = _labeled_shape(forest, labels, kids[1])
    return (labels[node],) + tuple(sorted((left, right), key=repr))


def _vector(algebra: StateAlgebra, forest: Forest, labels: tuple, node: int) -> tuple:
    key = _labeled_shape(forest, labels, node)
    cached = algebra.cached_vector(key)
    if cached is not None:
        return cached
    kids = forest.children[node]
    if kids:
        left = _vector(algebra, forest, labels, kids[0])
        right = _vector(algebra, forest, labels, kids[1])
        g = [a * b for a, b in zip(left, right)]
    else:
        g = algebra.leaf_vector
    result = tuple(sum(k * x for k, x in zip(row, g) if x) for row in algebra.transition(labels[node]))
    algebra.store_vector(key, result)
    return result


def tree_value(algebra: StateAlgebra, forest: Forest, labels: tuple, root: int) -> Fraction:
    size = len(forest.subtree(root))
    return Fraction(_vector(algebra, forest, labels, root)[algebra.identity_state], algebra.order ** size)


def legal_assignment_sum(forest: Forest, labels, target) -> Fraction:
    """
    (1/|G|^k) sum over assignments a of prod_i d_i chi_i(a_i), restricted to
    assignments whose root-to-leaf products all lie in the target set.
    """
    if isinstance(target, str):
        if target not in TARGETS:
            raise UnsupportedTarget(f"Unsupported target {target!r} (use '1' or '1,m')")
        target = TARGETS[target]
    labels = _labels_for(forest, labels)
    algebra = state_algebra(labels[0].n, target)
    value = Fraction(1)
    for root in forest.roots:
        value *= tree_value(algebra, forest, labels, root)
        if not value:
            break
    return value


def transcript_probability(forest: Forest, labels, subgroup: SubgroupSpec) -> Fraction:
    """P_T^H of a complete labeling: trivial assignments for H = 1, legal ones for H = {1, m}"""
    return legal_assignment_sum(forest, labels, subgroup)


def compositional_probability(forest: Forest, labels) -> Fraction:
    """Trivial-subgroup probability as Plancherel leaves times natural-distribution steps"""
    labels = _labels_for(forest, labels)
    plancherel_mass = wreath_plancherel(labels[0].n)
    value = Fraction(1)
    for node, kids in enumerate(forest.children):
        if kids:
            value *= wreath_natural_distribution(labels[kids[0]], labels[kids[1]])[labels[node]]
        else:
            value *= plancherel_mass[labels[node]]
    return value


def conditional_label_distribution(forest: Forest, labels, first: int, second: int,
                                   subgroup: SubgroupSpec) -> WreathDistribution:
    """Exact distribution of the label observed when roots first and second are combined"""
    labels = _labels_for(forest, labels)
    sigma1, sigma2 = labels[first], labels[second]
    if subgroup is SubgroupSpec.TRIVIAL:
        return wreath_natural_distribution(sigma1, sigma2)

    n = sigma1.n
    algebra = state_algebra(n, subgroup)
    left = _vector(algebra, forest, labels, first)
    right = _vector(algebra, forest, labels, second)
    identity = algebra.identity_state
    denominator = algebra.order * left[identity] * right[identity]
    if not denominator:
        raise TranscriptFormatError(f"Roots {first}, {second} carry a labeling of probability zero")
    g = [a * b for a, b in zip(left, right)]
    support = wreath_natural_distribution(sigma1, sigma2).support()
    probs = {}
    for tau in support:
        row = algebra.transition(tau)[identity]
        numerator = sum(k * x for k, x in zip(row, g) if x)
        if numerator:
            probs[tau] = Fraction(numerator, denominator)
    distribution = WreathDistribution(n, probs)
    if distribution.total() != 1:
        raise TranscriptFormatError(f"Conditional distribution sums to {distribution.total()}")
    return distribution


# enumeration ----------------------------------------------------------------

def enumerate_labelings(forest: Forest, n: int, supported_only: bool = True):
    """
    Complete labelings of a forest. With ``supported_only`` an internal label
    ranges over the irreps contained in its children's tensor product, which
    drops only labelings of probability zero under both hypotheses.
    """
    irreps = wreath_irreps(n)
    if not supported_only:
        yield from product(irreps, repeat=forest.node_count)
        return

    def extend(prefix: tuple):
        node = len(prefix)
        if node == forest.node_count:
            yield prefix
            return
        kids = forest.children[node]
        options = irreps if not kids else wreath_natural_distribution(prefix[kids[0]], prefix[kids[1]]).support()
        for sigma in options:
            yield from extend(prefix + (sigma,))

    yield from extend(())


def require_enumeration_budget(forest: Forest):
    if forest.node_count > config.MAX_ENUMERATION_NODES:
        logger.warning(
            f"Refusing to enumerate labelings of {forest.node_count} nodes "
            f"(MAX_ENUMERATION_NODES={config.MAX_ENUMERATION_NODES})"
        )
        raise BudgetExceeded("max_enumeration_nodes", forest.node_count, config.MAX_ENUMERATION_NODES)


@dataclass(frozen=True)
class TvReport:
    n: int
    forest: str
    distance: Fraction
    homogeneous_trivial: Fraction
    homogeneous_order_two: Fraction
    inhomogeneous_distance: Fraction
    total_trivial: Fraction
    total_order_two: Fraction
    labelings: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "forest": self.forest,
            "tv_distance": str(self.distance),
            "homogeneous_trivial": str(self.homogeneous_trivial),
            "homogeneous_order2": str(self.homogeneous_order_two),
            "inhomogeneous_distance": str(self.inhomogeneous_distance),
            "total_trivial": str(self.total_trivial),
            "total_order2": str(self.total_order_two),
            "labelings": self.labelings,
        }


def tv_distance(forest: Forest, n: int) -> TvReport:
    """Total variation distance between the two hypotheses' transcript laws"""
    require_enumeration_budget(forest)
    state_algebra(n, SubgroupSpec.ORDER_TWO)
    distance = Fraction(0)
    inhomogeneous = Fraction(0)
    hom_trivial = Fraction(0)
    hom_order_two = Fraction(0)
    total_trivial = Fraction(0)
    total_order_two = Fraction(0)
    count = 0
    for labels in enumerate_labelings(forest, n):
        p_trivial = transcript_probability(forest, labels, SubgroupSpec.TRIVIAL)
        p_order_two = transcript_probability(forest, labels, SubgroupSpec.ORDER_TWO)
        gap = abs(p_order_two - p_trivial)
        distance += gap
        total_trivial += p_trivial
        total_order_two += p_order_two
        if any(sigma.is_homogeneous for sigma in labels):
            hom_trivial += p_trivial
            hom_order_two += p_order_two
        else:
            inhomogeneous += gap
        count += 1
    logger.info(f"TV distance over {count} labelings of {forest.describe()} at n={n}: {distance / 2}")
    return TvReport(n, forest.describe(), distance / 2, hom_trivial, hom_order_two,
                    inhomogeneous / 2, total_trivial, total_order_two, count)


def inhomogeneous_equality_violations(forest: Forest, n: int) -> list:
    """All-inhomogeneous labelings whose two hypothesis probabilities differ"""
    require_enumeration_budget(forest)
    violations = []
    for labels in enumerate_labelings(forest, n):
        if any(sigma.is_homogeneous for sigma in labels):
            continue
        p_trivial = transcript_probability(forest, labels, SubgroupSpec.TRIVIAL)
        p_order_two = transcript_probability(forest, labels, SubgroupSpec.ORDER_TWO)
        if p_trivial != p_order_two:
            violations.append((labels, p_trivial, p_order_two))
    return violations


def single_leaf_check(n: int, subgroup: SubgroupSpec) -> list:
    """Irreps where the one-node DP disagrees with the leaf distribution"""
    forest = Forest.of_leaves(1)
    expected = leaf_distribution(n, subgroup)
    return [
        sigma for sigma in wreath_irreps(n)
        if transcript_probability(forest, (sigma,), subgroup) != expected[sigma]
    ]
