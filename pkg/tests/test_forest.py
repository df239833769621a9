import pytest

from sieve.forest import Forest, enumerate_forests, forest_from_shapes
from utils.errors import TranscriptFormatError


def test_combine_builds_parents_after_children():
    forest = Forest.of_leaves(3).combine(0, 2)
    assert forest.children[3] == (0, 2)
    assert forest.roots == (1, 3)
    assert forest.leaf_sets[3] == frozenset({0, 2})
    assert forest.leaf_count == 3
    forest.check_laminar()


def test_nested_combines():
    forest = Forest.of_leaves(3).combine(0, 1).combine(2, 3)
    assert forest.roots == (4,)
    assert forest.subtree(4) == (0, 1, 2, 3, 4)
    assert forest.describe() == "(* (* *))"
    assert [node.is_leaf for node in forest.nodes()] == [True, True, True, False, False]


@pytest.mark.parametrize("children", [
    ((), (0, 0)),  # self pair
    ((), (), (0, 1), (0, 2)),  # node 0 has two parents
    ((), (1, 0)),  # child created after parent
    ((), (), (0,)),  # one child
])
def test_invalid_forests_rejected(children):
    with pytest.raises(TranscriptFormatError):
        Forest(children)


def test_combine_requires_roots():
    forest = Forest.of_leaves(2).combine(0, 1)
    with pytest.raises(TranscriptFormatError):
        forest.combine(0, 2)


def test_enumerate_forests_counts():
    # 1 leaf: 1; 2 leaves: 2; 3 leaves: 3
    assert len(enumerate_forests(3, 5)) == 6
    assert len(enumerate_forests(2, 3)) == 3
    # the 3-leaf tree has 5 nodes
    assert len(enumerate_forests(3, 4)) == 5


def test_enumerated_forests_are_laminar_and_distinct():
    forests = enumerate_forests(4, 7)
    for forest in forests:
        forest.check_laminar()
    shapes = {tuple(sorted(forest.shape(root) for root in forest.roots)) for forest in forests}
    assert len(shapes) == len(forests)


def test_forest_from_shapes_orders_leaves_first():
    forest = forest_from_shapes([((), ()), ()])
    assert forest.leaves == (0, 1, 2)
    assert forest.children[3] == (0, 1)
