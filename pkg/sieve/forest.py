"""
Labeled binary forests: the topology a sieve run builds and the set system of
leaf indices each node covers.

Nodes are numbered in creation order, so every child id is smaller than its
parent's. Leaves carry no children; internal nodes carry exactly two.
"""
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement

from combinatorics.partitions import enumerate_partitions
from utils.errors import TranscriptFormatError
from utils.logging_utils import get_logger

logger = get_logger(__name__)

LEAF = ()


@dataclass(frozen=True)
class ForestNode:
    id: int
    label: object
    children: tuple
    leaf_set: frozenset

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class Forest:
    """Topology only; labels travel separately, indexed by node id"""
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(tuple(kids) for kids in self.children))
        seen = set()
        for node, kids in enumerate(self.children):
            if len(kids) not in (0, 2):
                raise TranscriptFormatError(f"Node {node} has {len(kids)} children (need 0 or 2)")
            for child in kids:
                if not 0 <= child < node:
                    raise TranscriptFormatError(f"Node {node} has child {child} not created before it")
                if child in seen:
                    raise TranscriptFormatError(f"Node {child} has two parents")
                seen.add(child)
            if len(kids) == 2 and kids[0] == kids[1]:
                raise TranscriptFormatError(f"Node {node} combines node {kids[0]} with itself")

    @classmethod
    def of_leaves(cls, count: int) -> "Forest":
        return cls(tuple(LEAF for _ in range(count)))

    def combine(self, first: int, second: int) -> "Forest":
        roots = self.roots
        if first == second or first not in roots or second not in roots:
            raise TranscriptFormatError(f"Can only combine two distinct roots, got {first}, {second}")
        return Forest(self.children + ((first, second),))

    @property
    def node_count(self) -> int:
        return len(self.children)

    @cached_property
    def leaves(self) -> tuple:
        return tuple(node for node, kids in enumerate(self.children) if not kids)

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    @cached_property
    def parents(self) -> dict:
        return {child: node for node, kids in enumerate(self.children) for child in kids}

    @cached_property
    def roots(self) -> tuple:
        return tuple(node for node in range(self.node_count) if node not in self.parents)

    @cached_property
    def leaf_sets(self) -> tuple:
        """I_i: leaf indices (positions in ``leaves``) below each node"""
        index = {leaf: i for i, leaf in enumerate(self.leaves)}
        sets = []
        for node, kids in enumerate(self.children):
            if kids:
                sets.append(sets[kids[0]] | sets[kids[1]])
            else:
                sets.append(frozenset({index[node]}))
        return tuple(sets)

    def nodes(self, labels=None) -> list:
        labels = labels if labels is not None else (None,) * self.node_count
        return [
            ForestNode(node, labels[node], kids, self.leaf_sets[node])
            for node, kids in enumerate(self.children)
        ]

    def check_laminar(self):
        """Leaf sets are pairwise disjoint or nested; children partition their parent"""
        sets = self.leaf_sets
        for i in range(self.node_count):
            for j in range(i + 1, self.node_count):
                a, b = sets[i], sets[j]
                if a & b and not (a <= b or b <= a):
                    raise TranscriptFormatError(f"Leaf sets of nodes {i} and {j} overlap without nesting")
        for node, kids in enumerate(self.children):
            if kids and (sets[kids[0]] & sets[kids[1]] or sets[kids[0]] | sets[kids[1]] != sets[node]):
                raise TranscriptFormatError(f"Children of node {node} do not partition its leaf set")

    def subtree(self, root: int) -> tuple:
        """Node ids under root in creation order"""
        members = []
        stack = [root]
        while stack:
            node = stack.pop()
            members.append(node)
            stack.extend(self.children[node])
        return tuple(sorted(members))

    def shape(self, node: int):
        """Unlabeled shape of the tree under node as nested sorted tuples"""
        kids = self.children[node]
        if not kids:
            return LEAF
        return tuple(sorted((self.shape(kids[0]), self.shape(kids[1]))))

    def describe(self) -> str:
        return " ".join(_shape_text(self.shape(root)) for root in self.roots)


def _shape_text(shape) -> str:
    if shape == LEAF:
        return "*"
    return "(" + _shape_text(shape[0]) + " " + _shape_text(shape[1]) + ")"


def _tree_shapes(leaves: int) -> list:
    """Unordered binary tree shapes with the given number of leaves"""
    if leaves == 1:
        return [LEAF]
    shapes = set()
    for left in range(1, leaves // 2 + 1):
        for a in _tree_shapes(left):
            for b in _tree_shapes(leaves - left):
                shapes.add(tuple(sorted((a, b))))
    return sorted(shapes)


def _leaf_total(shape) -> int:
    return 1 if shape == LEAF else _leaf_total(shape[0]) + _leaf_total(shape[1])


def forest_from_shapes(shapes) -> Forest:
    """Leaves first, then internal nodes bottom-up, trees left to right"""
    leaf_total = sum(_leaf_total(shape) for shape in shapes)
    children = [LEAF] * leaf_total
    next_leaf = [0]

    def build(shape) -> int:
        if shape == LEAF:
            node = next_leaf[0]
            next_leaf[0] += 1
            return node
        left = build(shape[0])
        right = build(shape[1])
        children.append((left, right))
        return len(children) - 1

    for shape in shapes:
        build(shape)
    return Forest(tuple(children))


def enumerate_forests(max_leaves: int, max_nodes: int) -> list:
    """Every forest shape, up to isomorphism, within both limits"""
    forests = []
    for leaves in range(1, max_leaves + 1):
        # a forest is a multiset of trees whose leaf counts partition `leaves`
        for sizes in enumerate_partitions(leaves):
            node_total = sum(2 * size - 1 for size in sizes)
            if node_total > max_nodes:
                continue
            for choice in _multisets_of_trees(sizes):
                forests.append(forest_from_shapes(choice))
    logger.debug(f"Enumerated {len(forests)} forests with <= {max_leaves} leaves and <= {max_nodes} nodes")
    return forests


def _multisets_of_trees(sizes: tuple) -> list:
    # group equal tree sizes so isomorphic forests appear once
    groups = {}
    for size in sizes:
        groups[size] = groups.get(size, 0) + 1
    choices = [[]]
    for size, count in sorted(groups.items(), reverse=True):
        shapes = _tree_shapes(size)
        extended = []
        for prefix in choices:
            for combo in combinations_with_replacement(shapes, count):
                extended.append(prefix + list(combo))
        choices = extended
    return choices
