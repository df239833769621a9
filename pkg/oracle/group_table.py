"""
Explicit finite groups given by multiplication tables, with conjugacy classes
and per-element character values.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np
from sympy.combinatorics import Permutation

from combinatorics.characters import character_table
from combinatorics.partitions import Partition, dimension, enumerate_partitions
from utils.errors import CharacterTableError
from utils.logging_utils import get_logger
from wreath.classes import classify_element, involution_element, wreath_elements
from wreath.irreps import wreath_character_table

logger = get_logger(__name__)


@dataclass
class GroupTable:
    """
    mul[a, b] is the index of a*b. ``characters`` maps an irrep label to its
    values on every element; ``dimensions`` maps it to the irrep's degree.
    """
    name: str
    mul: np.ndarray
    characters: dict = field(default_factory=dict)
    dimensions: dict = field(default_factory=dict)
    elements: tuple = ()

    def __post_init__(self):
        self.mul = np.asarray(self.mul, dtype=np.int64)
        order = self.mul.shape[0]
        if self.mul.shape != (order, order):
            raise ValueError(f"Multiplication table must be square, got {self.mul.shape}")
        identities = [e for e in range(order) if np.array_equal(self.mul[e], np.arange(order))]
        if len(identities) != 1:
            raise ValueError(f"{self.name}: expected one identity, found {len(identities)}")
        self.identity = identities[0]
        self.inv = np.argmax(self.mul == self.identity, axis=1)
        if not np.all(self.mul[np.arange(order), self.inv] == self.identity):
            raise ValueError(f"{self.name}: some element has no inverse")
        self.classes = self._conjugacy_classes()
        self.class_of = np.empty(order, dtype=np.int64)
        for k, members in enumerate(self.classes):
            self.class_of[list(members)] = k

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def _conjugacy_classes(self) -> list:
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for x in range(self.order):
            if seen[x]:
                continue
            # g x g^-1 for every g
            members = tuple(sorted(set(self.mul[self.mul[:, x], self.inv].tolist())))
            seen[list(members)] = True
            classes.append(members)
        return classes

    def product(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def check_associativity(self) -> bool:
        n = self.order
        left = self.mul[self.mul]
        right = self.mul[np.arange(n)[:, None, None], self.mul[None, :, :]]
        return bool(np.array_equal(left, right))

    def check_inverses(self) -> bool:
        n = np.arange(self.order)
        return bool(np.all(self.mul[n, self.inv] == self.identity) and np.all(self.mul[self.inv, n] == self.identity))

    def check_classes(self) -> bool:
        """Each class is closed under conjugation and the classes partition the group"""
        covered = sorted(x for members in self.classes for x in members)
        if covered != list(range(self.order)):
            return False
        for members in self.classes:
            conjugates = set(self.mul[self.mul[:, members[0]], self.inv].tolist())
            if conjugates != set(members):
                return False
        return True

    def check_characters(self, atol: float = 1e-9):
        """Row orthogonality of the supplied characters"""
        labels = list(self.characters)
        for i, a in enumerate(labels):
            for b in labels[i:]:
                inner = np.vdot(self.characters[b], self.characters[a]) / self.order
                expected = 1.0 if a == b else 0.0
                if abs(inner - expected) > atol:
                    raise CharacterTableError(f"{self.name}: <chi_{a}, chi_{b}> = {inner}, expected {expected}")
        if sum(d ** 2 for d in self.dimensions.values()) != self.order:
            raise CharacterTableError(f"{self.name}: squared dimensions do not sum to the order")

    def element_index(self, element) -> int:
        return self.elements.index(element)


def table_from_elements(name: str, elements, compose) -> np.ndarray:
    index = {x: i for i, x in enumerate(elements)}
    mul = np.empty((len(elements), len(elements)), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            mul[i, j] = index[compose(x, y)]
    logger.debug(f"Built multiplication table for {name} (order {len(elements)})")
    return mul


@lru_cache(maxsize=None)
def wreath_group_table(n: int) -> GroupTable:
    """S_n wr Z_2 on 2n points, characters from the structural class formulas"""
    elements = wreath_elements(n)
    mul = table_from_elements(f"S{n}wrZ2", elements, lambda x, y: x * y)
    table = wreath_character_table(n)
    class_index = np.array([table.class_index(classify_element(x, n)) for x in elements])
    characters = {
        sigma: np.array(table.row(sigma), dtype=np.float64)[class_index] for sigma in table.irreps
    }
    dimensions = {sigma: sigma.dimension for sigma in table.irreps}
    return GroupTable(f"S{n}wrZ2", mul, characters, dimensions, elements)


def wreath_involution(group: GroupTable) -> int:
    """Index of m in a wreath group table"""
    n = len(group.elements[0].array_form) // 2
    return group.element_index(involution_element(n))


@lru_cache(maxsize=None)
def symmetric_group_table(n: int) -> GroupTable:
    elements = tuple(Permutation(list(p)) for p in permutations(range(n)))
    mul = table_from_elements(f"S{n}", elements, lambda x, y: x * y)
    table = character_table(n)
    cycle_types = [
        Partition.from_parts(length for length, count in x.cycle_structure.items() for _ in range(count))
        for x in elements
    ]
    characters = {
        shape: np.array([table.value(shape, ct) for ct in cycle_types], dtype=np.float64)
        for shape in enumerate_partitions(n)
    }
    dimensions = {shape: dimension(shape) for shape in enumerate_partitions(n)}
    return GroupTable(f"S{n}", mul, characters, dimensions, elements)


@lru_cache(maxsize=None)
def cyclic_group_table(k: int) -> GroupTable:
    elements = tuple(range(k))
    mul = (np.arange(k)[:, None] + np.arange(k)[None, :]) % k
    characters = {j: np.exp(2j * np.pi * j * np.arange(k) / k) for j in range(k)}
    return GroupTable(f"Z{k}", mul, characters, {j: 1 for j in range(k)}, elements)
