"""
Conjugacy classes of S_n wr Z_2, enumerated structurally: unordered pairs of
cycle types for non-flips, the cycle type of alpha*beta for flips.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import permutations
from math import factorial

from sympy.combinatorics import Permutation

from combinatorics.partitions import (
    CycleType, Partition, class_size, enumerate_partitions, identity_type,
)
from utils.errors import PartitionError

NONFLIP = "nonflip"
FLIP = "flip"


class SubgroupSpec(Enum):
    """Hidden subgroup: trivial, or {1, m} with m the canonical flip involution"""
    TRIVIAL = "trivial"
    ORDER_TWO = "order2"

    @classmethod
    def parse(cls, text: str) -> "SubgroupSpec":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"Unknown subgroup {text!r} (expected trivial or order2)")


@dataclass(frozen=True)
class WreathClass:
    kind: str
    a: Partition
    b: Partition = None

    @classmethod
    def nonflip(cls, first: CycleType, second: CycleType) -> "WreathClass":
        if first.n != second.n:
            raise PartitionError(f"Non-flip class needs equal sizes: {first}, {second}")
        return cls(NONFLIP, max(first, second), min(first, second))

    @classmethod
    def flip(cls, product_type: CycleType) -> "WreathClass":
        return cls(FLIP, product_type)

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def is_flip(self) -> bool:
        return self.kind == FLIP

    @property
    def size(self) -> int:
        if self.is_flip:
            return factorial(self.n) * class_size(self.a)
        if self.a == self.b:
            return class_size(self.a) ** 2
        return 2 * class_size(self.a) * class_size(self.b)

    def __str__(self):
        if self.is_flip:
            return f"flip:{self.a}"
        return f"nonflip:{self.a}|{self.b}"

    @classmethod
    def parse(cls, text: str) -> "WreathClass":
        kind, _, body = text.partition(":")
        if kind == FLIP:
            return cls.flip(Partition.parse(body))
        if kind == NONFLIP and "|" in body:
            first, second = body.split("|", 1)
            return cls.nonflip(Partition.parse(first), Partition.parse(second))
        raise ValueError(f"Malformed wreath class {text!r}")


def identity_class(n: int) -> WreathClass:
    return WreathClass.nonflip(identity_type(n), identity_type(n))


def involution_class(n: int) -> WreathClass:
    """Class of m = ((alpha, alpha^-1), 1): the flips whose alpha*beta is the identity"""
    return WreathClass.flip(identity_type(n))


@lru_cache(maxsize=None)
def wreath_classes(n: int) -> tuple:
    """Non-flip classes over pairs i <= j of the partition order, then flip classes"""
    partitions = enumerate_partitions(n)
    nonflips = [
        WreathClass.nonflip(partitions[i], partitions[j])
        for i in range(len(partitions))
        for j in range(i, len(partitions))
    ]
    flips = [WreathClass.flip(p) for p in partitions]
    return tuple(nonflips + flips)


def wreath_order(n: int) -> int:
    return 2 * factorial(n) ** 2


# element model --------------------------------------------------------------
# ((alpha, beta), t) acts on 2n points: block 0 is 0..n-1, block 1 is n..2n-1.

def wreath_element(alpha, beta, flip: bool = False) -> Permutation:
    n = len(alpha)
    if flip:
        image = [n + a for a in alpha] + list(beta)
    else:
        image = list(alpha) + [n + b for b in beta]
    return Permutation(image)


@lru_cache(maxsize=None)
def wreath_elements(n: int) -> tuple:
    """Every element once; the identity comes first"""
    return tuple(
        wreath_element(alpha, beta, flip)
        for flip in (False, True)
        for alpha in permutations(range(n))
        for beta in permutations(range(n))
    )


def involution_element(n: int) -> Permutation:
    """m = ((1, 1), 1), the block swap"""
    return wreath_element(range(n), range(n), True)


def is_flip(x: Permutation, n: int) -> bool:
    return x.array_form[0] >= n


def _cycle_type(image) -> CycleType:
    structure = Permutation(list(image)).cycle_structure
    return Partition.from_parts(length for length, count in structure.items() for _ in range(count))


def classify_element(x: Permutation, n: int) -> WreathClass:
    image = x.array_form
    if image[0] >= n:
        square = (x * x).array_form
        return WreathClass.flip(_cycle_type(square[:n]))
    return WreathClass.nonflip(_cycle_type(image[:n]), _cycle_type([v - n for v in image[n:]]))
