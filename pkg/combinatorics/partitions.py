"""
Integer partitions, Young-diagram geometry and cycle-type statistics for S_n.

A ``Partition`` names both an irrep of S_n (a Young diagram) and a conjugacy
class (a cycle type, fixed points stored as parts of size 1). The aliases
``Shape`` and ``CycleType`` mark which role a signature expects.
"""
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator

from utils.errors import PartitionError


class Partition(tuple):
    """Non-increasing tuple of positive integers"""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise PartitionError(f"Partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PartitionError(f"Partition parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        """Build from parts in any order"""
        return cls(sorted((p for p in parts if p), reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the "3+2+1" string syntax; "0" or "" is the empty partition"""
        text = text.strip()
        if text in ("", "0", "()"):
            return cls(())
        try:
            return cls(int(part) for part in text.split("+"))
        except ValueError:
            raise PartitionError(f"Malformed partition string: {text!r}")

    @property
    def n(self) -> int:
        return sum(self)

    def __str__(self):
        return "+".join(str(p) for p in self) if self else "0"

    def __repr__(self):
        return f"Partition({list(self)})"

    def to_json(self) -> list:
        return list(self)


# Semantic aliases: the same data in its two roles
Shape = Partition
CycleType = Partition


@dataclass(frozen=True)
class PermStats:
    """Support, non-trivial cycle count and transposition length of a cycle type"""
    support: int
    nontrivial_cycles: int
    transposition_length: int


def _partitions_bounded(n: int, largest: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple:
    """All partitions of n in reverse-lexicographic order, (n) first and (1^n) last"""
    if n < 0:
        raise PartitionError(f"Cannot partition a negative number: {n}")
    return tuple(Partition(parts) for parts in _partitions_bounded(n, n))


def partition_count(n: int) -> int:
    return len(enumerate_partitions(n))


def identity_type(n: int) -> CycleType:
    return Partition((1,) * n)


def conjugate(shape: Shape) -> Shape:
    if not shape:
        return Partition(())
    return Partition(sum(1 for part in shape if part > i) for i in range(shape[0]))


def hook_lengths(shape: Shape) -> list:
    """Hook length of every cell, row by row"""
    columns = conjugate(shape)
    return [
        [shape[i] - j + columns[j] - i - 1 for j in range(shape[i])]
        for i in range(len(shape))
    ]


@lru_cache(maxsize=None)
def dimension(shape: Shape) -> int:
    """d_lambda by the hook-length formula"""
    hooks = prod(h for row in hook_lengths(shape) for h in row)
    return factorial(shape.n) // hooks


@lru_cache(maxsize=None)
def standard_tableaux_count(shape: Shape) -> int:
    """Number of standard Young tableaux, by removing the cell holding n"""
    if not shape:
        return 1
    total = 0
    for i, part in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if part > below:
            total += standard_tableaux_count(Partition.from_parts(shape[:i] + (part - 1,) + shape[i + 1:]))
    return total


def class_size(cycle_type: CycleType) -> int:
    """n! / prod k^{m_k} m_k!"""
    multiplicities = Counter(cycle_type)
    centralizer = prod(k ** m * factorial(m) for k, m in multiplicities.items())
    return factorial(cycle_type.n) // centralizer


def perm_stats(cycle_type: CycleType) -> PermStats:
    nontrivial = [k for k in cycle_type if k >= 2]
    support = sum(nontrivial)
    return PermStats(support, len(nontrivial), support - len(nontrivial))


def width_height(shape: Shape) -> tuple:
    return (shape[0] if shape else 0, len(shape))


def _beta_numbers(shape: Shape) -> list:
    length = len(shape)
    return [shape[i] + length - 1 - i for i in range(length)]


def remove_rim_hooks(shape: Shape, k: int) -> list:
    """
    All ways to strip a length-k rim hook (ribbon) from the diagram.

    Returns (remaining shape, leg length) pairs; the leg length is the hook's
    height minus one and fixes the Murnaghan-Nakayama sign.
    """
    if k < 1:
        raise PartitionError(f"Ribbon length must be positive: {k}")
    beta = _beta_numbers(shape)
    occupied = set(beta)
    length = len(beta)
    removals = []
    for i, b in enumerate(beta):
        target = b - k
        if target < 0 or target in occupied:
            continue
        leg = sum(1 for c in beta if target < c < b)
        moved = sorted(beta[:i] + [target] + beta[i + 1:], reverse=True)
        remaining = Partition.from_parts(moved[j] - (length - 1 - j) for j in range(length))
        removals.append((remaining, leg))
    return removals


def count_ribbon_locations(shape: Shape, k: int) -> int:
    """Number of length-k ribbon tiles removable from the boundary of the diagram"""
    return len(remove_rim_hooks(shape, k))
