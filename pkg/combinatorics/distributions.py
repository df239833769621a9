"""
Kronecker multiplicities, Plancherel and natural distributions, smoothness and
the big / really-big size classes of S_n irreps.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath

from config.settings import config
from combinatorics.characters import character_table
from combinatorics.partitions import Partition, Shape, dimension, enumerate_partitions
from utils.errors import CharacterTableError, PartitionError
from utils.logging_utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class IrrepDistribution:
    """Exact probability distribution over the irreps of S_n"""
    n: int
    probs: dict

    def __getitem__(self, shape: Shape) -> Fraction:
        return self.probs.get(shape, Fraction(0))

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))

    def support(self) -> list:
        return [shape for shape, p in self.probs.items() if p]

    def to_json(self) -> dict:
        return {str(shape): str(p) for shape, p in self.probs.items()}


def _same_n(*shapes: Shape) -> int:
    sizes = {shape.n for shape in shapes}
    if len(sizes) != 1:
        raise PartitionError(f"Partitions of different sizes: {', '.join(str(s) for s in shapes)}")
    return sizes.pop()


@lru_cache(maxsize=None)
def kron_multiplicity(tau: Shape, lam: Shape, mu: Shape) -> int:
    """Multiplicity <chi_tau, chi_lambda chi_mu> of tau in lambda (x) mu"""
    n = _same_n(tau, lam, mu)
    table = character_table(n)
    total = sum(
        size * a * b * c
        for size, a, b, c in zip(table.class_sizes, table.row(tau), table.row(lam), table.row(mu))
    )
    multiplicity, remainder = divmod(total, table.order)
    if remainder or multiplicity < 0:
        raise CharacterTableError(f"Non-integral multiplicity {total}/{table.order} for {tau} in {lam} x {mu}")
    return multiplicity


@lru_cache(maxsize=None)
def natural_distribution(lam: Shape, mu: Shape) -> IrrepDistribution:
    """P^{lambda (x) mu}_tau = d_tau <chi_tau, chi_lambda chi_mu> / (d_lambda d_mu)"""
    n = _same_n(lam, mu)
    denominator = dimension(lam) * dimension(mu)
    probs = {}
    for tau in enumerate_partitions(n):
        multiplicity = kron_multiplicity(tau, lam, mu)
        if multiplicity:
            probs[tau] = Fraction(dimension(tau) * multiplicity, denominator)
    return IrrepDistribution(n, probs)


@lru_cache(maxsize=None)
def plancherel(n: int) -> IrrepDistribution:
    """d_lambda^2 / n! on every irrep"""
    if n < 1:
        raise PartitionError(f"Plancherel distribution needs n >= 1, got {n}")
    character_table(n)  # enforces the exact-work budget
    order = factorial(n)
    return IrrepDistribution(n, {shape: Fraction(dimension(shape) ** 2, order) for shape in enumerate_partitions(n)})


@lru_cache(maxsize=None)
def smoothness(shape: Shape) -> Fraction:
    """sum over g in S_n of |chi(g)/d|^4, as a class sum"""
    table = character_table(shape.n)
    d4 = dimension(shape) ** 4
    return sum(
        (Fraction(size * chi ** 4, d4) for size, chi in zip(table.class_sizes, table.row(shape))),
        Fraction(0),
    )


# size classes ---------------------------------------------------------------

@dataclass(frozen=True)
class SizeClass:
    shape: Partition
    log_dimension: float
    big: bool
    really_big: bool
    flagged: bool


def _log_threshold(n: int, factor) -> mpmath.mpf:
    # log of e^{-factor sqrt(n) ln n} sqrt(n!)
    return -factor * mpmath.sqrt(n) * mpmath.log(n) + mpmath.loggamma(n + 1) / 2


def _within_guard(log_d, log_threshold) -> bool:
    return abs(log_d - log_threshold) <= config.GUARD_BAND * max(1, abs(log_threshold))


def size_class(shape: Shape) -> SizeClass:
    n = shape.n
    with mpmath.workdps(config.PRECISION_DIGITS):
        log_d = mpmath.log(mpmath.mpf(dimension(shape)))
        big_threshold = _log_threshold(n, 1)
        really_threshold = _log_threshold(n, mpmath.mpf(1) / 2)
        flagged = _within_guard(log_d, big_threshold) or _within_guard(log_d, really_threshold)
        result = SizeClass(shape, float(log_d), bool(log_d > big_threshold), bool(log_d > really_threshold), flagged)
    if flagged:
        logger.warning(f"Irrep {shape} lies within the guard band of a size threshold")
    return result


def is_big(shape: Shape) -> bool:
    """d > e^{-sqrt(n) ln n} sqrt(n!)"""
    return size_class(shape).big


def is_really_big(shape: Shape) -> bool:
    """d > e^{-(1/2) sqrt(n) ln n} sqrt(n!)"""
    return size_class(shape).really_big


def big_irreps(n: int) -> list:
    return [shape for shape in enumerate_partitions(n) if is_big(shape)]


def threshold_near_ties(n: int) -> list:
    return [shape for shape in enumerate_partitions(n) if size_class(shape).flagged]


@dataclass(frozen=True)
class MaxDimension:
    shape: Partition
    dimension: int
    c_hat_emp: float


def max_dimension(n: int) -> MaxDimension:
    """argmax d_lambda, and c_emp(n) = -(2/sqrt n) ln(max d / sqrt(n!))"""
    if n < 1:
        raise PartitionError(f"max_dimension needs n >= 1, got {n}")
    best = max(enumerate_partitions(n), key=dimension)  # first maximum in reverse-lex order
    with mpmath.workdps(config.PRECISION_DIGITS):
        ratio = mpmath.log(mpmath.mpf(dimension(best))) - mpmath.loggamma(n + 1) / 2
        c_hat = float(-2 * ratio / mpmath.sqrt(n))
    return MaxDimension(best, dimension(best), c_hat)


def plancherel_mass_not_really_big(n: int) -> dict:
    """Plancherel mass of non-really-big irreps against 2 p(n) max d^2 / n!"""
    distribution = plancherel(n)
    small = [shape for shape in enumerate_partitions(n) if not is_really_big(shape)]
    mass = sum((distribution[shape] for shape in small), Fraction(0))
    largest = max((distribution[shape] for shape in small), default=Fraction(0))
    bound = 2 * len(enumerate_partitions(n)) * largest
    return {"n": n, "mass": mass, "union_bound": bound, "count": len(small)}
