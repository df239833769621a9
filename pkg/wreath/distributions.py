"""
Exact distributions over wreath irreps: Plancherel, weak Fourier sampling of a
coset state, natural distributions of tensor products, and S_n collisions.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath

from config.settings import config
from combinatorics.distributions import max_dimension, natural_distribution, plancherel, smoothness
from combinatorics.partitions import Shape, enumerate_partitions
from utils.errors import CharacterTableError, PartitionError
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec, wreath_order
from wreath.irreps import WreathIrrep, involution_character, wreath_character_table, wreath_irreps

logger = get_logger(__name__)


@dataclass(frozen=True)
class WreathDistribution:
    """Exact probability distribution over the irreps of S_n wr Z_2"""
    n: int
    probs: dict

    def __getitem__(self, sigma: WreathIrrep) -> Fraction:
        return self.probs.get(sigma, Fraction(0))

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))

    def support(self) -> list:
        return sorted((sigma for sigma, p in self.probs.items() if p), key=WreathIrrep.sort_key)

    def items(self) -> list:
        return sorted(self.probs.items(), key=lambda item: item[0].sort_key())

    def homogeneous_mass(self) -> Fraction:
        return sum((p for sigma, p in self.probs.items() if sigma.is_homogeneous), Fraction(0))

    def to_json(self) -> list:
        return [{"irrep": sigma.to_json(), "p": str(p)} for sigma, p in self.items() if p]


def homogeneous_mass(distribution: WreathDistribution) -> Fraction:
    return distribution.homogeneous_mass()


@lru_cache(maxsize=None)
def wreath_plancherel(n: int) -> WreathDistribution:
    """2 P(lambda) P(mu) on {lambda, mu}; P(lambda)^2 / 2 on each of (lambda, +-)"""
    base = plancherel(n)
    probs = {}
    for sigma in wreath_irreps(n):
        if sigma.is_homogeneous:
            probs[sigma] = base[sigma.a] ** 2 / 2
        else:
            probs[sigma] = 2 * base[sigma.a] * base[sigma.b]
    return WreathDistribution(n, probs)


def hidden_subgroup_mass(sigma: WreathIrrep) -> Fraction:
    """D_H(sigma) = d (d + chi(m)) / |G| for H = {1, m}"""
    d = sigma.dimension
    return Fraction(d * (d + involution_character(sigma)), wreath_order(sigma.n))


@lru_cache(maxsize=None)
def leaf_distribution(n: int, subgroup: SubgroupSpec) -> WreathDistribution:
    """Label distribution of weak Fourier sampling one coset state"""
    if subgroup is SubgroupSpec.TRIVIAL:
        return wreath_plancherel(n)
    return WreathDistribution(n, {sigma: hidden_subgroup_mass(sigma) for sigma in wreath_irreps(n)})


def _same_n(*irreps: WreathIrrep) -> int:
    sizes = {sigma.n for sigma in irreps}
    if len(sizes) != 1:
        raise PartitionError(f"Wreath irreps of different n: {', '.join(str(s) for s in irreps)}")
    return sizes.pop()


@lru_cache(maxsize=None)
def _weighted_product(sigma1: WreathIrrep, sigma2: WreathIrrep) -> tuple:
    # |C| chi_1(C) chi_2(C) per class
    table = wreath_character_table(sigma1.n)
    return tuple(size * x * y for size, x, y in zip(table.class_sizes, table.row(sigma1), table.row(sigma2)))


def wreath_kron_multiplicity(tau: WreathIrrep, sigma1: WreathIrrep, sigma2: WreathIrrep) -> int:
    n = _same_n(tau, sigma1, sigma2)
    table = wreath_character_table(n)
    total = sum(w * chi for w, chi in zip(_weighted_product(sigma1, sigma2), table.row(tau)))
    multiplicity, remainder = divmod(total, table.order)
    if remainder or multiplicity < 0:
        raise CharacterTableError(f"Non-integral wreath multiplicity {total}/{table.order} for {tau} in {sigma1} x {sigma2}")
    return multiplicity


@lru_cache(maxsize=None)
def wreath_natural_distribution(sigma1: WreathIrrep, sigma2: WreathIrrep) -> WreathDistribution:
    """P_tau = d_tau <chi_tau, chi_1 chi_2> / (d_1 d_2), over every wreath irrep"""
    n = _same_n(sigma1, sigma2)
    denominator = sigma1.dimension * sigma2.dimension
    probs = {}
    for tau in wreath_irreps(n):
        multiplicity = wreath_kron_multiplicity(tau, sigma1, sigma2)
        if multiplicity:
            probs[tau] = Fraction(tau.dimension * multiplicity, denominator)
    distribution = WreathDistribution(n, probs)
    if distribution.total() != 1:
        raise CharacterTableError(f"Natural distribution of {sigma1} x {sigma2} sums to {distribution.total()}")
    return distribution


def collision_probability(lam: Shape, mu: Shape, lam2: Shape, mu2: Shape) -> Fraction:
    """sum_tau P^{lam x mu}_tau P^{lam2 x mu2}_tau"""
    first = natural_distribution(lam, mu)
    second = natural_distribution(lam2, mu2)
    return sum((p * second[tau] for tau, p in first.probs.items()), Fraction(0))


def factorized_homogeneous_mass(sigma1: WreathIrrep, sigma2: WreathIrrep) -> Fraction:
    """
    Homogeneous mass of {lam, lam'} x {mu, mu'} from S_n collisions alone:
    (P_coll(lam x mu, lam' x mu') + P_coll(lam x mu', lam' x mu)) / 2.
    """
    if sigma1.is_homogeneous or sigma2.is_homogeneous:
        raise ValueError("Factorized homogeneous mass needs two inhomogeneous irreps")
    lam, lam2 = sigma1.a, sigma1.b
    mu, mu2 = sigma2.a, sigma2.b
    return (collision_probability(lam, mu, lam2, mu2) + collision_probability(lam, mu2, lam2, mu)) / 2


def _as_mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


def collision_bound(lam: Shape, mu: Shape, lam2: Shape, mu2: Shape) -> mpmath.mpf:
    """
    Smoothness bound on a collision:
    (max_tau d_tau / sqrt(n!)) * min((f_lam f_mu)^(1/4), (f_lam2 f_mu2)^(1/4)).
    """
    n = lam.n
    with mpmath.workdps(config.PRECISION_DIGITS):
        scale = mpmath.mpf(max_dimension(n).dimension) / mpmath.sqrt(factorial(n))
        root = min(mpmath.root(_as_mpf(smoothness(a) * smoothness(b)), 4) for a, b in ((lam, mu), (lam2, mu2)))
        return scale * root


def leaf_homogeneous_probability(n: int) -> Fraction:
    """Homogeneous leaf mass under the trivial subgroup, sum_lambda P(lambda)^2"""
    base = plancherel(n)
    return sum((base[lam] ** 2 for lam in enumerate_partitions(n)), Fraction(0))
