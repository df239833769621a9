"""
q_n(z) = sum over pi in S_n of z^{t(pi)}, t the minimal transposition length
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath
from sympy.combinatorics.named_groups import SymmetricGroup

from config.settings import config
from combinatorics.partitions import class_size, enumerate_partitions, perm_stats
from utils.errors import PartitionError
from utils.logging_utils import get_logger

logger = get_logger(__name__)

BRUTE_FORCE_MAX_N = 8


@dataclass(frozen=True)
class QnPolynomial:
    n: int
    coefficients: tuple  # coefficients[j] = #{pi : t(pi) = j}

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def total(self) -> int:
        return sum(self.coefficients)

    def __call__(self, z):
        """Exact for Fraction / int arguments, mpmath otherwise (Horner)"""
        value = 0
        for c in reversed(self.coefficients):
            value = value * z + c
        return value

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) if j == 0 else f"{c}z" if j == 1 else f"{c}z^{j}")
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"n": self.n, "coefficients": [str(c) for c in self.coefficients]}


@lru_cache(maxsize=None)
def qn_polynomial(n: int) -> QnPolynomial:
    """Coefficients from class sizes grouped by t = n - (number of cycles)"""
    if n < 1:
        raise PartitionError(f"q_n needs n >= 1, got {n}")
    coefficients = [0] * n
    for cycle_type in enumerate_partitions(n):
        coefficients[perm_stats(cycle_type).transposition_length] += class_size(cycle_type)
    return QnPolynomial(n, tuple(coefficients))


def stirling_first_kind_qn(n: int) -> QnPolynomial:
    """Same coefficients from the cycle-count recurrence c(k+1, j) = k c(k, j) + c(k, j-1)"""
    if n < 1:
        raise PartitionError(f"q_n needs n >= 1, got {n}")
    row = [0, 1]  # c(1, j), j = 0..1
    for k in range(1, n):
        row = [0] + [k * row[j] + row[j - 1] for j in range(1, k + 1)] + [row[k]]
    # t = n - cycles
    return QnPolynomial(n, tuple(row[n - j] for j in range(n)))


def brute_force_qn(n: int) -> QnPolynomial:
    """Enumerate S_n and count cycles directly"""
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"Brute-force enumeration of S_{n} is limited to n <= {BRUTE_FORCE_MAX_N}")
    coefficients = [0] * n
    for perm in SymmetricGroup(n).generate():
        coefficients[n - perm.cycles] += 1
    return QnPolynomial(n, tuple(coefficients))


@dataclass(frozen=True)
class QnBoundReport:
    n: int
    z: Fraction
    exact: Fraction
    envelope: float
    ratio: float
    guard: float

    @property
    def passed(self) -> bool:
        return self.ratio <= self.guard

    def to_json(self) -> dict:
        return {
            "n": self.n, "z": str(self.z), "q_n(z)": str(self.exact), "envelope": self.envelope,
            "ratio": self.ratio, "guard": self.guard, "passed": self.passed,
        }


def qn_bound_check(n: int, z) -> QnBoundReport:
    """
    Compare q_n(z) with sqrt(2 pi n) e^{-n} (1 - z n)^{-1/z}; the ratio must
    stay below 1 + QN_EPSILON.
    """
    z = Fraction(z)
    if not 0 < z < Fraction(1, n):
        raise ValueError(f"z must satisfy 0 < z < 1/n, got z={z} for n={n}")
    exact = qn_polynomial(n)(z)
    with mpmath.workdps(config.PRECISION_DIGITS):
        zf = mpmath.mpf(z.numerator) / z.denominator
        envelope = mpmath.sqrt(2 * mpmath.pi * n) * mpmath.exp(-n) * (1 - zf * n) ** (-1 / zf)
        ratio = (mpmath.mpf(exact.numerator) / exact.denominator) / envelope
    report = QnBoundReport(n, z, exact, float(envelope), float(ratio), 1 + config.QN_EPSILON)
    if not report.passed:
        logger.warning(f"q_{n}({z}) exceeds its envelope: ratio {report.ratio:.6f}")
    return report


def qn_coefficient_check(n: int) -> bool:
    """Class-sum coefficients agree with the recurrence and sum to n!"""
    poly = qn_polynomial(n)
    return poly == stirling_first_kind_qn(n) and poly.total() == factorial(n) and poly.coefficients[0] == 1
