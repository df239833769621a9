"""
Finite-n scans over the big irreps of S_n: character ratio constants, the
big-cycles and large-support character bounds, smoothness, really-big closure,
diagram width and the collision bound.

Ratios here are irrational and reported as floats from mpmath; everything
that can be exact (smoothness, masses, collision probabilities) stays a
Fraction.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial, log, sqrt

import mpmath

from analysis.qn import qn_polynomial
from config.settings import config
from combinatorics.characters import character_table, configure_cache
from combinatorics.distributions import (
    big_irreps, is_really_big, max_dimension, natural_distribution, smoothness,
)
from combinatorics.partitions import (
    dimension, enumerate_partitions, perm_stats, width_height,
)
from utils.logging_utils import get_logger
from wreath.distributions import collision_bound, collision_probability

logger = get_logger(__name__)

DEFAULT_BETA = 0.5

_worker_config = None


def _mpf(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


def _is_restricted(shape) -> bool:
    """d^2 >= sqrt(n!), the non-vacuous big set at small n"""
    return dimension(shape) ** 4 >= factorial(shape.n)


def _log_scale(n: int) -> float:
    # sqrt(n) ln n
    return sqrt(n) * log(n) if n > 1 else 0.0


# character ratio constants ----------------------------------------------------

@dataclass(frozen=True)
class ClassRatio:
    cycle_type: object
    support: int
    transposition_length: int
    worst_ratio: float  # max over big lambda of |chi/d| n^{t/2}
    root: float  # worst_ratio^{1/t}
    shape: object

    def to_json(self) -> dict:
        return {
            "class": str(self.cycle_type), "support": self.support, "t": self.transposition_length,
            "worst_ratio": self.worst_ratio, "root": self.root, "shape": str(self.shape),
        }


@dataclass
class ConjectureReport:
    n: int
    big_count: int
    class_ratios: list
    a_emp: float
    extremal: tuple  # (shape, cycle type) attaining a_emp
    restricted_count: int
    a_emp_restricted: float
    forced_zero_checked: int
    forced_zero_violations: list
    uncovered: list = field(default_factory=list)
    beta: float = DEFAULT_BETA

    @property
    def finite(self) -> bool:
        return mpmath.isfinite(self.a_emp) and mpmath.isfinite(self.a_emp_restricted)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "big_count": self.big_count,
            "a_emp": self.a_emp,
            "extremal": [str(x) for x in self.extremal] if self.extremal else None,
            "restricted_count": self.restricted_count,
            "a_emp_restricted": self.a_emp_restricted,
            "classes": [row.to_json() for row in self.class_ratios],
            "forced_zero_checked": self.forced_zero_checked,
            "forced_zero_violations": [[str(s), str(c)] for s, c in self.forced_zero_violations],
            "uncovered_regime": {"beta": self.beta, "classes": [row.to_json() for row in self.uncovered]},
        }


def _shape_ratios(args) -> list:
    """(class index, |chi/d| n^{t/2}, chi) for one shape over the t >= 1 classes"""
    global _worker_config
    shape, overrides = args
    if overrides is not None and overrides != _worker_config:
        config.apply(overrides)
        configure_cache(config.CACHE_DIR or None)
        _worker_config = overrides
    table = character_table(shape.n)
    d = dimension(shape)
    rows = []
    with mpmath.workdps(config.PRECISION_DIGITS):
        for j, cycle_type in enumerate(table.classes):
            t = perm_stats(cycle_type).transposition_length
            if t == 0:
                continue
            chi = table.value(shape, cycle_type)
            rows.append((j, float(abs(mpmath.mpf(chi)) / d * mpmath.power(shape.n, mpmath.mpf(t) / 2)), chi))
    return rows


def _ratios_by_shape(shapes, jobs: int, progress: bool) -> dict:
    if jobs <= 1:
        iterator = shapes
        if progress:
            from tqdm import tqdm
            iterator = tqdm(shapes, desc="shapes")
        return {shape: _shape_ratios((shape, None)) for shape in iterator}

    # workers read the same character cache; results are keyed, so order is fixed
    overrides = config.as_dict()
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        results = ex.map(_shape_ratios, [(shape, overrides) for shape in shapes])
        return dict(zip(shapes, results))


def _root(ratio: float, t: int) -> float:
    return ratio ** (1.0 / t) if ratio > 0 else 0.0


def conjecture_scan(n: int, beta: float = DEFAULT_BETA, jobs: int = None, progress: bool = False) -> ConjectureReport:
    """
    A_emp(n) = max over big lambda and classes with t >= 1 of
    (|chi/d| n^{t/2})^{1/t}, per-class worst values, the big-cycles zero check
    and the uncovered-regime table.
    """
    table = character_table(n)
    big = big_irreps(n)
    ratios = _ratios_by_shape(big, jobs or config.JOBS, progress)
    logger.info(f"Conjecture scan n={n}: {len(big)} big irreps, {len(table.classes)} classes")

    worst = {}
    violations = []
    checked = 0
    for shape in big:
        width, height = width_height(shape)
        for j, ratio, chi in ratios[shape]:
            cycle_type = table.classes[j]
            t = perm_stats(cycle_type).transposition_length
            root = _root(ratio, t)
            if j not in worst or root > worst[j][1]:
                worst[j] = (ratio, root, shape)
            # a ribbon spans at most width + height - 1 cells
            if cycle_type[0] >= width + height:
                checked += 1
                if chi != 0:
                    violations.append((shape, cycle_type))

    class_ratios = []
    for j in sorted(worst):
        cycle_type = table.classes[j]
        stats = perm_stats(cycle_type)
        ratio, root, shape = worst[j]
        class_ratios.append(ClassRatio(cycle_type, stats.support, stats.transposition_length, ratio, root, shape))

    best = max(class_ratios, key=lambda row: row.root, default=None)
    restricted = [shape for shape in big if _is_restricted(shape)]
    a_restricted = max(
        (_root(ratio, perm_stats(table.classes[j]).transposition_length)
         for shape in restricted for j, ratio, _ in ratios[shape]),
        default=0.0,
    )

    if violations:
        logger.error(f"Big-cycles check failed at n={n}: {len(violations)} non-zero characters")

    report = ConjectureReport(
        n=n,
        big_count=len(big),
        class_ratios=class_ratios,
        a_emp=best.root if best else 0.0,
        extremal=(best.shape, best.cycle_type) if best else (),
        restricted_count=len(restricted),
        a_emp_restricted=a_restricted,
        forced_zero_checked=checked,
        forced_zero_violations=violations,
        uncovered=uncovered_regime(class_ratios, n, beta),
        beta=beta,
    )
    logger.info(f"A_emp({n}) = {report.a_emp:.6f} at {report.extremal and tuple(map(str, report.extremal))}")
    return report


def uncovered_regime(class_ratios, n: int, beta: float = DEFAULT_BETA) -> list:
    """
    Classes neither the constant-support nor the large-support argument
    covers: support between (ln n)^{1-beta} and sqrt(n) ln n, and no cycle as
    long as 8 sqrt(n) ln n.
    """
    if n < 2:
        return []
    lower = log(n) ** (1 - beta)
    upper = _log_scale(n)
    return [
        row for row in class_ratios
        if lower <= row.support <= upper and row.cycle_type[0] < 8 * upper
    ]


# large-support bound ------------------------------------------------------------

@dataclass
class LargeSupportReport:
    n: int
    rows: list  # (shape, class, |chi/d|, combinatorial bound, closed-form bound, in regime)
    combinatorial_violations: int
    closed_form_violations: int

    @property
    def passed(self) -> bool:
        return not self.combinatorial_violations and not self.closed_form_violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "combinatorial_violations": self.combinatorial_violations,
            "closed_form_violations": self.closed_form_violations,
            "rows": [
                {"shape": str(s), "class": str(c), "ratio": r, "combinatorial": b1, "closed_form": b2, "in_regime": reg}
                for s, c, r, b1, b2, reg in self.rows
            ],
        }


def large_support_bound(n: int) -> LargeSupportReport:
    """
    |chi/d| against (2n)^{c/2} sqrt((n-s)!) / d, from at most sqrt(2n) ribbon
    positions per cycle, and the closed form 2 e^{sqrt(n) ln n} (sqrt(2) e)^t n^{-t/2}
    valid for big lambda. Rows are kept for support above sqrt(n) ln n, where
    the closed form is the operative bound; violations are counted everywhere.
    """
    table = character_table(n)
    scale = _log_scale(n)
    guard = 1 + config.GUARD_BAND
    rows = []
    combinatorial_violations = closed_violations = 0
    with mpmath.workdps(config.PRECISION_DIGITS):
        for shape in big_irreps(n):
            d = dimension(shape)
            for cycle_type in table.classes:
                stats = perm_stats(cycle_type)
                if stats.transposition_length == 0:
                    continue
                ratio = abs(mpmath.mpf(table.value(shape, cycle_type))) / d
                combinatorial = (
                    mpmath.power(2 * n, mpmath.mpf(stats.nontrivial_cycles) / 2)
                    * mpmath.sqrt(factorial(n - stats.support)) / d
                )
                closed = (
                    2 * mpmath.exp(scale) * mpmath.power(mpmath.sqrt(2) * mpmath.e, stats.transposition_length)
                    * mpmath.power(n, -mpmath.mpf(stats.transposition_length) / 2)
                )
                combinatorial_violations += ratio > combinatorial * guard
                closed_violations += ratio > closed * guard
                in_regime = stats.support > scale
                if in_regime:
                    rows.append((shape, cycle_type, float(ratio), float(combinatorial), float(closed), in_regime))
    if combinatorial_violations or closed_violations:
        logger.error(f"Large-support bound fails at n={n}")
    return LargeSupportReport(n, rows, combinatorial_violations, closed_violations)


# smoothness -------------------------------------------------------------------------

@dataclass
class SmoothnessReport:
    n: int
    max_ratio: float  # max over big lambda of f / sqrt(n)
    argmax: object
    max_smoothness: Fraction
    restricted_max_ratio: float
    restricted_argmax: object
    max_dimension_shape: object
    max_dimension_smoothness: Fraction

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_smoothness": str(self.max_smoothness),
            "max_ratio": self.max_ratio,
            "argmax": str(self.argmax),
            "restricted_max_ratio": self.restricted_max_ratio,
            "restricted_argmax": str(self.restricted_argmax) if self.restricted_argmax else None,
            "max_dimension_shape": str(self.max_dimension_shape),
            "max_dimension_smoothness": str(self.max_dimension_smoothness),
        }


def smoothness_scan(n: int) -> SmoothnessReport:
    """Empirical constant of f_lambda = O(sqrt n) over the big irreps"""
    big = big_irreps(n)
    values = {shape: smoothness(shape) for shape in big}
    if not values:
        raise ValueError(f"No big irreps at n={n}")
    argmax = max(big, key=values.get)
    restricted = [shape for shape in big if _is_restricted(shape)]
    restricted_argmax = max(restricted, key=values.get, default=None)
    largest = max_dimension(n).shape
    return SmoothnessReport(
        n=n,
        max_ratio=float(values[argmax]) / sqrt(n),
        argmax=argmax,
        max_smoothness=values[argmax],
        restricted_max_ratio=float(values[restricted_argmax]) / sqrt(n) if restricted_argmax else 0.0,
        restricted_argmax=restricted_argmax,
        max_dimension_shape=largest,
        max_dimension_smoothness=smoothness(largest),
    )


@dataclass
class ChainReport:
    n: int
    a_emp: float
    envelope: float  # q_n(A^4 / n^2)
    max_smoothness: Fraction
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n, "a_emp": self.a_emp, "q_n(A^4/n^2)": self.envelope,
            "max_smoothness": str(self.max_smoothness), "violations": [str(s) for s in self.violations],
        }


def fqn_chain_check(n: int, a_emp: float = None) -> ChainReport:
    """f_lambda <= q_n(A_emp^4 / n^2) for every big lambda"""
    if a_emp is None:
        a_emp = conjecture_scan(n).a_emp
    with mpmath.workdps(config.PRECISION_DIGITS):
        envelope = qn_polynomial(n)(mpmath.mpf(a_emp) ** 4 / n ** 2)
        limit = envelope * (1 + config.GUARD_BAND)
        values = {shape: smoothness(shape) for shape in big_irreps(n)}
        violations = [shape for shape, f in values.items() if _mpf(f) > limit]
    if violations:
        logger.error(f"Smoothness chain fails at n={n} for {len(violations)} irreps")
    return ChainReport(n, a_emp, float(envelope), max(values.values()), violations)


# closure and width -------------------------------------------------------------------

@dataclass
class ClosureReport:
    n: int
    pairs: int
    max_escaping_mass: Fraction
    argmax: tuple

    def to_json(self) -> dict:
        return {
            "n": self.n, "pairs": self.pairs, "max_escaping_mass": str(self.max_escaping_mass),
            "argmax": [str(s) for s in self.argmax] if self.argmax else None,
        }


def really_big_closure_check(n: int) -> ClosureReport:
    """Largest natural-distribution mass on non-really-big tau over really-big pairs"""
    really_big = [shape for shape in enumerate_partitions(n) if is_really_big(shape)]
    small = {shape for shape in enumerate_partitions(n) if not is_really_big(shape)}
    worst, argmax, pairs = Fraction(0), (), 0
    for lam, mu in combinations_with_replacement(really_big, 2):
        pairs += 1
        distribution = natural_distribution(lam, mu)
        mass = sum((distribution[tau] for tau in small), Fraction(0))
        if mass > worst or not argmax:
            worst, argmax = mass, (lam, mu)
    logger.info(f"Really-big closure n={n}: {pairs} pairs, max escaping mass {float(worst):.3g}")
    return ClosureReport(n, pairs, worst, argmax)


@dataclass
class WidthReport:
    n: int
    max_width: int
    max_height: int
    bound: float

    @property
    def passed(self) -> bool:
        return self.n < 3 or (self.max_width < self.bound and self.max_height < self.bound)

    def to_json(self) -> dict:
        return {"n": self.n, "max_width": self.max_width, "max_height": self.max_height,
                "bound": self.bound, "passed": self.passed}


def width_check(n: int) -> WidthReport:
    """Widest and tallest big diagrams against 4 sqrt(n) ln n"""
    sizes = [width_height(shape) for shape in big_irreps(n)]
    report = WidthReport(
        n, max((w for w, _ in sizes), default=0), max((h for _, h in sizes), default=0), 4 * _log_scale(n)
    )
    if not report.passed:
        logger.error(f"Width bound fails at n={n}: {report.max_width}x{report.max_height} vs {report.bound:.3f}")
    return report


# collision bound --------------------------------------------------------------------

@dataclass
class CollisionReport:
    n: int
    pairs: int
    max_collision: Fraction
    violations: list  # quadruples above the smoothness bound
    envelope_violations: list  # above e^{-(c/2) sqrt n} sqrt(max f)
    envelope: float

    @property
    def passed(self) -> bool:
        return not self.violations and not self.envelope_violations

    def to_json(self) -> dict:
        return {
            "n": self.n, "pairs": self.pairs, "max_collision": str(self.max_collision),
            "envelope": self.envelope,
            "violations": [[str(s) for s in quad] for quad in self.violations],
            "envelope_violations": [[str(s) for s in quad] for quad in self.envelope_violations],
        }


def collision_bound_check(n: int) -> CollisionReport:
    """
    Every collision of two big pairs against the smoothness bound and
    against e^{-(c_emp/2) sqrt n} sqrt(max f), the latter from the empirical c_emp.
    """
    big = big_irreps(n)
    pairs = list(combinations_with_replacement(big, 2))
    guard = 1 + config.GUARD_BAND
    largest = max_dimension(n)
    with mpmath.workdps(config.PRECISION_DIGITS):
        max_f = max(smoothness(shape) for shape in big)
        envelope = mpmath.exp(-largest.c_hat_emp / 2 * mpmath.sqrt(n)) * mpmath.sqrt(_mpf(max_f))
        violations, envelope_violations = [], []
        worst = Fraction(0)
        for (lam, mu), (lam2, mu2) in combinations_with_replacement(pairs, 2):
            p = collision_probability(lam, mu, lam2, mu2)
            worst = max(worst, p)
            value = _mpf(p)
            if value > collision_bound(lam, mu, lam2, mu2) * guard:
                violations.append((lam, mu, lam2, mu2))
            if value > envelope * guard:
                envelope_violations.append((lam, mu, lam2, mu2))
    if violations or envelope_violations:
        logger.error(f"Collision bound fails at n={n}: {len(violations)} / {len(envelope_violations)} quadruples")
    return CollisionReport(n, len(pairs), worst, violations, envelope_violations, float(envelope))
