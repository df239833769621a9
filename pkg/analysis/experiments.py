"""
How often a sieve run sees a homogeneous label, against the exact leaf-level
rate and the e^{-c sqrt n} collision trend. Trivial hidden subgroup only: on
inhomogeneous transcripts the two hypotheses agree, so a run that never sees a
homogeneous label carries no information.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import exp, sqrt

from combinatorics.distributions import max_dimension
from sieve.engine import run_many
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec
from wreath.distributions import collision_probability, leaf_homogeneous_probability

logger = get_logger(__name__)


@dataclass
class RateRow:
    n: int
    runs: int
    leaves: int
    homogeneous_runs: int
    homogeneous_leaves: int
    exact_leaf_rate: Fraction
    max_collision: Fraction
    trend: float  # e^{-c_emp(n) sqrt n}

    @property
    def run_rate(self) -> Fraction:
        return Fraction(self.homogeneous_runs, self.runs)

    @property
    def leaf_rate(self) -> Fraction:
        return Fraction(self.homogeneous_leaves, self.runs * self.leaves)

    @property
    def leaf_sigma(self) -> float:
        p = float(self.exact_leaf_rate)
        return sqrt(p * (1 - p) / (self.runs * self.leaves))

    @property
    def leaf_deviation(self) -> float:
        """|empirical - exact| in units of the binomial standard deviation"""
        sigma = self.leaf_sigma
        gap = abs(float(self.leaf_rate - self.exact_leaf_rate))
        return gap / sigma if sigma else (0.0 if gap == 0 else float("inf"))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "runs": self.runs,
            "leaves": self.leaves,
            "run_rate": str(self.run_rate),
            "leaf_rate": str(self.leaf_rate),
            "exact_leaf_rate": str(self.exact_leaf_rate),
            "leaf_sigma": self.leaf_sigma,
            "max_collision": str(self.max_collision),
            "trend": self.trend,
        }


@dataclass
class RateReport:
    policy: str
    seed: int
    rows: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"policy": self.policy, "seed": self.seed, "rows": [row.to_json() for row in self.rows]}

    def trend_rows(self) -> list:
        """Flat (n, rate, bound) records for CSV export"""
        return [
            {"n": row.n, "run_rate": float(row.run_rate), "leaf_rate": float(row.leaf_rate),
             "exact_leaf_rate": float(row.exact_leaf_rate), "bound": row.trend}
            for row in self.rows
        ]


def _observed_collision(transcript) -> Fraction:
    """Largest S_n collision probability among combines of two inhomogeneous labels"""
    worst = Fraction(0)
    for event in transcript.events:
        first, second = (transcript.labels[node] for node in event.pair)
        if first.is_homogeneous or second.is_homogeneous:
            continue
        worst = max(
            worst,
            collision_probability(first.a, second.a, first.b, second.b),
            collision_probability(first.a, second.b, first.b, second.a),
        )
    return worst


def homogeneous_rate_experiment(n_values, leaf_count: int, policy: str, runs: int, seed: int,
                                policy_params: dict = None, jobs: int = None,
                                progress: bool = False) -> RateReport:
    report = RateReport(policy, seed)
    for n in n_values:
        transcripts = run_many(policy, policy_params or {}, leaf_count, SubgroupSpec.TRIVIAL,
                               n, runs, seed, jobs=jobs, progress=progress)
        row = RateRow(
            n=n,
            runs=runs,
            leaves=leaf_count,
            homogeneous_runs=sum(t.has_homogeneous() for t in transcripts),
            homogeneous_leaves=sum(label.is_homogeneous for t in transcripts for label in t.leaf_labels),
            exact_leaf_rate=leaf_homogeneous_probability(n),
            max_collision=max((_observed_collision(t) for t in transcripts), default=Fraction(0)),
            trend=exp(-max_dimension(n).c_hat_emp * sqrt(n)),
        )
        logger.info(f"n={n}: run rate {float(row.run_rate):.4f}, leaf rate {float(row.leaf_rate):.4f} "
                    f"(exact {float(row.exact_leaf_rate):.4f})")
        report.rows.append(row)
    return report
