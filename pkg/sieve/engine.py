"""
Combine-and-measure simulation of the sieve under either hidden subgroup
"""
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from config.settings import config
from sieve.class_algebra import require_exact_budget
from sieve.exact import conditional_label_distribution
from sieve.forest import Forest
from sieve.policies import STOP, SelectionPolicy, TranscriptView, make_policy
from utils.errors import BudgetExceeded, TranscriptFormatError
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec
from wreath.distributions import WreathDistribution, leaf_distribution

logger = get_logger(__name__)


@dataclass(frozen=True)
class Event:
    pair: tuple
    label: object
    node: int


@dataclass
class Transcript:
    n: int
    subgroup: SubgroupSpec
    seed: int
    forest: Forest
    labels: tuple
    events: list = field(default_factory=list)

    @property
    def roots(self) -> tuple:
        return self.forest.roots

    @property
    def nodes(self) -> list:
        return self.forest.nodes(self.labels)

    @property
    def leaf_labels(self) -> tuple:
        return tuple(self.labels[leaf] for leaf in self.forest.leaves)

    def snapshot(self) -> TranscriptView:
        return TranscriptView(self.n, self.forest, self.labels, tuple(self.events))

    def record(self, first: int, second: int, label) -> int:
        self.forest = self.forest.combine(first, second)
        self.labels = self.labels + (label,)
        node = self.forest.node_count - 1
        self.events.append(Event((first, second), label, node))
        return node

    def has_homogeneous(self) -> bool:
        return any(label.is_homogeneous for label in self.labels)

    def label_histogram(self) -> dict:
        counts = {}
        for label in self.labels:
            counts[str(label)] = counts.get(str(label), 0) + 1
        return dict(sorted(counts.items()))


def replay(n: int, leaf_labels, events, subgroup: SubgroupSpec = SubgroupSpec.TRIVIAL, seed: int = 0) -> Transcript:
    """Rebuild a transcript from its leaf labels and combine events"""
    transcript = Transcript(n, subgroup, seed, Forest.of_leaves(len(leaf_labels)), tuple(leaf_labels))
    for event in events:
        first, second = event.pair
        node = transcript.record(first, second, event.label)
        if node != event.node:
            raise TranscriptFormatError(f"Event recorded node {event.node}, replay created {node}")
    transcript.forest.check_laminar()
    return transcript


def sample_label(distribution: WreathDistribution, rng: np.random.Generator):
    """Inverse-CDF draw over the canonical irrep order"""
    u = rng.random()
    cumulative = Fraction(0)
    items = [(sigma, p) for sigma, p in distribution.items() if p]
    for sigma, p in items:
        cumulative += p
        if u < cumulative:
            return sigma
    return items[-1][0]


def _check_simulation_budget(n: int, leaf_count: int, subgroup: SubgroupSpec):
    if leaf_count < 1:
        raise ValueError(f"leaf_count must be >= 1, got {leaf_count}")
    if leaf_count > config.MAX_SIMULATION_LEAVES:
        logger.warning(f"Refusing {leaf_count} leaves (MAX_SIMULATION_LEAVES={config.MAX_SIMULATION_LEAVES})")
        raise BudgetExceeded("max_simulation_leaves", leaf_count, config.MAX_SIMULATION_LEAVES)
    if subgroup is SubgroupSpec.ORDER_TWO:
        require_exact_budget(n, subgroup)


def simulate(policy: SelectionPolicy, leaf_count: int, subgroup: SubgroupSpec, seed: int, n: int) -> Transcript:
    """
    One sieve run. Leaves are weak Fourier samples of coset states; each
    combine draws the new label from its exact conditional distribution given
    the transcript so far. Deterministic given the seed.
    """
    _check_simulation_budget(n, leaf_count, subgroup)
    rng = np.random.default_rng(seed)
    leaves = leaf_distribution(n, subgroup)
    labels = tuple(sample_label(leaves, rng) for _ in range(leaf_count))
    transcript = Transcript(n, subgroup, seed, Forest.of_leaves(leaf_count), labels)
    policy.reset(seed)

    while True:
        choice = policy.select(transcript.snapshot())
        if choice is STOP:
            break
        first, second = choice
        if first == second or first not in transcript.roots or second not in transcript.roots:
            raise TranscriptFormatError(f"Policy {policy.name} chose non-roots {choice}")
        distribution = conditional_label_distribution(transcript.forest, transcript.labels, first, second, subgroup)
        transcript.record(first, second, sample_label(distribution, rng))

    logger.debug(f"Run seed={seed}: {len(transcript.events)} combines, homogeneous={transcript.has_homogeneous()}")
    return transcript


def run_seeds(master_seed: int, runs: int) -> list:
    """Independent per-run seeds spawned from the master seed"""
    return [int(s) for s in np.random.SeedSequence(master_seed).generate_state(runs)]


def _run_job(args) -> tuple:
    """Worker function for parallel execution."""
    index, policy_name, policy_params, leaf_count, subgroup_value, seed, n, overrides = args
    config.apply(overrides)
    policy = make_policy(policy_name, **policy_params)
    return index, simulate(policy, leaf_count, SubgroupSpec(subgroup_value), seed, n)


def run_many(policy_name: str, policy_params: dict, leaf_count: int, subgroup: SubgroupSpec,
             n: int, runs: int, master_seed: int, jobs: int = None, progress: bool = False) -> list:
    """Independent runs in seed order; a process pool when jobs > 1"""
    jobs = jobs or config.JOBS
    seeds = run_seeds(master_seed, runs)
    _check_simulation_budget(n, leaf_count, subgroup)
    logger.info(f"Running {runs} sieve runs: n={n}, leaves={leaf_count}, {subgroup.value}, policy={policy_name}, jobs={jobs}")

    if jobs <= 1:
        iterator = seeds
        if progress:
            from tqdm import tqdm
            iterator = tqdm(seeds, desc="runs")
        results = []
        for seed in iterator:
            policy = make_policy(policy_name, **policy_params)
            results.append(simulate(policy, leaf_count, subgroup, seed, n))
        return results

    overrides = config.as_dict()
    job_args = [
        (i, policy_name, policy_params, leaf_count, subgroup.value, seed, n, overrides)
        for i, seed in enumerate(seeds)
    ]
    results = [None] * runs
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futures = {ex.submit(_run_job, j): j for j in job_args}
        for f in as_completed(futures):
            index, transcript = f.result()
            results[index] = transcript
    return results
