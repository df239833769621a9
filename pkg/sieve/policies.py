"""
Selection policies. A policy sees only a transcript snapshot (topology, labels
and event history) and answers with a pair of root ids or STOP.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from utils.errors import ConfigError
from utils.logging_utils import get_logger
from wreath.distributions import wreath_natural_distribution

logger = get_logger(__name__)


class StopAndGuess:
    """Sentinel answer: stop combining"""

    def __repr__(self):
        return "STOP"


STOP = StopAndGuess()


@dataclass(frozen=True)
class TranscriptView:
    """What a policy may look at"""
    n: int
    forest: object
    labels: tuple
    events: tuple

    @property
    def roots(self) -> tuple:
        return self.forest.roots


class SelectionPolicy(ABC):
    name = "policy"

    def __init__(self, max_combines: int = None):
        self.max_combines = max_combines

    def reset(self, run_seed: int):
        """Called once per run before the first selection"""

    def exhausted(self, view: TranscriptView) -> bool:
        if len(view.roots) < 2:
            return True
        return self.max_combines is not None and len(view.events) >= self.max_combines

    @abstractmethod
    def select(self, view: TranscriptView):
        """Return STOP or a pair (a, b) of distinct root ids"""

    def params(self) -> dict:
        return {"max_combines": self.max_combines} if self.max_combines is not None else {}


class RandomPair(SelectionPolicy):
    """Combine a uniformly random pair of roots"""
    name = "random"

    def __init__(self, seed: int = 0, max_combines: int = None):
        super().__init__(max_combines)
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def reset(self, run_seed: int):
        self.rng = np.random.default_rng([self.seed, run_seed])

    def select(self, view: TranscriptView):
        if self.exhausted(view):
            return STOP
        first, second = self.rng.choice(len(view.roots), size=2, replace=False)
        return view.roots[int(first)], view.roots[int(second)]

    def params(self) -> dict:
        return {**super().params(), "seed": self.seed}


class GreedyHomogeneous(SelectionPolicy):
    """Combine the root pair whose natural distribution puts most mass on homogeneous irreps"""
    name = "greedy"

    def select(self, view: TranscriptView):
        if self.exhausted(view):
            return STOP
        best, best_mass = None, -1
        roots = view.roots
        for i, first in enumerate(roots):
            for second in roots[i + 1:]:
                mass = wreath_natural_distribution(view.labels[first], view.labels[second]).homogeneous_mass()
                # first strict maximum in root order breaks ties
                if mass > best_mass:
                    best, best_mass = (first, second), mass
        return best


class FixedSchedule(SelectionPolicy):
    """Replay a given list of root pairs, then stop"""
    name = "fixed"

    def __init__(self, script, max_combines: int = None):
        super().__init__(max_combines)
        self.script = [tuple(pair) for pair in script]

    def select(self, view: TranscriptView):
        step = len(view.events)
        if step >= len(self.script) or self.exhausted(view):
            return STOP
        return self.script[step]

    def params(self) -> dict:
        return {**super().params(), "script": [list(pair) for pair in self.script]}


POLICIES = {
    RandomPair.name: RandomPair,
    GreedyHomogeneous.name: GreedyHomogeneous,
    FixedSchedule.name: FixedSchedule,
}


def builtin_policies(seed: int = 0) -> list:
    return [RandomPair(seed), GreedyHomogeneous(), FixedSchedule([])]


def parse_script(text: str) -> list:
    """"0-1,2-3" -> [(0, 1), (2, 3)]"""
    pairs = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        try:
            first, second = item.split("-")
            pairs.append((int(first), int(second)))
        except ValueError:
            raise ConfigError(f"Malformed schedule entry {item!r} (expected a-b)")
    return pairs


def make_policy(name: str, **params) -> SelectionPolicy:
    if name not in POLICIES:
        raise ConfigError(f"Unknown policy {name!r} (choose from {', '.join(sorted(POLICIES))})")
    if name == FixedSchedule.name and isinstance(params.get("script"), str):
        params["script"] = parse_script(params["script"])
    try:
        return POLICIES[name](**params)
    except TypeError as e:
        raise ConfigError(f"Bad parameters for policy {name!r}: {e}")
