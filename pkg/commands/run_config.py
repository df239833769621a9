"""
Per-invocation settings of a command, stored in the same flat key = value
format as the toolkit configuration file.
"""
import json
from dataclasses import asdict, dataclass, field, fields

from config.settings import config, read_flat_file, write_flat_file
from utils.errors import ConfigError
from utils.formatting import FORMATS
from wreath.classes import SubgroupSpec

STOCHASTIC_COMMANDS = ("sieve-run", "rates")


@dataclass
class RunConfig:
    command: str = ""
    n: int = 3
    leaf_count: int = 2
    policy: str = "random"
    policy_params: dict = field(default_factory=dict)
    subgroup: str = SubgroupSpec.TRIVIAL.value
    seed: int = None
    runs: int = 1
    max_exact_n: int = None
    max_dense_side: int = None
    max_enumeration_nodes: int = None
    format: str = "json"
    cache_dir: str = ""

    def validate(self):
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        if self.leaf_count < 1 or self.runs < 1:
            raise ConfigError("leaf_count and runs must be positive")
        for name in ("max_exact_n", "max_dense_side", "max_enumeration_nodes"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown format {self.format!r}")
        SubgroupSpec.parse(self.subgroup)
        if self.command in STOCHASTIC_COMMANDS and self.seed is None:
            raise ConfigError(f"Command {self.command} needs a seed")
        return self

    def budget_overrides(self) -> dict:
        """Budget fields that were set, as Config overrides"""
        overrides = {
            "MAX_EXACT_N": self.max_exact_n,
            "MAX_DENSE_SIDE": self.max_dense_side,
            "MAX_ENUMERATION_NODES": self.max_enumeration_nodes,
        }
        if self.cache_dir:
            overrides["CACHE_DIR"] = self.cache_dir
        return {key: value for key, value in overrides.items() if value is not None}

    def apply_budgets(self):
        config.apply(self.budget_overrides())

    def to_flat(self) -> dict:
        values = {}
        for name, value in asdict(self).items():
            if value is None:
                continue
            values[name] = json.dumps(value, sort_keys=True) if name == "policy_params" else value
        return values

    def save(self, path):
        write_flat_file(path, self.to_flat())

    @classmethod
    def from_flat(cls, values: dict) -> tuple:
        """(RunConfig, leftover keys) from parsed key = value pairs"""
        known = {f.name: f for f in fields(cls)}
        kwargs, leftover = {}, {}
        for key, raw in values.items():
            if key not in known:
                leftover[key] = raw
                continue
            kwargs[key] = _parse_field(key, raw)
        return cls(**kwargs), leftover

    @classmethod
    def load(cls, path) -> "RunConfig":
        """Read a run file; keys that are toolkit settings go to the global config"""
        run_config, leftover = cls.from_flat(read_flat_file(path))
        if leftover:
            config.apply(leftover)
        return run_config


_INT_FIELDS = {"n", "leaf_count", "seed", "runs", "max_exact_n", "max_dense_side", "max_enumeration_nodes"}


def _parse_field(name: str, raw):
    if not isinstance(raw, str):
        return raw
    try:
        if name in _INT_FIELDS:
            return int(raw)
        if name == "policy_params":
            params = json.loads(raw)
            if not isinstance(params, dict):
                raise ValueError("expected a JSON object")
            return params
    except ValueError as e:
        raise ConfigError(f"Invalid value for {name}: {raw!r} ({e})")
    return raw


def parse_policy_params(items) -> dict:
    """key=value pairs from repeated --policy-param flags; values parsed as JSON when possible"""
    params = {}
    for item in items or ():
        if "=" not in item:
            raise ConfigError(f"Policy parameter must be key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            params[key.strip()] = json.loads(value)
        except ValueError:
            params[key.strip()] = value.strip()
    return params
