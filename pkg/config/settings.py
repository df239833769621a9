"""
Application configuration settings
"""
import os
from pathlib import Path

from utils.errors import ConfigError

ENV_PREFIX = "CGSIEVE_"


def _env(name: str, default: str) -> str:
    return os.getenv(ENV_PREFIX + name, default)


def _as_bool(value: str) -> bool:
    return str(value).strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Configuration class for the Clebsch-Gordan sieve toolkit"""

    # attribute name -> parser; every knob can come from env, a config file or flags
    FIELDS = {
        "LOG_LEVEL": str,
        "ENABLE_AUDIT_LOG": _as_bool,
        "CACHE_DIR": str,
        "MAX_CHARACTER_N": int,
        "MAX_EXACT_N": int,
        "MAX_CLASS_DP_N": int,
        "MAX_DENSE_SIDE": int,
        "MAX_ENUMERATION_NODES": int,
        "MAX_SIMULATION_LEAVES": int,
        "GUARD_BAND": float,
        "QN_EPSILON": float,
        "PRECISION_DIGITS": int,
        "LOG_BASE": str,
        "JOBS": int,
    }

    def __init__(self):
        # Logging configuration
        self.LOG_LEVEL = _env("LOG_LEVEL", "INFO")
        self.ENABLE_AUDIT_LOG = _as_bool(_env("ENABLE_AUDIT_LOG", "false"))
        self.LOG_FILE = Path(__file__).parent.parent / "logs" / "cgsieve.log"

        # Character cache; empty means in-memory only
        self.CACHE_DIR = _env("CACHE_DIR", "")

        # Budgets
        self.MAX_CHARACTER_N = int(_env("MAX_CHARACTER_N", "20"))
        self.MAX_EXACT_N = int(_env("MAX_EXACT_N", "3"))
        self.MAX_CLASS_DP_N = int(_env("MAX_CLASS_DP_N", "5"))
        self.MAX_DENSE_SIDE = int(_env("MAX_DENSE_SIDE", "10000"))
        self.MAX_ENUMERATION_NODES = int(_env("MAX_ENUMERATION_NODES", "5"))
        self.MAX_SIMULATION_LEAVES = int(_env("MAX_SIMULATION_LEAVES", "64"))

        # Numerics
        self.GUARD_BAND = float(_env("GUARD_BAND", "1e-9"))
        self.QN_EPSILON = float(_env("QN_EPSILON", "0.1"))
        self.PRECISION_DIGITS = int(_env("PRECISION_DIGITS", "30"))
        # "log n" in the big / really-big thresholds
        self.LOG_BASE = _env("LOG_BASE", "e")

        # Worker processes for simulations and scans
        self.JOBS = int(_env("JOBS", "1"))

        self.validate()

    def validate(self):
        budgets = ("MAX_CHARACTER_N", "MAX_EXACT_N", "MAX_CLASS_DP_N", "MAX_DENSE_SIDE",
                   "MAX_ENUMERATION_NODES", "MAX_SIMULATION_LEAVES", "JOBS",
                   "PRECISION_DIGITS")
        for name in budgets:
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.LOG_BASE != "e":
            raise ConfigError(f"Unsupported LOG_BASE {self.LOG_BASE!r} (only natural log)")
        if not 0 < self.GUARD_BAND < 1:
            raise ConfigError(f"GUARD_BAND must lie in (0, 1), got {self.GUARD_BAND}")

    def apply(self, overrides: dict):
        """Apply key/value overrides (strings or typed values)"""
        for key, value in overrides.items():
            name = key.strip().upper()
            if name.startswith(ENV_PREFIX):
                name = name[len(ENV_PREFIX):]
            if name not in self.FIELDS:
                raise ConfigError(f"Unknown configuration key: {key}")
            try:
                setattr(self, name, self.FIELDS[name](value))
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Invalid value for {name}: {value!r} ({e})")
        self.validate()
        return self

    def load_file(self, path):
        """Load a flat key = value file on top of the current settings"""
        return self.apply(read_flat_file(path))

    @property
    def cache_path(self):
        if not self.CACHE_DIR:
            return None
        return Path(self.CACHE_DIR) / "characters.db"

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.FIELDS}


def read_flat_file(path) -> dict:
    """Parse a flat key = value text file; '#' starts a comment"""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


def write_flat_file(path, values: dict):
    lines = [f"{key} = {value}" for key, value in values.items()]
    Path(path).write_text("\n".join(lines) + "\n")


# Global configuration instance
config = Config()
