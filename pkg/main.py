#!/usr/bin/env python3
"""
Clebsch-Gordan Sieve Toolkit - Main Entry Point
Character tables, sieve simulation, exact transcript scoring and verification
for S_n wr Z_2
"""
import argparse
import sys

from combinatorics import characters
from commands.decorators import EXIT_USAGE
from commands.registry import register_all_commands
from commands.run_config import RunConfig
from config.settings import config
from utils.errors import ConfigError
from utils.formatting import FORMATS
from utils.logging_utils import setup_logging
from wreath.classes import SubgroupSpec

# flag -> RunConfig field
RUN_FLAGS = {
    "n": "n",
    "leaves": "leaf_count",
    "policy": "policy",
    "subgroup": "subgroup",
    "seed": "seed",
    "runs": "runs",
    "format": "format",
    "cache_dir": "cache_dir",
    "budget_max_exact_n": "max_exact_n",
    "budget_max_dense_side": "max_dense_side",
    "budget_max_enumeration_nodes": "max_enumeration_nodes",
}


def common_arguments() -> argparse.ArgumentParser:
    """Flags shared by every command; None means 'not given on the command line'"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--n", type=int, help="Symmetric group degree")
    parent.add_argument("--leaves", type=int, help="Number of coset-state leaves")
    parent.add_argument("--policy", help="Selection policy: random, greedy or fixed")
    parent.add_argument("--subgroup", choices=[s.value for s in SubgroupSpec])
    parent.add_argument("--seed", type=int)
    parent.add_argument("--runs", type=int)
    parent.add_argument("--format", choices=FORMATS)
    parent.add_argument("--cache-dir", help="Directory for the persistent character cache")
    parent.add_argument("--jobs", type=int, help="Worker processes")
    parent.add_argument("--budget-max-exact-n", type=int)
    parent.add_argument("--budget-max-dense-side", type=int)
    parent.add_argument("--budget-max-enumeration-nodes", type=int)
    parent.add_argument("--config", help="Flat key = value run configuration file")
    parent.add_argument("--save-config", help="Write the effective run configuration to this file")
    parent.add_argument("--float", action="store_true", help="Print floats instead of exact fractions")
    parent.add_argument("--progress", action="store_true", help="Show progress bars")
    parent.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    return parent


def parse_arguments(argv=None):
    """Parse command line arguments"""
    parser = argparse.ArgumentParser(description="Clebsch-Gordan sieve toolkit for S_n wr Z_2")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_all_commands(subparsers, common_arguments())
    return parser.parse_args(argv)


def build_run_config(args) -> RunConfig:
    """defaults < environment < config file < flags"""
    run_config = RunConfig.load(args.config) if args.config else RunConfig()
    for flag, name in RUN_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            setattr(run_config, name, value)
    run_config.command = args.command
    run_config.validate()
    run_config.apply_budgets()
    if args.jobs is not None:
        config.apply({"JOBS": args.jobs})
    if args.save_config:
        run_config.save(args.save_config)
    return run_config


def main(argv=None) -> int:
    args = parse_arguments(argv)
    logger = setup_logging(args.log_level)
    try:
        run_config = build_run_config(args)
    except (ConfigError, ValueError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_USAGE
    # settings from --config may change the level or add the audit file
    logger = setup_logging(args.log_level)

    try:
        characters.configure_cache(config.CACHE_DIR or None)
        logger.debug(f"Running {args.command} with {run_config}")
        return args.handler(args, run_config)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
    finally:
        characters.character_cache.close()


if __name__ == "__main__":
    sys.exit(main())
