from commands.analyze import register_analyze_command
from commands.chartable import register_chartable_command
from commands.score import register_score_command
from commands.sieve_run import register_sieve_run_command
from commands.verify import register_verify_command


def register_all_commands(subparsers, parent):
    """
    Registers all commands with the argument parser.
    """
    register_chartable_command(subparsers, parent)
    register_sieve_run_command(subparsers, parent)
    register_score_command(subparsers, parent)
    register_verify_command(subparsers, parent)
    register_analyze_command(subparsers, parent)
