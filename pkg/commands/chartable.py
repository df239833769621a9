import sys

from combinatorics.characters import character_table
from combinatorics.partitions import dimension
from commands.decorators import audit_log, exit_on_error
from utils.formatting import render
from utils.logging_utils import get_logger
from wreath.irreps import wreath_character_table

logger = get_logger(__name__)


def chartable_report(n: int) -> dict:
    table = character_table(n)
    return {
        "n": n,
        "order": table.order,
        "shapes": [str(shape) for shape in table.shapes],
        "classes": [str(cls) for cls in table.classes],
        "class_sizes": list(table.class_sizes),
        "dimensions": [dimension(shape) for shape in table.shapes],
        "values": [list(row) for row in table.values],
    }


def wreath_chartable_report(n: int) -> dict:
    table = wreath_character_table(n)
    return {
        "n": n,
        "order": table.order,
        "irreps": [str(sigma) for sigma in table.irreps],
        "classes": [str(cls) for cls in table.classes],
        "class_sizes": [cls.size for cls in table.classes],
        "dimensions": [sigma.dimension for sigma in table.irreps],
        "values": [list(row) for row in table.values],
    }


def chartable_rows(report: dict) -> list:
    """One row per irrep: label, dimension, then a column per class"""
    labels = report.get("shapes", report.get("irreps"))
    rows = [{"irrep": "|C|", "dim": "", **dict(zip(report["classes"], report["class_sizes"]))}]
    for label, dim, values in zip(labels, report["dimensions"], report["values"]):
        rows.append({"irrep": label, "dim": dim, **dict(zip(report["classes"], values))})
    return rows


@exit_on_error
@audit_log
def cmd_chartable(n: int, fmt: str = "json", wreath: bool = False, out=None) -> int:
    """
    Full character table with class sizes and dimensions, rows and columns in
    reverse-lexicographic order.
    """
    out = out or sys.stdout
    report = wreath_chartable_report(n) if wreath else chartable_report(n)
    logger.info(f"Character table for n={n} ({'wreath' if wreath else 'symmetric'}): {len(report['values'])} irreps")
    out.write(render(report, fmt, rows=chartable_rows(report)))
    return 0


def _handle(args, run_config) -> int:
    return cmd_chartable(run_config.n, run_config.format, wreath=args.wreath)


def register_chartable_command(subparsers, parent):
    parser = subparsers.add_parser("chartable", parents=[parent], help="Print a character table")
    parser.add_argument("--wreath", action="store_true", help="Table of S_n wr Z_2 instead of S_n")
    parser.set_defaults(handler=_handle)
