import sys

from analysis.experiments import homogeneous_rate_experiment
from analysis.scans import (
    collision_bound_check, conjecture_scan, large_support_bound, really_big_closure_check,
    smoothness_scan, width_check,
)
from combinatorics.distributions import max_dimension, plancherel_mass_not_really_big
from commands.decorators import audit_log, exit_on_error
from commands.run_config import RunConfig, parse_policy_params
from sieve.exact import tv_distance
from sieve.forest import enumerate_forests
from config.settings import config
from utils.formatting import render, write_csv
from utils.logging_utils import get_logger
from wreath.distributions import leaf_homogeneous_probability

logger = get_logger(__name__)


def _smoothness(n: int) -> tuple:
    report = smoothness_scan(n)
    return report, {"n": n, "max_f": report.max_smoothness, "max_f/sqrt(n)": report.max_ratio,
                    "argmax": report.argmax, "restricted_max_f/sqrt(n)": report.restricted_max_ratio,
                    "max_dim_shape": report.max_dimension_shape, "max_dim_f": report.max_dimension_smoothness}


def _closure(n: int) -> tuple:
    report = really_big_closure_check(n)
    return report, {"n": n, "pairs": report.pairs, "max_escaping_mass": report.max_escaping_mass}


def _width(n: int) -> tuple:
    report = width_check(n)
    return report, report.to_json()


def _collision(n: int) -> tuple:
    report = collision_bound_check(n)
    return report, {"n": n, "pairs": report.pairs, "max_collision": report.max_collision,
                    "envelope": report.envelope, "violations": len(report.violations),
                    "envelope_violations": len(report.envelope_violations)}


def _conjecture(n: int) -> tuple:
    report = conjecture_scan(n, jobs=config.JOBS)
    return report, {"n": n, "big": report.big_count, "a_emp": report.a_emp,
                    "extremal": " @ ".join(str(x) for x in report.extremal),
                    "a_emp_restricted": report.a_emp_restricted, "uncovered_classes": len(report.uncovered),
                    "forced_zero_violations": len(report.forced_zero_violations)}


def _large_support(n: int) -> tuple:
    report = large_support_bound(n)
    return report, {"n": n, "rows": len(report.rows), "combinatorial_violations": report.combinatorial_violations,
                    "closed_form_violations": report.closed_form_violations}


def _leaf_mass(n: int) -> tuple:
    largest = max_dimension(n)
    report = {"n": n, "homogeneous_leaf_mass": leaf_homogeneous_probability(n),
              "max_dim_shape": largest.shape, "max_dimension": largest.dimension, "c_emp": largest.c_hat_emp}
    return report, report


def _plancherel_tail(n: int) -> tuple:
    report = plancherel_mass_not_really_big(n)
    return report, report


def _tv(n: int) -> tuple:
    reports = [tv_distance(forest, n) for forest in enumerate_forests(2, config.MAX_ENUMERATION_NODES)]
    return reports, [report.to_json() for report in reports]


ANALYSES = {
    "smoothness": _smoothness,
    "closure": _closure,
    "width": _width,
    "collision": _collision,
    "conjecture": _conjecture,
    "large-support": _large_support,
    "leaf-mass": _leaf_mass,
    "plancherel-tail": _plancherel_tail,
    "tv": _tv,
}


@exit_on_error
@audit_log
def cmd_analyze(what: str, n_values, fmt: str = "json", as_float: bool = False, out=None) -> int:
    out = out or sys.stdout
    if what not in ANALYSES:
        raise ValueError(f"Unknown analysis {what!r} (choose from {', '.join(ANALYSES)}, rates)")
    reports, rows = [], []
    for n in n_values:
        report, row = ANALYSES[what](n)
        reports.append(report)
        rows.extend(row if isinstance(row, list) else [row])
    out.write(render({"analysis": what, "reports": reports}, fmt, rows=rows, as_float=as_float))
    return 0


@exit_on_error
@audit_log
def cmd_rates(run_config: RunConfig, n_values, csv_out=None, jobs: int = None, progress: bool = False,
              as_float: bool = False, out=None) -> int:
    """Homogeneous-observation rates under the trivial hypothesis, one row per n"""
    out = out or sys.stdout
    run_config.validate()
    report = homogeneous_rate_experiment(list(n_values), run_config.leaf_count, run_config.policy,
                                         run_config.runs, run_config.seed, run_config.policy_params,
                                         jobs=jobs, progress=progress)
    if csv_out:
        write_csv(csv_out, report.trend_rows())
        logger.info(f"Wrote trend data to {csv_out}")
    rows = [row.to_json() for row in report.rows]
    out.write(render(report, run_config.format, rows=rows, as_float=as_float))
    return 0


def _handle(args, run_config) -> int:
    low = high = run_config.n
    low = args.n_min if args.n_min is not None else low
    high = args.n_max if args.n_max is not None else high
    n_values = range(low, high + 1)
    if args.what == "rates":
        run_config.command = "rates"
        run_config.policy_params = {**run_config.policy_params, **parse_policy_params(args.policy_param)}
        return cmd_rates(run_config, n_values, csv_out=args.csv_out, jobs=args.jobs,
                         progress=args.progress, as_float=args.float)
    return cmd_analyze(args.what, n_values, fmt=run_config.format, as_float=args.float)


def register_analyze_command(subparsers, parent):
    parser = subparsers.add_parser("analyze", parents=[parent], help="Finite-n scans and rate experiments")
    parser.add_argument("what", choices=sorted([*ANALYSES, "rates"]))
    parser.add_argument("--n-min", type=int)
    parser.add_argument("--n-max", type=int)
    parser.add_argument("--policy-param", action="append", metavar="KEY=VALUE")
    parser.add_argument("--csv-out", help="Write (n, rate, bound) trend rows to this CSV file")
    parser.set_defaults(handler=_handle)
