"""
Verification suites. Every check yields a named record; the command exits 1
when any of them fails.
"""
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from analysis.qn import brute_force_qn, BRUTE_FORCE_MAX_N, qn_bound_check, qn_coefficient_check, qn_polynomial
from analysis.scans import conjecture_scan, fqn_chain_check, large_support_bound, width_check
from combinatorics.characters import character_table
from combinatorics.distributions import natural_distribution, plancherel, threshold_near_ties
from combinatorics.partitions import dimension, enumerate_partitions, standard_tableaux_count
from commands.decorators import audit_log, exit_on_error
from config.settings import config
from oracle.group_table import wreath_group_table, wreath_involution
from oracle.operators import h_invariance_defect, oracle_transcript_probability
from sieve.exact import enumerate_labelings, single_leaf_check, transcript_probability, tv_distance
from sieve.forest import Forest, enumerate_forests
from utils.errors import CharacterTableError, VerificationFailed
from utils.formatting import render
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec
from wreath.distributions import hidden_subgroup_mass, leaf_distribution, leaf_homogeneous_probability
from wreath.irreps import wreath_character_table, wreath_irreps

logger = get_logger(__name__)

ORACLE_TOLERANCE = 1e-9
# dense sides used for exhaustive oracle sweeps; larger sides are spot checks
ORACLE_FULL_SIDE = 64
WREATH_TABLE_MAX_N = 6
SUITE_DEFAULTS = {
    "oracle": (2, 2),
    "identities": (1, 6),
    "conjecture": (3, 8),
    "qn": (1, 10),
}


@dataclass
class Check:
    name: str
    n: int
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"check": self.name, "n": self.n, "passed": self.passed, **self.detail}


def _raises(func) -> str:
    """'' when func() succeeds, else the CharacterTableError message"""
    try:
        func()
    except CharacterTableError as e:
        return str(e)
    return ""


# oracle -----------------------------------------------------------------------------

def oracle_suite(n: int) -> list:
    group = wreath_group_table(n)
    m = wreath_involution(group)
    checks = [
        Check("group_axioms", n, group.check_associativity() and group.check_inverses() and group.check_classes()),
        Check("group_characters", n, not _raises(group.check_characters)),
    ]

    max_leaves = 1
    while group.order ** (max_leaves + 1) <= ORACLE_FULL_SIDE:
        max_leaves += 1
    worst_gap, worst_defect, compared = 0.0, 0.0, 0
    for forest in enumerate_forests(max_leaves, config.MAX_ENUMERATION_NODES):
        for labels in enumerate_labelings(forest, n, supported_only=False):
            for subgroup in SubgroupSpec:
                exact = transcript_probability(forest, labels, subgroup)
                dense = oracle_transcript_probability(group, forest, labels, subgroup, m)
                worst_gap = max(worst_gap, abs(float(exact) - dense))
                compared += 1
            worst_defect = max(worst_defect, h_invariance_defect(group, forest, labels, m))
    checks.append(Check("oracle_equivalence", n, worst_gap <= ORACLE_TOLERANCE,
                        {"max_gap": worst_gap, "compared": compared, "max_leaves": max_leaves}))
    checks.append(Check("h_invariance", n, worst_defect <= ORACLE_TOLERANCE, {"max_defect": worst_defect}))
    return checks


# identities ------------------------------------------------------------------------

def _symmetric_checks(n: int) -> list:
    table = character_table(n)
    shapes = enumerate_partitions(n)
    pairs_ok = all(
        natural_distribution(a, b).total() == 1 for i, a in enumerate(shapes) for b in shapes[i:]
    )
    return [
        Check("row_orthogonality", n, not _raises(table.check_row_orthogonality)),
        Check("column_orthogonality", n, not _raises(table.check_column_orthogonality)),
        Check("character_dimensions", n, not _raises(table.check_dimensions)),
        Check("sum_of_squares", n, sum(dimension(s) ** 2 for s in shapes) == factorial(n)),
        Check("branching_rule", n, all(standard_tableaux_count(s) == dimension(s) for s in shapes)),
        Check("plancherel_normalized", n, plancherel(n).total() == 1),
        Check("natural_normalized", n, pairs_ok),
        Check("qn_coefficients", n, qn_coefficient_check(n)),
        Check("no_threshold_ties", n, n < 2 or not threshold_near_ties(n),
              {"ties": [str(s) for s in threshold_near_ties(n)] if n >= 2 else []}),
    ]


def _wreath_checks(n: int) -> list:
    table = wreath_character_table(n)
    trivial = leaf_distribution(n, SubgroupSpec.TRIVIAL)
    hidden = leaf_distribution(n, SubgroupSpec.ORDER_TWO)
    inhomogeneous = [sigma for sigma in wreath_irreps(n) if not sigma.is_homogeneous]
    return [
        Check("wreath_orthogonality", n, not _raises(table.check_orthogonality)),
        Check("wreath_class_sizes", n, not _raises(table.check_class_sizes)),
        Check("wreath_dimensions", n, not _raises(table.check_dimensions)),
        Check("leaf_homogeneous_mass", n, trivial.homogeneous_mass() == leaf_homogeneous_probability(n),
              {"mass": trivial.homogeneous_mass()}),
        Check("missing_harmonics_inhomogeneous", n,
              all(hidden_subgroup_mass(sigma) == trivial[sigma] for sigma in inhomogeneous)),
        Check("hidden_normalized", n, hidden.total() == 1),
    ]


def _sieve_checks(n: int) -> list:
    checks = [
        Check(f"single_leaf_{subgroup.value}", n, not single_leaf_check(n, subgroup)) for subgroup in SubgroupSpec
    ]
    single = tv_distance(Forest.of_leaves(1), n)
    expected = Fraction(sum(dimension(s) ** 3 for s in enumerate_partitions(n)), 2 * factorial(n) ** 2)
    checks.append(Check("single_leaf_tv", n, single.distance == expected,
                        {"tv": single.distance, "expected": expected}))
    for forest in enumerate_forests(3, config.MAX_ENUMERATION_NODES):
        report = tv_distance(forest, n)
        checks.append(Check("normalization", n, report.total_trivial == 1 and report.total_order_two == 1,
                            {"forest": report.forest}))
        checks.append(Check("inhomogeneous_equality", n, report.inhomogeneous_distance == 0,
                            {"forest": report.forest, "tv": report.distance}))
    return checks


def identities_suite(n: int) -> list:
    checks = _symmetric_checks(n)
    if n <= WREATH_TABLE_MAX_N:
        checks += _wreath_checks(n)
    if n <= config.MAX_EXACT_N:
        checks += _sieve_checks(n)
    return checks


# conjecture and q_n --------------------------------------------------------------

def conjecture_suite(n: int) -> list:
    scan = conjecture_scan(n)
    large = large_support_bound(n)
    width = width_check(n)
    chain = fqn_chain_check(n, scan.a_emp)
    return [
        Check("a_emp_finite", n, scan.finite, {
            "a_emp": scan.a_emp, "a_emp_restricted": scan.a_emp_restricted,
            "extremal": [str(x) for x in scan.extremal], "uncovered_classes": len(scan.uncovered),
        }),
        Check("big_cycles_zero", n, not scan.forced_zero_violations, {"checked": scan.forced_zero_checked}),
        Check("large_support_bound", n, large.passed, {
            "combinatorial_violations": large.combinatorial_violations,
            "closed_form_violations": large.closed_form_violations,
        }),
        Check("width", n, width.passed, width.to_json()),
        Check("smoothness_chain", n, chain.passed, {"envelope": chain.envelope}),
    ]


def qn_suite(n: int) -> list:
    poly = qn_polynomial(n)
    checks = [Check("qn_coefficients", n, qn_coefficient_check(n), {"q_n": str(poly)})]
    if n <= BRUTE_FORCE_MAX_N:
        checks.append(Check("qn_brute_force", n, brute_force_qn(n) == poly))
    if n >= 2:
        for label, z in (("n^-2", Fraction(1, n * n)), ("n^-3/2", Fraction(n ** -1.5).limit_denominator(10 ** 9))):
            report = qn_bound_check(n, z)
            checks.append(Check(f"qn_envelope_{label}", n, report.passed, {"ratio": report.ratio}))
    return checks


SUITES = {
    "oracle": oracle_suite,
    "identities": identities_suite,
    "conjecture": conjecture_suite,
    "qn": qn_suite,
}


def run_suite(suite: str, n_values) -> list:
    if suite not in SUITES:
        raise ValueError(f"Unknown suite {suite!r} (choose from {', '.join(SUITES)})")
    checks = []
    for n in n_values:
        logger.info(f"Verifying {suite} at n={n}")
        checks.extend(SUITES[suite](n))
    return checks


@exit_on_error
@audit_log
def cmd_verify(suite: str, n_values, fmt: str = "json", out=None) -> int:
    out = out or sys.stdout
    checks = run_suite(suite, list(n_values))
    failed = [check for check in checks if not check.passed]
    report = {"suite": suite, "passed": not failed, "checks": checks}
    rows = [{"check": c.name, "n": c.n, "passed": c.passed} for c in checks]
    out.write(render(report, fmt, rows=rows))
    if failed:
        raise VerificationFailed(failed[0].name, f"n={failed[0].n}, {len(failed)} failing checks")
    return 0


def _handle(args, run_config) -> int:
    low, high = SUITE_DEFAULTS[args.suite]
    if args.n is not None:
        low = high = args.n
    low = args.n_min if args.n_min is not None else low
    high = args.n_max if args.n_max is not None else high
    return cmd_verify(args.suite, range(low, high + 1), fmt=run_config.format)


def register_verify_command(subparsers, parent):
    parser = subparsers.add_parser("verify", parents=[parent], help="Run a verification suite")
    parser.add_argument("suite", choices=sorted(SUITES))
    parser.add_argument("--n-min", type=int)
    parser.add_argument("--n-max", type=int)
    parser.set_defaults(handler=_handle)
