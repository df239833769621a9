import json
import logging
from fractions import Fraction

import pytest

from commands.decorators import EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE, exit_code_for, exit_on_error
from commands.run_config import RunConfig, parse_policy_params
from main import main
from sieve.forest import enumerate_forests
from utils.errors import BudgetExceeded, ConfigError, VerificationFailed


@pytest.fixture
def cli(restore_config, capsys):
    """Run main() and return (exit code, stdout)"""
    def run(*argv):
        code = main([str(arg) for arg in argv])
        return code, capsys.readouterr().out
    return run


def test_chartable_n1(cli):
    code, out = cli("chartable", "--n", 1)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["values"] == [[1]]
    assert report["order"] == 1


def test_chartable_n3(cli):
    code, out = cli("chartable", "--n", 3)
    report = json.loads(out)
    assert report["shapes"] == ["3", "2+1", "1+1+1"]
    assert report["values"] == [[1, 1, 1], [-1, 0, 2], [1, -1, 1]]
    assert report["class_sizes"] == [2, 3, 1]
    assert report["dimensions"] == [1, 2, 1]


def test_wreath_chartable_as_table(cli):
    code, out = cli("chartable", "--n", 2, "--wreath", "--format", "table")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("irrep")
    assert set(lines[1]) <= {"-", " "}
    # header, separator, class sizes, one row per irrep
    assert len(lines) == 3 + 5


def test_sieve_run_is_deterministic(cli, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        code, out = cli("sieve-run", "--n", 3, "--leaves", 4, "--seed", 21, "-o", path)
        assert code == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    summary = json.loads(out)
    assert summary["combines"] == 3
    assert summary["homogeneous_leaf_rate"].endswith("/4")


def test_sieve_run_many_writes_a_directory(cli, tmp_path):
    code, out = cli("sieve-run", "--n", 2, "--leaves", 2, "--seed", 5, "--runs", 3,
                    "--policy", "fixed", "--policy-param", "script=0-1", "-o", tmp_path / "runs")
    assert code == EXIT_OK
    assert sorted(p.name for p in (tmp_path / "runs").iterdir()) == ["run-0000.json", "run-0001.json", "run-0002.json"]
    assert json.loads(out)["combines"] == 3


def test_sieve_run_needs_a_seed(cli, tmp_path):
    code, _ = cli("sieve-run", "--n", 2, "-o", tmp_path / "t.json")
    assert code == EXIT_USAGE


def test_score_both_hypotheses(cli, tmp_path):
    path = tmp_path / "t.json"
    cli("sieve-run", "--n", 2, "--leaves", 3, "--seed", 3, "--subgroup", "order2", "-o", path)
    code, out = cli("score", path, "--both")
    assert code == EXIT_OK
    report = json.loads(out)
    assert set(report["scores"]) == {"trivial", "order2"}
    assert Fraction(report["scores"]["order2"]) > 0
    if not report["homogeneous"]:
        assert report["equal"]


def test_score_float_output(cli, tmp_path):
    path = tmp_path / "t.json"
    cli("sieve-run", "--n", 2, "--leaves", 2, "--seed", 3, "-o", path)
    code, out = cli("score", path, "--float")
    assert isinstance(json.loads(out)["scores"]["trivial"], float)


def test_malformed_transcript_exit_code(cli, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 2, "nodes": [{"id": 3}]}')
    code, _ = cli("score", path)
    assert code == EXIT_USAGE


def test_budget_exit_code(cli, tmp_path):
    code, _ = cli("sieve-run", "--n", 4, "--subgroup", "order2", "--seed", 1, "-o", tmp_path / "t.json")
    assert code == EXIT_BUDGET


def test_budget_flag_lowers_limit(cli, tmp_path):
    code, _ = cli("sieve-run", "--n", 3, "--subgroup", "order2", "--seed", 1,
                  "--budget-max-exact-n", 2, "-o", tmp_path / "t.json")
    assert code == EXIT_BUDGET


def test_verify_qn(cli):
    code, out = cli("verify", "qn", "--n-min", 2, "--n-max", 6)
    assert code == EXIT_OK
    assert json.loads(out)["passed"] is True


def test_verify_identities_cover_three_leaf_forests(cli):
    code, out = cli("verify", "identities", "--n-min", 2, "--n-max", 2)
    assert code == EXIT_OK
    checks = json.loads(out)["checks"]
    normalized = [check for check in checks if check["check"] == "normalization"]
    assert len(normalized) == len(enumerate_forests(3, 5))
    assert all(check["passed"] for check in checks)


def test_verify_oracle_n2(cli):
    code, out = cli("verify", "oracle")
    assert code == EXIT_OK
    names = {check["check"] for check in json.loads(out)["checks"]}
    assert {"oracle_equivalence", "h_invariance", "group_axioms"} <= names


def test_analyze_width_csv(cli):
    code, out = cli("analyze", "width", "--n-min", 3, "--n-max", 5, "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].split(",")[0] == "n"
    assert len(lines) == 4


def test_analyze_rates_writes_csv(cli, tmp_path):
    csv_path = tmp_path / "trend.csv"
    code, out = cli("analyze", "rates", "--n-min", 2, "--n-max", 3, "--runs", 10, "--leaves", 2,
                    "--seed", 8, "--csv-out", csv_path)
    assert code == EXIT_OK
    assert csv_path.read_text().splitlines()[0] == "n,run_rate,leaf_rate,exact_leaf_rate,bound"
    assert len(json.loads(out)["rows"]) == 2


def test_config_file_and_save(cli, tmp_path):
    saved = tmp_path / "run.cfg"
    code, _ = cli("chartable", "--n", 2, "--save-config", saved)
    assert code == EXIT_OK
    loaded = RunConfig.load(saved)
    assert loaded.n == 2 and loaded.command == "chartable"

    bad = tmp_path / "bad.cfg"
    bad.write_text("NOT_A_SETTING = 1\n")
    code, _ = cli("chartable", "--config", bad)
    assert code == EXIT_USAGE


def test_config_file_sets_log_level(cli, tmp_path):
    path = tmp_path / "quiet.cfg"
    path.write_text("LOG_LEVEL = WARNING\n")
    code, _ = cli("chartable", "--n", 2, "--config", path)
    assert code == EXIT_OK
    assert logging.getLogger().level == logging.WARNING


def test_run_config_round_trip(tmp_path):
    original = RunConfig(n=4, policy="fixed", policy_params={"script": "0-1"}, seed=7, runs=2)
    path = tmp_path / "run.cfg"
    original.save(path)
    assert RunConfig.load(path) == original


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(n=0).validate()
    with pytest.raises(ConfigError):
        RunConfig(format="xml").validate()
    with pytest.raises(ConfigError):
        RunConfig(command="rates").validate()
    with pytest.raises(ValueError):
        RunConfig(subgroup="order3").validate()


def test_policy_params():
    assert parse_policy_params(["seed=3", "script=0-1,2-3"]) == {"seed": 3, "script": "0-1,2-3"}
    with pytest.raises(ConfigError):
        parse_policy_params(["seed"])


def test_exit_codes():
    assert exit_code_for(BudgetExceeded("max_exact_n", 4, 3)) == EXIT_BUDGET
    assert exit_code_for(VerificationFailed("x")) == EXIT_FAILED
    assert exit_code_for(ConfigError("bad")) == EXIT_USAGE

    @exit_on_error
    def fails():
        raise VerificationFailed("always")

    assert fails() == EXIT_FAILED
