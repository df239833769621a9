from fractions import Fraction

from analysis.experiments import homogeneous_rate_experiment


def test_n1_every_label_is_homogeneous():
    report = homogeneous_rate_experiment([1], 3, "random", 5, seed=1)
    row = report.rows[0]
    assert row.run_rate == 1
    assert row.leaf_rate == 1
    assert row.leaf_deviation == 0


def test_small_n_rates():
    report = homogeneous_rate_experiment([2, 3], 4, "random", 200, seed=17)
    for row in report.rows:
        assert row.run_rate >= row.leaf_rate
    assert report.rows[1].exact_leaf_rate == Fraction(1, 2)


def test_leaf_rate_tracks_exact_rate():
    # single-leaf runs sample the leaf law only
    report = homogeneous_rate_experiment(range(4, 9), 1, "random", 2000, seed=17)
    assert [row.n for row in report.rows] == [4, 5, 6, 7, 8]
    for row in report.rows:
        assert row.leaf_deviation < 3
        assert row.run_rate == row.leaf_rate
        assert row.max_collision == 0


def test_report_is_reproducible():
    first = homogeneous_rate_experiment([2], 3, "greedy", 20, seed=4)
    second = homogeneous_rate_experiment([2], 3, "greedy", 20, seed=4)
    assert first.to_json() == second.to_json()


def test_trend_rows():
    report = homogeneous_rate_experiment([2, 3], 2, "fixed", 10, seed=3, policy_params={"script": "0-1"})
    rows = report.trend_rows()
    assert [row["n"] for row in rows] == [2, 3]
    assert all(0 < row["bound"] <= 1 for row in rows)
    assert report.to_json()["policy"] == "fixed"
