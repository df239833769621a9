from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from sieve.engine import replay, run_many, run_seeds, sample_label, simulate
from sieve.exact import enumerate_labelings, transcript_probability
from sieve.forest import Forest
from sieve.policies import STOP, FixedSchedule, GreedyHomogeneous, RandomPair, make_policy, parse_script
from sieve.transcript_io import dumps, read_transcript, transcript_from_json, transcript_to_json, write_transcript
from utils.errors import BudgetExceeded, ConfigError, TranscriptFormatError
from wreath.classes import SubgroupSpec
from wreath.distributions import wreath_natural_distribution, wreath_plancherel
from wreath.irreps import WreathIrrep

from conftest import P

CHERRY = Forest.of_leaves(2).combine(0, 1)


def _root_label_law(n: int, subgroup: SubgroupSpec) -> dict:
    law = Counter()
    for labels in enumerate_labelings(CHERRY, n):
        law[labels[2]] += transcript_probability(CHERRY, labels, subgroup)
    return law


def _chisquare_pvalue(observed: Counter, law: dict, runs: int) -> float:
    # pool categories with small expected counts
    obs, exp = [], []
    pooled_obs = pooled_exp = 0.0
    for label, p in law.items():
        expected = float(p) * runs
        if expected < 5:
            pooled_obs += observed.get(label, 0)
            pooled_exp += expected
        else:
            obs.append(observed.get(label, 0))
            exp.append(expected)
    if pooled_exp > 0:
        obs.append(pooled_obs)
        exp.append(pooled_exp)
    scale = sum(obs) / sum(exp)
    return chisquare(obs, [e * scale for e in exp]).pvalue


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("subgroup", list(SubgroupSpec))
def test_one_combine_frequencies_match_exact_law(n, subgroup):
    runs = 20000
    policy = FixedSchedule([(0, 1)])
    observed = Counter()
    for seed in run_seeds(1234, runs):
        observed[simulate(policy, 2, subgroup, seed, n).labels[2]] += 1
    assert _chisquare_pvalue(observed, _root_label_law(n, subgroup), runs) > 1e-3


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("subgroup", list(SubgroupSpec))
def test_one_combine_frequencies_large_sample(n, subgroup):
    runs = 100000
    transcripts = run_many("fixed", {"script": [[0, 1]]}, 2, subgroup, n, runs, 99)
    observed = Counter(t.labels[2] for t in transcripts)
    assert _chisquare_pvalue(observed, _root_label_law(n, subgroup), runs) > 1e-3


def test_leaf_labels_follow_plancherel():
    runs = 20000
    rng = np.random.default_rng(5)
    law = wreath_plancherel(3)
    observed = Counter(sample_label(law, rng) for _ in range(runs))
    assert _chisquare_pvalue(observed, law.probs, runs) > 1e-3


def test_simulation_is_deterministic():
    first = simulate(RandomPair(seed=3), 6, SubgroupSpec.TRIVIAL, 42, 3)
    second = simulate(RandomPair(seed=3), 6, SubgroupSpec.TRIVIAL, 42, 3)
    assert dumps(first) == dumps(second)
    assert len(first.events) == 5
    assert len(first.roots) == 1


def test_order_two_simulation_runs_and_stops():
    transcript = simulate(GreedyHomogeneous(max_combines=2), 4, SubgroupSpec.ORDER_TWO, 8, 2)
    assert len(transcript.events) == 2
    assert transcript_probability(transcript.forest, transcript.labels, SubgroupSpec.ORDER_TWO) > 0


def test_order_two_simulation_budget():
    with pytest.raises(BudgetExceeded):
        simulate(RandomPair(), 2, SubgroupSpec.ORDER_TWO, 1, 4)


def test_leaf_budget(restore_config):
    restore_config.apply({"MAX_SIMULATION_LEAVES": 4})
    with pytest.raises(BudgetExceeded):
        simulate(RandomPair(), 5, SubgroupSpec.TRIVIAL, 1, 2)


def test_run_many_is_ordered_and_reproducible():
    serial = run_many("random", {"seed": 1}, 4, SubgroupSpec.TRIVIAL, 2, 6, 11)
    again = run_many("random", {"seed": 1}, 4, SubgroupSpec.TRIVIAL, 2, 6, 11)
    assert [dumps(t) for t in serial] == [dumps(t) for t in again]
    assert [t.seed for t in serial] == run_seeds(11, 6)


def test_run_many_process_pool_matches_serial():
    serial = run_many("random", {"seed": 1}, 3, SubgroupSpec.TRIVIAL, 2, 4, 5, jobs=1)
    parallel = run_many("random", {"seed": 1}, 3, SubgroupSpec.TRIVIAL, 2, 4, 5, jobs=2)
    assert [dumps(t) for t in serial] == [dumps(t) for t in parallel]


def test_fixed_schedule_and_script_parsing():
    assert parse_script("0-1, 2-3") == [(0, 1), (2, 3)]
    with pytest.raises(ConfigError):
        parse_script("0:1")
    policy = make_policy("fixed", script="0-1,2-3,4-5")
    transcript = simulate(policy, 4, SubgroupSpec.TRIVIAL, 0, 2)
    assert [event.pair for event in transcript.events] == [(0, 1), (2, 3), (4, 5)]


def test_unknown_policy():
    with pytest.raises(ConfigError):
        make_policy("clever")


def test_bad_policy_choice_is_rejected():
    policy = FixedSchedule([(0, 0)])
    with pytest.raises(TranscriptFormatError):
        simulate(policy, 2, SubgroupSpec.TRIVIAL, 0, 2)


def test_random_pair_stops_at_one_root():
    policy = RandomPair(seed=0)
    transcript = simulate(policy, 3, SubgroupSpec.TRIVIAL, 7, 2)
    assert policy.select(transcript.snapshot()) is STOP


def test_greedy_prefers_homogeneous_mass():
    # the trivial irrep times {2,1+1} stays inhomogeneous; {2,1+1} squared is all homogeneous
    inhom = WreathIrrep.inhomogeneous(P("2"), P("1+1"))
    transcript = replay(2, [WreathIrrep.trivial(2), inhom, inhom], [])
    choice = GreedyHomogeneous().select(transcript.snapshot())
    assert choice == (1, 2)


def test_greedy_example_n3():
    first = WreathIrrep.inhomogeneous(P("3"), P("2+1"))
    other = WreathIrrep.inhomogeneous(P("3"), P("1+1+1"))
    labels = [first, first, other]
    transcript = replay(3, labels, [])
    masses = {
        (i, j): wreath_natural_distribution(labels[i], labels[j]).homogeneous_mass()
        for i, j in [(0, 1), (0, 2), (1, 2)]
    }
    choice = GreedyHomogeneous().select(transcript.snapshot())
    assert masses[choice] == max(masses.values())
    assert masses[(0, 1)] > masses[(0, 2)]
    assert choice == (0, 1)


def test_replay_rebuilds_transcript():
    original = simulate(RandomPair(seed=2), 5, SubgroupSpec.TRIVIAL, 9, 3)
    rebuilt = replay(3, original.leaf_labels, original.events, SubgroupSpec.TRIVIAL, 9)
    assert rebuilt.forest == original.forest
    assert rebuilt.labels == original.labels


def test_transcript_file_round_trip(tmp_path):
    original = simulate(RandomPair(seed=2), 4, SubgroupSpec.ORDER_TWO, 9, 2)
    path = tmp_path / "run" / "t.json"
    write_transcript(path, original)
    loaded = read_transcript(path)
    assert loaded.forest == original.forest
    assert loaded.labels == original.labels
    assert loaded.subgroup is SubgroupSpec.ORDER_TWO
    assert path.read_text() == dumps(original)


def test_transcript_without_events_is_accepted():
    original = simulate(RandomPair(seed=2), 3, SubgroupSpec.TRIVIAL, 1, 2)
    data = transcript_to_json(original)
    data["events"] = []
    assert transcript_from_json(data).labels == original.labels


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("nodes"),
    lambda d: d["nodes"][0].update(label={"kind": "hom", "a": "3", "sign": "+"}),
    lambda d: d["nodes"][-1].update(children=[0, 0]),
    lambda d: d["events"][0].update(node=7),
])
def test_malformed_transcripts_rejected(mutate):
    data = transcript_to_json(simulate(RandomPair(seed=2), 3, SubgroupSpec.TRIVIAL, 1, 2))
    mutate(data)
    with pytest.raises(TranscriptFormatError):
        transcript_from_json(data)


def test_unreadable_transcript(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(TranscriptFormatError):
        read_transcript(path)
