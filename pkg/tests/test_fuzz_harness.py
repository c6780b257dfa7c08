"""The randomized invariant sweep and its failure-replay machinery."""

import json

import pytest

import twolayer as tl
from twolayer import FuzzConfig, GraphError


def test_config_validation():
    with pytest.raises(GraphError):
        FuzzConfig(trials=-1, seed=0)
    with pytest.raises(GraphError):
        FuzzConfig(trials=1, seed=0, checks=("decompose", "nope"))


def test_zero_trials():
    rep = tl.run_fuzz(FuzzConfig(trials=0, seed=0))
    assert rep.ok
    assert all(s.run == 0 and s.skipped == 0 for s in rep.stats.values())


def test_hundred_trials_all_clean():
    rep = tl.run_fuzz(FuzzConfig(trials=100, seed=7))
    assert rep.ok and rep.failures == ()
    for name in tl.ALL_CHECKS:
        stats = rep.stats[name]
        assert stats.failed == 0
        assert stats.run + stats.skipped == 100
        assert stats.passed == stats.run
    # determinism golden for this seed: which trials each check skips is fixed
    assert rep.stats["layout"].skipped == 1
    assert rep.stats["counting"].skipped == 15
    assert rep.stats["per-edge"].skipped == 9


def test_fuzz_is_deterministic():
    a = tl.run_fuzz(FuzzConfig(trials=40, seed=3))
    b = tl.run_fuzz(FuzzConfig(trials=40, seed=3))
    assert tl.report_to_json(a) == tl.report_to_json(b)


def test_check_subset_only_runs_selected():
    rep = tl.run_fuzz(FuzzConfig(trials=10, seed=1, checks=("decompose",)))
    assert set(rep.stats) == {"decompose"}


def test_inverted_check_produces_replayable_failures():
    config = FuzzConfig(trials=20, seed=7, invert_check="decompose")
    rep = tl.run_fuzz(config)
    assert not rep.ok
    assert len(rep.failures) == 20
    dump = rep.failures[0]
    assert dump.check == "decompose" and dump.inverted
    # same config reproduces the identical dump; honest config sees no failure
    assert tl.replay_failure(dump, config) == dump
    assert tl.replay_failure(dump, FuzzConfig(trials=20, seed=7)) is None


def test_report_json_shape():
    rep = tl.run_fuzz(FuzzConfig(trials=5, seed=2))
    payload = json.loads(tl.report_to_json(rep))
    assert set(payload) == {"trials", "seed", "checks", "failures"}
    assert payload["trials"] == 5 and payload["seed"] == 2
    assert set(payload["checks"]) == set(tl.ALL_CHECKS)
    for stats in payload["checks"].values():
        assert set(stats) == {"run", "passed", "failed", "skipped"}


def test_failure_dump_round_trips_drawing():
    config = FuzzConfig(trials=5, seed=11, invert_check="layout")
    rep = tl.run_fuzz(config)
    for dump in rep.failures:
        d = tl.drawing_from_json(dump.drawing_json)
        assert len(d.graph.vertices) <= config.layout_vertex_cap


def test_drop_isolated_a():
    g = tl.BipartiteGraph(("a1", "a2"), ("b1",), (("a1", "b1"),))
    d = tl.TwoLayerDrawing(g, ("a2", "a1"), ("b1",))
    out = tl.drop_isolated_a(d)
    assert out.graph.a == ("a1",)
    assert out.graph.b == ("b1",)  # isolated B vertices stay
    assert out.order_a == ("a1",)
    assert out.graph.edges == (("a1", "b1"),)
