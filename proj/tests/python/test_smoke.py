"""Smoke tests for the Python bindings."""

import math

import pytest

import osgcoord


def test_forecaster_starts_uniform_and_learns():
    f = osgcoord.Forecaster(total_steps=100, action_count=4)
    p = f.distribution()
    assert len(p) == 4
    assert all(abs(x - 0.25) < 1e-12 for x in p)
    assert f.expert_count == 7  # ceil(log2(100))

    for _ in range(50):
        f.observe([1.0, 0.0, 0.0, 0.0])
    p = f.distribution()
    assert p[0] > 0.8
    assert abs(sum(p) - 1.0) < 1e-12


def test_forecaster_rejects_bad_rewards():
    f = osgcoord.Forecaster(total_steps=10, action_count=3)
    with pytest.raises(Exception):
        f.observe([1.0])


def test_sample_index_point_mass():
    assert osgcoord.sample_index([0.0, 0.0, 1.0], seed=7) == 2


def test_tracking_objective_geometry():
    # Robot at the origin moving right at speed 1 for 1 s; target at (4, 0).
    value = osgcoord.tracking_objective(
        robot_starts=[(0.0, 0.0)],
        target_ends=[(4.0, 0.0)],
        dt=1.0,
        profile=[(0, 6)],  # action 6: right at speed 1
    )
    assert math.isclose(value, 1.0 / 3.0, rel_tol=1e-12)
    assert osgcoord.tracking_objective([(0, 0)], [(4, 0)], 1.0, []) == 0.0


def test_submodularity_checker_and_optimizers():
    def coverage(profile):
        covered = set()
        sets = {(0, 0): {"a"}, (0, 1): {"a", "b"}, (1, 0): {"b"}, (1, 1): {"c"}}
        for entry in profile:
            covered |= sets[tuple(entry)]
        return float(len(covered))

    report = osgcoord.check_normalized_monotone_submodular(coverage, [2, 2])
    assert report["pass"]

    profile, value = osgcoord.brute_force_opt(coverage, [2, 2])
    assert value == 3.0
    assert osgcoord.sg_select(coverage, [2, 2]) == [(0, 1), (1, 1)]

    def supermodular(profile):
        return float(len(profile) ** 2)

    bad = osgcoord.check_normalized_monotone_submodular(supermodular, [2, 2])
    assert not bad["pass"]
    assert "witness" in bad["detail"]


def test_metrics():
    assert osgcoord.best_expert_switches([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]]) == 2
    assert osgcoord.regret_bound_rhs(1, 1, 0, 1) == 0.0
    assert osgcoord.regret_bound_rhs(2, 500, 5, 4) > 0.0
    dev = osgcoord.forecaster_equivalence_deviation(8, 3, 5, seed=1)
    assert dev <= 1e-9


CONFIG = """
scenario = straight_line
horizon_s = 2
steps = 40
policy = osg
master_seed = 9
instances = 2
reward_scale = 1
robots = 0,1 ; 0,-1
targets = 0.5,1 ; 0.5,-1
target_velocities = 1,0 ; 1,0
"""


def test_run_scenario_summary_and_determinism():
    summary = osgcoord.run_scenario(CONFIG)
    assert summary["policy"] == "osg"
    assert summary["instances"] == 2
    assert summary["counters"]["marginal_evals_total"] == 2 * 40 * 8 * 2
    assert summary == osgcoord.run_scenario(CONFIG)
