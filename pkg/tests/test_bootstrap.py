import numpy as np
import pytest

import netmoment as nm
from netmoment.rng import spawn_rng
from netmoment.sim import bootstrap_distribution, builtin_graphon, sample_network


def sim1_pair(m, seed=0):
    ga = sample_network(builtin_graphon("SmoothGraphon-2"), 0.25, m, spawn_rng(seed, "a"))
    gb = sample_network(builtin_graphon("SmoothGraphon-4"), 0.25, m, spawn_rng(seed, "b"))
    return ga.graph, gb.graph


def test_full_size_subsample_reproduces_observed_statistic():
    ga, gb = sim1_pair(40)
    sa = nm.summarize(ga, nm.TRIANGLE)
    sb = nm.summarize(gb, nm.TRIANGLE)
    t_full = nm.scaled_discrepancy(sa, sb) / nm.combine(sa, sb).S
    boot = bootstrap_distribution(
        ga, gb, nm.TRIANGLE, "subsample", n_boot=1,
        m_sub=ga.m, n_sub=gb.m, rng=spawn_rng(1, "bt"), c_delta=0.0,
    )
    assert boot.n_dropped == 0
    assert boot.values[0] == pytest.approx(t_full, rel=1e-10)


def test_output_length_accounts_for_drops():
    ga, gb = sim1_pair(30, seed=3)
    boot = bootstrap_distribution(
        ga, gb, nm.TRIANGLE, "subsample", n_boot=50,
        m_sub=5, n_sub=5, rng=spawn_rng(2, "bt"), c_delta=0.0,
    )
    assert len(boot.values) + boot.n_dropped == 50


def test_subsample_distribution_has_positive_variance():
    ga, gb = sim1_pair(80, seed=5)
    boot = bootstrap_distribution(
        ga, gb, nm.TRIANGLE, "subsample", n_boot=200,
        rng=spawn_rng(3, "bt"), c_delta=0.0,
    )
    assert len(boot.values) >= 50
    assert np.isfinite(boot.values).all()
    assert boot.values.var() > 0


def test_resample_mode_runs_and_centers():
    ga, gb = sim1_pair(50, seed=7)
    sa = nm.summarize(ga, nm.TRIANGLE)
    sb = nm.summarize(gb, nm.TRIANGLE)
    d_obs = nm.scaled_discrepancy(sa, sb)
    boot = bootstrap_distribution(
        ga, gb, nm.TRIANGLE, "resample", n_boot=80,
        rng=spawn_rng(4, "bt"), center=d_obs, c_delta=0.0,
    )
    assert len(boot.values) >= 60
    # centered replicates straddle zero
    assert boot.values.min() < 0 < boot.values.max()


def test_bootstrap_argument_validation():
    ga, gb = sim1_pair(20, seed=9)
    with pytest.raises(ValueError):
        bootstrap_distribution(ga, gb, nm.TRIANGLE, "jackknife", rng=spawn_rng(0))
    with pytest.raises(ValueError):
        bootstrap_distribution(ga, gb, nm.TRIANGLE, "subsample", n_boot=0, rng=spawn_rng(0))
    with pytest.raises(ValueError):
        bootstrap_distribution(ga, gb, nm.TRIANGLE, "subsample",
                               m_sub=50, rng=spawn_rng(0))


def test_bootstrap_deterministic():
    ga, gb = sim1_pair(40, seed=11)
    a = bootstrap_distribution(ga, gb, nm.TRIANGLE, "subsample", n_boot=30,
                               rng=spawn_rng(6, "bt"), c_delta=0.01)
    b = bootstrap_distribution(ga, gb, nm.TRIANGLE, "subsample", n_boot=30,
                               rng=spawn_rng(6, "bt"), c_delta=0.01)
    assert np.array_equal(a.values, b.values)
    assert a.n_dropped == b.n_dropped
