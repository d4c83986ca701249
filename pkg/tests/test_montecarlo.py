"""Simulator plumbing: determinism, windowing, edge cases."""

import math

import numpy as np
import pytest

from sirnet.contention import gamma_ppp
from sirnet.model import (
    Aloha,
    Explicit,
    Fading,
    FadingCase,
    NetworkModel,
    PowerLaw,
    Ppp,
    RegularLine,
    SingleInterferer,
    Tdma,
)
from sirnet.montecarlo import (
    Estimate,
    SimConfig,
    WindowError,
    empirical_ccdf,
    estimate_capacity,
    estimate_gamma,
    resolve_window,
    simulate_ps,
    simulate_sir_samples,
)
from sirnet.outage import ps_single
from sirnet.specfun import DomainError

RAY = FadingCase(Fading.rayleigh(), Fading.rayleigh())
PPP4 = NetworkModel(Ppp(2), PowerLaw(4.0), RAY)


def test_deterministic_across_runs():
    cfg = SimConfig(trials=20000, seed=123)
    a = simulate_ps(PPP4, Aloha(0.1), 1.0, cfg)
    b = simulate_ps(PPP4, Aloha(0.1), 1.0, cfg)
    assert a == b


def test_deterministic_across_batch_sizes():
    # per-batch substreams differ, but a fixed batch size must reproduce
    cfg1 = SimConfig(trials=10000, seed=9, batch_size=1000)
    cfg2 = SimConfig(trials=10000, seed=9, batch_size=1000)
    assert simulate_ps(PPP4, Aloha(0.2), 1.0, cfg1) == simulate_ps(PPP4, Aloha(0.2), 1.0, cfg2)


def test_p_zero_is_exact():
    est = simulate_ps(PPP4, Aloha(0.0), 1.0, SimConfig(trials=100))
    assert est == Estimate(1.0, 0.0, 100)


def test_window_errors():
    cfg = SimConfig(trials=100, window_radius=1.0)
    with pytest.raises(WindowError):
        simulate_ps(PPP4, Aloha(0.5), 100.0, cfg)
    # alpha close to d needs an enormous window
    near = NetworkModel(Ppp(2), PowerLaw(2.05), RAY)
    with pytest.raises(WindowError):
        simulate_ps(near, Aloha(0.5), 10.0, SimConfig(trials=100))


def test_resolve_window_shrinks_with_tolerance():
    loose = resolve_window(PPP4, Aloha(0.2), 1.0, SimConfig(trials=1, truncation_tol=1e-2))
    tight = resolve_window(PPP4, Aloha(0.2), 1.0, SimConfig(trials=1, truncation_tol=1e-4))
    assert tight.radius > loose.radius
    assert tight.tail_mean < loose.tail_mean


def test_tdma_rejected_on_ppp():
    with pytest.raises(DomainError):
        simulate_ps(PPP4, Tdma(2), 1.0, SimConfig(trials=10))


def test_simconfig_invariants():
    with pytest.raises(DomainError):
        SimConfig(trials=0)
    with pytest.raises(DomainError):
        SimConfig(seed=-1)
    with pytest.raises(DomainError):
        SimConfig(truncation_tol=0.5)


def test_single_interferer_matches_closed_form():
    model = NetworkModel(SingleInterferer(1.0), PowerLaw(4.0), RAY)
    cfg = SimConfig(trials=200_000, seed=4)
    est = simulate_ps(model, Aloha(0.5), 1.0, cfg)
    assert abs(est.z_score(ps_single(RAY, 1.0, 0.5))) < 3.5


def test_clipped_fraction_is_void_probability():
    """With Bernoulli access, all-silent slots give infinite SIR."""
    model = NetworkModel(Explicit((1.0, 2.0)), PowerLaw(4.0), RAY)
    cfg = SimConfig(trials=100_000, seed=1)
    samples = simulate_sir_samples(model, Aloha(0.3), cfg)
    frac = samples.clipped / cfg.trials
    void = 0.7 ** 2
    assert frac == pytest.approx(void, abs=3.5 * math.sqrt(void * (1 - void) / cfg.trials))
    assert samples.values.max() == cfg.sir_clip


def test_ppp_samples_never_clip():
    # tail compensation keeps interference strictly positive
    samples = simulate_sir_samples(PPP4, Aloha(0.1), SimConfig(trials=20000, seed=2))
    assert samples.clipped == 0
    assert np.all(np.isfinite(samples.values))


def test_empirical_ccdf():
    vals = np.array([0.5, 1.5, 2.5, 3.5])
    ccdf = empirical_ccdf(vals, (0.0, 1.0, 2.0, 3.0, 4.0))
    assert ccdf == [1.0, 0.75, 0.5, 0.25, 0.0]
    assert ccdf == sorted(ccdf, reverse=True)


def test_estimate_gamma_matches_analytic():
    g = gamma_ppp(2, 4.0, 1.0, Fading.rayleigh())
    cfg = SimConfig(trials=200_000, seed=6)
    est = estimate_gamma(PPP4, 1.0, cfg, p_probe=0.01)
    bias = g * g * 0.01 / 2.0
    assert abs(est.mean - g) < bias + 3.5 * est.stderr


def test_estimate_capacity_warns_on_clip():
    model = NetworkModel(Explicit((1.0,)), PowerLaw(4.0), RAY)
    with pytest.warns(UserWarning, match="clipped"):
        estimate_capacity(model, Aloha(0.5), SimConfig(trials=2000, seed=3))


def test_estimate_capacity_line():
    from sirnet.capacity import ergodic_capacity_tdma

    model = NetworkModel(RegularLine("one"), PowerLaw(2.0), RAY)
    cfg = SimConfig(trials=100_000, seed=8)
    est = estimate_capacity(model, Tdma(2), cfg, theta_ref=20.0)
    assert abs(est.z_score(ergodic_capacity_tdma(2.0, 2).value)) < 3.5


def test_estimate_z_score():
    e = Estimate(0.5, 0.01, 100)
    assert e.z_score(0.48) == pytest.approx(2.0, rel=1e-12)
    assert e.ci95[0] < 0.5 < e.ci95[1]
    exact = Estimate(1.0, 0.0, 100)
    assert exact.z_score(1.0) == 0.0
    assert exact.z_score(0.9) == math.inf
