"""Monte Carlo oracle: reproducibility, calibration, agreement with closed forms."""

import math

import numpy as np
import pytest

from outagekit import (
    Annulus,
    ChannelParams,
    DomainError,
    Estimate,
    FixedCount,
    PoissonCount,
    SimConfig,
    area,
    bpp_outage,
    conditional_outage,
    draw_realizations,
    estimate_interference_factor,
    interference_factor,
    ppp_outage,
    simulate_conditional,
    simulate_outage,
)

BLOCK = 16384


def z_score(estimate: Estimate, truth: float) -> float:
    se = max(estimate.std_error, 1e-12)
    return abs(estimate.mean - truth) / se


class TestConfigValidation:
    def test_count_models(self):
        with pytest.raises(DomainError):
            FixedCount(-1)
        with pytest.raises(DomainError):
            FixedCount(2.5)
        with pytest.raises(DomainError):
            PoissonCount(-0.1)

    def test_sim_config(self, unit_annulus, default_params):
        with pytest.raises(DomainError):
            SimConfig(unit_annulus, default_params, FixedCount(1), trials=0)
        with pytest.raises(DomainError):
            SimConfig(unit_annulus, default_params, FixedCount(1), trials=100, seed=-1)
        with pytest.raises(DomainError):
            SimConfig(unit_annulus, default_params, FixedCount(1), trials=100, seed=1 << 64)

    def test_worker_count(self, unit_annulus, default_params):
        cfg = SimConfig(unit_annulus, default_params, FixedCount(1), trials=100)
        with pytest.raises(DomainError):
            simulate_outage(cfg, workers=0)


class TestReproducibility:
    def test_same_config_same_estimate(self, unit_annulus, quartic_params):
        cfg = SimConfig(unit_annulus, quartic_params, FixedCount(2), trials=50_000, seed=3)
        a = simulate_outage(cfg)
        b = simulate_outage(cfg)
        assert a == b

    def test_worker_count_invisible(self, disk2, default_params):
        # 70000 trials is 4 full blocks plus a remainder
        cfg = SimConfig(disk2, default_params, PoissonCount(0.5), trials=70_000, seed=9)
        serial = simulate_outage(cfg, workers=1)
        threaded = simulate_outage(cfg, workers=3)
        assert serial == threaded

    def test_different_seed_different_draw(self, unit_annulus, quartic_params):
        base = SimConfig(unit_annulus, quartic_params, FixedCount(2), trials=50_000, seed=3)
        other = SimConfig(unit_annulus, quartic_params, FixedCount(2), trials=50_000, seed=4)
        assert simulate_outage(base).mean != simulate_outage(other).mean

    def test_partial_block_runs(self, unit_annulus, quartic_params):
        cfg = SimConfig(unit_annulus, quartic_params, FixedCount(1), trials=100, seed=0)
        est = simulate_outage(cfg)
        assert est.trials == 100

    def test_conditional_worker_invariance(self, default_params):
        a = simulate_conditional(default_params, [1.0, 2.0], 40_000, seed=7, workers=1)
        b = simulate_conditional(default_params, [1.0, 2.0], 40_000, seed=7, workers=4)
        assert a == b


class TestConditionalAgreement:
    def test_noise_only(self):
        params = ChannelParams(3.2, 1.0, snr=10.0)
        est = simulate_conditional(params, [], 200_000, seed=1)
        assert z_score(est, 1.0 - math.exp(-0.1)) < 4.0

    def test_single_unit_interferer(self, quartic_params):
        est = simulate_conditional(quartic_params, [1.0], 200_000, seed=2)
        assert z_score(est, 0.5) < 4.0

    def test_two_unit_interferers(self, quartic_params):
        est = simulate_conditional(quartic_params, [1.0, 1.0], 200_000, seed=3)
        assert z_score(est, 0.75) < 4.0

    def test_random_configurations(self):
        rng = np.random.default_rng(5)
        for i in range(5):
            params = ChannelParams(
                alpha=float(rng.uniform(2.5, 5.0)),
                beta=float(10.0 ** rng.uniform(-0.5, 0.5)),
                snr=float(10.0 ** rng.uniform(0.5, 1.5)),
                p=float(rng.uniform(0.2, 1.0)),
            )
            dists = rng.uniform(0.5, 3.0, size=int(rng.integers(1, 6))).tolist()
            truth = conditional_outage(params, dists)
            est = simulate_conditional(params, dists, 200_000, seed=100 + i)
            assert z_score(est, truth) < 4.0, (params, dists)


class TestSpatialAgreement:
    def test_fixed_count_annulus(self, quartic_params, unit_annulus):
        cfg = SimConfig(unit_annulus, quartic_params, FixedCount(1), trials=10**6, seed=0)
        est = simulate_outage(cfg, workers=2)
        truth = bpp_outage(quartic_params, unit_annulus, 1).epsilon
        assert truth == pytest.approx(0.180140, abs=5e-7)
        assert z_score(est, truth) < 4.0

    def test_fixed_count_polygon(self, default_params, triangle):
        cfg = SimConfig(triangle, default_params, FixedCount(5), trials=300_000, seed=2)
        est = simulate_outage(cfg, workers=2)
        truth = bpp_outage(default_params, triangle, 5).epsilon
        assert z_score(est, truth) < 4.0

    def test_poisson_multipolygon(self, default_params, irregular):
        cfg = SimConfig(irregular, default_params, PoissonCount(0.5), trials=200_000, seed=4)
        est = simulate_outage(cfg, workers=2)
        truth = ppp_outage(default_params, irregular, 0.5, method="grid").epsilon
        assert z_score(est, truth) < 4.0

    def test_silent_interferers(self, triangle):
        params = ChannelParams(3.2, 1.0, snr=10.0, p=0.0)
        cfg = SimConfig(triangle, params, FixedCount(10), trials=200_000, seed=5)
        est = simulate_outage(cfg)
        assert z_score(est, 1.0 - math.exp(-0.1)) < 4.0


class TestDrawCalibration:
    def test_poisson_count_mean(self, disk2, default_params):
        lam = 0.5
        cfg = SimConfig(disk2, default_params, PoissonCount(lam), trials=BLOCK, seed=6)
        nets = draw_realizations(cfg, BLOCK)
        counts = np.array([len(net.distances) for net in nets])
        mu = lam * area(disk2)
        se = math.sqrt(mu / BLOCK)
        assert abs(counts.mean() - mu) < 4 * se

    def test_gains_are_unit_mean(self, disk2, default_params):
        cfg = SimConfig(disk2, default_params, FixedCount(4), trials=BLOCK, seed=7)
        nets = draw_realizations(cfg, BLOCK)
        pooled = np.concatenate(
            [net.gains for net in nets] + [[net.reference_gain] for net in nets]
        )
        n = len(pooled)
        assert n == BLOCK * 5
        assert abs(pooled.mean() - 1.0) < 5.0 / math.sqrt(n)

    def test_activity_rate(self, disk2):
        params = ChannelParams(3.2, 1.0, p=0.3)
        cfg = SimConfig(disk2, params, FixedCount(4), trials=BLOCK, seed=8)
        nets = draw_realizations(cfg, BLOCK)
        flags = np.concatenate([net.activity for net in nets])
        se = math.sqrt(0.3 * 0.7 / len(flags))
        assert abs(flags.mean() - 0.3) < 5 * se

    def test_realizations_reproduce_the_hit_count(self, unit_annulus, default_params):
        cfg = SimConfig(unit_annulus, default_params, FixedCount(3), trials=5000, seed=11)
        nets = draw_realizations(cfg, 5000)
        noise = 1.0 / default_params.snr
        hits = 0
        for net in nets:
            aggregate = float(
                np.sum(
                    np.where(
                        net.activity,
                        net.gains * net.distances ** (-default_params.alpha),
                        0.0,
                    )
                )
            )
            hits += net.reference_gain <= default_params.beta * (noise + aggregate)
        est = simulate_outage(cfg)
        assert hits == round(est.mean * est.trials)

    def test_realization_count_capped_by_trials(self, unit_annulus, default_params):
        cfg = SimConfig(unit_annulus, default_params, FixedCount(1), trials=10, seed=0)
        assert len(draw_realizations(cfg, 50)) == 10


class TestInterferenceEstimate:
    def test_matches_closed_form(self, quartic_params, unit_annulus):
        truth = interference_factor(quartic_params, unit_annulus)
        est = estimate_interference_factor(unit_annulus, quartic_params, 200_000, seed=0)
        assert truth == pytest.approx(0.819860, abs=5e-7)
        assert z_score(est, truth) < 4.0

    def test_deterministic(self, triangle, default_params):
        a = estimate_interference_factor(triangle, default_params, 50_000, seed=3)
        b = estimate_interference_factor(triangle, default_params, 50_000, seed=3)
        assert a == b

    def test_small_sample_count(self, unit_annulus, default_params):
        est = estimate_interference_factor(unit_annulus, default_params, 100, seed=1)
        assert est.trials == 100
        assert est.std_error > 0.0

    def test_rejects_degenerate_inputs(self, unit_annulus, default_params):
        with pytest.raises(DomainError):
            estimate_interference_factor(unit_annulus, default_params, 1, seed=0)
        with pytest.raises(DomainError):
            estimate_interference_factor(unit_annulus, default_params, 100, seed=-2)


@pytest.mark.slow
class TestOracleCoverage:
    """Long-run calibration: the 4 sigma band holds across 100 seeds."""

    def check_band(self, make_estimate, truth):
        inside = 0
        for seed in range(100):
            est = make_estimate(seed)
            if z_score(est, truth) < 4.0:
                inside += 1
        assert inside >= 99, f"only {inside}/100 seeds within 4 sigma"

    def test_fixed_count_band(self, quartic_params, unit_annulus):
        truth = bpp_outage(quartic_params, unit_annulus, 1).epsilon

        def estimate(seed):
            cfg = SimConfig(
                unit_annulus, quartic_params, FixedCount(1), trials=10**6, seed=seed
            )
            return simulate_outage(cfg, workers=2)

        self.check_band(estimate, truth)

    def test_poisson_band(self, quartic_params, disk2):
        truth = ppp_outage(quartic_params, disk2, 0.5).epsilon

        def estimate(seed):
            cfg = SimConfig(
                disk2, quartic_params, PoissonCount(0.5), trials=10**6, seed=seed
            )
            return simulate_outage(cfg, workers=2)

        self.check_band(estimate, truth)
