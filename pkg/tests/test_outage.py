"""Closed-form outage: worked values, invariants, route agreement."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from outagekit import (
    Annulus,
    ChannelParams,
    DomainError,
    RegularPolygon,
    UnsupportedRegionError,
    area,
    bpp_outage,
    conditional_outage,
    corner_break_radius,
    distance_pdf,
    interference_factor,
    plane_ppp_outage,
    ppp_outage,
    ppp_outage_by_count_sum,
    scale_to_area,
)


def random_params(rng, snr_inf=False):
    return ChannelParams(
        alpha=float(rng.uniform(2.4, 5.5)),
        beta=float(10.0 ** rng.uniform(-1, 1)),
        snr=math.inf if snr_inf else float(10.0 ** rng.uniform(0, 2)),
        p=float(rng.uniform(0.1, 1.0)),
    )


def random_polygon(rng):
    sides = int(rng.integers(3, 13))
    r_out = float(rng.uniform(0.5, 4.0))
    r_in = float(rng.uniform(0.0, 0.85)) * r_out * math.cos(math.pi / sides)
    return RegularPolygon(sides, r_out, r_in)


def factor_by_pdf_quadrature(params, region):
    """Independent route: integrate the kernel against the distance pdf."""

    def kernel(r):
        ra = r**params.alpha
        return distance_pdf(region, r) * ra / (params.beta + ra)

    if isinstance(region, RegularPolygon):
        r_c = corner_break_radius(region)
        spans = [(region.r_in, r_c), (r_c, region.r_out)]
    else:
        spans = [(region.r_in, region.r_out)]
    total = 0.0
    for lo, hi in spans:
        if hi > lo:
            part, _ = quad(kernel, lo, hi, epsabs=1e-12, epsrel=1e-12, limit=300)
            total += part
    return total


class TestChannelParams:
    def test_rejects_bad_values(self):
        with pytest.raises(DomainError):
            ChannelParams(alpha=2.0, beta=1.0)
        with pytest.raises(DomainError):
            ChannelParams(alpha=4.0, beta=0.0)
        with pytest.raises(DomainError):
            ChannelParams(alpha=4.0, beta=-1.0)
        with pytest.raises(DomainError):
            ChannelParams(alpha=4.0, beta=1.0, snr=0.0)
        with pytest.raises(DomainError):
            ChannelParams(alpha=4.0, beta=1.0, p=1.5)
        with pytest.raises(DomainError):
            ChannelParams(alpha=math.inf, beta=1.0)

    def test_noise_exponent(self):
        assert ChannelParams(4.0, 1.0, snr=10.0).noise_exponent == pytest.approx(0.1)
        assert ChannelParams(4.0, 2.0, snr=math.inf).noise_exponent == 0.0


class TestConditionalOutage:
    def test_no_interferers_noise_only(self):
        params = ChannelParams(4.0, 1.0, snr=10.0)
        assert conditional_outage(params, []) == pytest.approx(
            1.0 - math.exp(-0.1), abs=1e-15
        )

    def test_single_unit_distance_interferer(self):
        params = ChannelParams(4.0, 1.0, snr=math.inf)
        assert conditional_outage(params, [1.0]) == pytest.approx(0.5, abs=1e-15)

    def test_two_unit_distance_interferers(self):
        params = ChannelParams(4.0, 1.0, snr=math.inf)
        assert conditional_outage(params, [1.0, 1.0]) == pytest.approx(0.75, abs=1e-15)

    def test_half_active_interferer(self):
        params = ChannelParams(4.0, 1.0, snr=math.inf, p=0.5)
        assert conditional_outage(params, [1.0]) == pytest.approx(0.25, abs=1e-15)

    def test_far_interferers_are_harmless(self):
        params = ChannelParams(4.0, 1.0, snr=math.inf)
        assert conditional_outage(params, [1e9]) == pytest.approx(0.0, abs=1e-12)

    def test_monotone_in_each_added_interferer(self):
        rng = np.random.default_rng(0)
        params = random_params(rng)
        eps = conditional_outage(params, [])
        dists = []
        for _ in range(10):
            dists.append(float(rng.uniform(0.3, 5.0)))
            nxt = conditional_outage(params, dists)
            assert nxt >= eps
            eps = nxt

    def test_rejects_bad_distances(self):
        params = ChannelParams(4.0, 1.0)
        with pytest.raises(DomainError):
            conditional_outage(params, [1.0, -2.0])
        with pytest.raises(DomainError):
            conditional_outage(params, [[1.0], [2.0]])


class TestInterferenceFactor:
    def test_annulus_arctan_value(self):
        # E[1/(1+r^4)] over the 1..2 annulus integrates to
        # (arctan 4 - arctan 1)/3 by substitution u = r^2
        params = ChannelParams(4.0, 1.0)
        expect = 1.0 - (math.atan(4.0) - math.atan(1.0)) / 3.0
        got = interference_factor(params, Annulus(1.0, 2.0))
        assert got == pytest.approx(expect, rel=1e-10)

    def test_always_a_probability_weight(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            params = random_params(rng)
            region = random_polygon(rng) if rng.random() < 0.5 else Annulus(
                0.0, float(rng.uniform(0.5, 4.0))
            )
            got = interference_factor(params, region)
            assert 0.0 < got < 1.0

    def test_closed_matches_pdf_quadrature_annulus(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            params = random_params(rng)
            r_in = float(rng.uniform(0.0, 1.5))
            region = Annulus(r_in, r_in + float(rng.uniform(0.3, 3.0)))
            closed = interference_factor(params, region)
            direct = factor_by_pdf_quadrature(params, region)
            assert closed == pytest.approx(direct, rel=1e-9)

    def test_closed_matches_pdf_quadrature_polygon(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            params = random_params(rng)
            region = random_polygon(rng)
            closed = interference_factor(params, region)
            direct = factor_by_pdf_quadrature(params, region)
            assert closed == pytest.approx(direct, rel=1e-6)

    def test_corner_series_route_close_to_quadrature_route(self):
        params = ChannelParams(3.2, 1.0)
        region = RegularPolygon(3, 3.0)
        a = interference_factor(params, region, corner_method="quadrature")
        b = interference_factor(params, region, corner_method="series")
        assert a == pytest.approx(b, rel=5e-3)

    def test_grid_route_agrees(self, default_params, disk2):
        closed = interference_factor(default_params, disk2)
        grid = interference_factor(default_params, disk2, method="grid")
        assert grid == pytest.approx(closed, rel=2e-3)

    def test_sample_route_agrees(self, default_params, disk2):
        closed = interference_factor(default_params, disk2)
        sampled = interference_factor(
            default_params, disk2, method="sample", samples=200_000, seed=5
        )
        # kernel values sit in (0, 1); 5 sigma with a generous variance bound
        assert abs(sampled - closed) < 5 * 0.5 / math.sqrt(200_000)

    def test_scaling_identity(self):
        # growing the region by s is the same as shrinking beta by s^alpha
        rng = np.random.default_rng(4)
        for region in (Annulus(0.5, 2.0), RegularPolygon(5, 1.5, 0.4)):
            alpha = float(rng.uniform(2.5, 5.0))
            s = float(rng.uniform(1.2, 3.0))
            base = ChannelParams(alpha, 1.7)
            shrunk = ChannelParams(alpha, 1.7 / s**alpha)
            grown = scale_to_area(region, area(region) * s * s)
            assert interference_factor(base, grown) == pytest.approx(
                interference_factor(shrunk, region), rel=1e-12
            )

    def test_closed_route_refuses_multipolygon(self, irregular, default_params):
        with pytest.raises(UnsupportedRegionError):
            interference_factor(default_params, irregular)

    def test_unknown_method_rejected(self, default_params, disk2):
        with pytest.raises(DomainError):
            interference_factor(default_params, disk2, method="magic")

    def test_bundled_region_regressions(self, default_params, disk2, triangle, irregular):
        # frozen values for the shipped regions at alpha=3.2, beta=1
        assert interference_factor(default_params, disk2) == pytest.approx(
            0.6449792920310919, rel=1e-12
        )
        assert interference_factor(default_params, triangle) == pytest.approx(
            0.656918130953249, rel=1e-12
        )
        assert interference_factor(
            default_params, irregular, method="grid"
        ) == pytest.approx(0.7554383197606445, rel=1e-12)


class TestBppOutage:
    def test_single_interferer_unit_annulus(self, quartic_params):
        res = bpp_outage(quartic_params, Annulus(1.0, 2.0), 1)
        expect = (math.atan(4.0) - math.atan(1.0)) / 3.0
        assert res.epsilon == pytest.approx(expect, rel=1e-10)
        assert res.epsilon == pytest.approx(0.18013983342352757, rel=1e-12)
        assert res.method == "closed-form-annulus"

    def test_no_interferers_is_noise_only(self, disk2):
        params = ChannelParams(3.2, 1.0, snr=10.0)
        res = bpp_outage(params, disk2, 0)
        assert res.epsilon == pytest.approx(1.0 - math.exp(-0.1), abs=1e-15)

    def test_silent_interferers_are_noise_only(self, disk2):
        params = ChannelParams(3.2, 1.0, snr=10.0, p=0.0)
        res = bpp_outage(params, disk2, 7)
        assert res.epsilon == pytest.approx(1.0 - math.exp(-0.1), abs=1e-15)

    def test_matches_manual_composition(self, disk2):
        rng = np.random.default_rng(5)
        for _ in range(10):
            params = random_params(rng)
            m = int(rng.integers(1, 40))
            factor = interference_factor(params, disk2)
            expect = 1.0 - math.exp(-params.noise_exponent) * (
                1.0 - params.p + params.p * factor
            ) ** m
            assert bpp_outage(params, disk2, m).epsilon == pytest.approx(
                expect, rel=1e-12
            )

    def test_monotone_in_count_threshold_activity(self, disk2):
        rng = np.random.default_rng(6)
        alpha = 3.2
        for _ in range(5):
            snr = float(10.0 ** rng.uniform(0, 2))
            eps_m = [
                bpp_outage(ChannelParams(alpha, 1.0, snr=snr), disk2, m).epsilon
                for m in range(0, 12, 2)
            ]
            assert all(a <= b for a, b in zip(eps_m, eps_m[1:]))
            eps_b = [
                bpp_outage(ChannelParams(alpha, b, snr=snr), disk2, 5).epsilon
                for b in (0.25, 0.5, 1.0, 2.0, 4.0)
            ]
            assert all(a < b for a, b in zip(eps_b, eps_b[1:]))
            eps_p = [
                bpp_outage(ChannelParams(alpha, 1.0, snr=snr, p=p), disk2, 5).epsilon
                for p in (0.2, 0.5, 0.8, 1.0)
            ]
            assert all(a < b for a, b in zip(eps_p, eps_p[1:]))

    def test_square_converges_to_disk(self, quartic_params):
        # a 4096-gon is numerically a disk
        ann = Annulus(0.0, 2.0)
        poly = RegularPolygon(4096, 2.0)
        for m in (1, 10, 50):
            a = bpp_outage(quartic_params, ann, m).epsilon
            b = bpp_outage(quartic_params, poly, m).epsilon
            assert abs(a - b) < 1e-4

    def test_rejects_bad_count(self, disk2, default_params):
        for bad in (-1, 2.5, True):
            with pytest.raises(DomainError):
                bpp_outage(default_params, disk2, bad)


class TestPppOutage:
    def test_zero_intensity_is_noise_only(self, disk2):
        params = ChannelParams(3.2, 1.0, snr=10.0)
        res = ppp_outage(params, disk2, 0.0)
        assert res.epsilon == pytest.approx(1.0 - math.exp(-0.1), abs=1e-15)

    def test_disk_half_intensity_value(self, quartic_params, disk2):
        # mass for the radius-2 disk at alpha=4, beta=1 is pi*arctan(4)
        res = ppp_outage(quartic_params, disk2, 0.5)
        expect = 1.0 - math.exp(-0.5 * math.pi * math.atan(4.0))
        assert res.epsilon == pytest.approx(expect, rel=1e-12)
        assert res.epsilon == pytest.approx(0.8753928780916796, rel=1e-12)

    def test_matches_mean_count_exponential(self, triangle):
        rng = np.random.default_rng(7)
        for _ in range(10):
            params = random_params(rng)
            lam = float(rng.uniform(0.05, 2.0))
            factor = interference_factor(params, triangle)
            expect = 1.0 - math.exp(
                -params.noise_exponent
                - lam * params.p * area(triangle) * (1.0 - factor)
            )
            assert ppp_outage(params, triangle, lam).epsilon == pytest.approx(
                expect, rel=1e-11
            )

    def test_count_sum_route_agrees(self, disk2, triangle):
        rng = np.random.default_rng(8)
        for region in (disk2, triangle):
            for _ in range(5):
                params = random_params(rng)
                lam = float(rng.uniform(0.05, 2.0))
                direct = ppp_outage(params, region, lam).epsilon
                summed = ppp_outage_by_count_sum(params, region, lam).epsilon
                assert summed == pytest.approx(direct, abs=1e-9)

    def test_count_sum_method_tag(self, disk2, default_params):
        assert ppp_outage_by_count_sum(default_params, disk2, 0.3).method == "count-sum"

    def test_monotone_in_intensity(self, triangle, default_params):
        eps = [
            ppp_outage(default_params, triangle, lam).epsilon
            for lam in (0.0, 0.1, 0.5, 1.0, 2.0)
        ]
        assert all(a < b for a, b in zip(eps, eps[1:]))

    def test_fixed_count_bounds_poisson_at_matched_mean(self, disk2, triangle):
        # at lambda = m / area the Poisson population is an exponential
        # mixture around m, and 1 - u <= exp(-u) makes the fixed count the
        # pessimistic side
        rng = np.random.default_rng(9)
        for region in (disk2, triangle):
            for _ in range(10):
                params = random_params(rng)
                m = int(rng.integers(1, 30))
                lam = m / area(region)
                eps_fixed = bpp_outage(params, region, m).epsilon
                eps_pois = ppp_outage(params, region, lam).epsilon
                assert eps_fixed >= eps_pois - 1e-14

    def test_rejects_negative_intensity(self, disk2, default_params):
        with pytest.raises(DomainError):
            ppp_outage(default_params, disk2, -0.5)


class TestPlanePpp:
    def test_quartic_tenth_intensity(self):
        params = ChannelParams(4.0, 1.0, snr=math.inf)
        res = plane_ppp_outage(params, 0.1)
        assert res.epsilon == pytest.approx(
            1.0 - math.exp(-math.pi**2 / 20.0), rel=1e-12
        )
        assert res.epsilon == pytest.approx(0.3895019747342028, rel=1e-12)

    def test_huge_disk_approaches_plane(self):
        # the mass outside radius R falls off like R^(2 - alpha), so the
        # slow alpha=3.2 tail needs R=200 to get under 1e-3
        for alpha in (3.2, 4.0):
            params = ChannelParams(alpha, 1.0, snr=math.inf)
            lam = 0.1
            plane = plane_ppp_outage(params, lam).epsilon
            disk = ppp_outage(params, Annulus(0.0, 200.0), lam).epsilon
            assert abs(disk - plane) < 1e-3

    def test_noise_still_counts(self):
        params = ChannelParams(4.0, 1.0, snr=10.0)
        with_noise = plane_ppp_outage(params, 0.1).epsilon
        expect = 1.0 - math.exp(-0.1 - math.pi**2 / 20.0)
        assert with_noise == pytest.approx(expect, rel=1e-12)

    def test_zero_intensity_noise_only(self):
        params = ChannelParams(4.0, 1.0, snr=10.0)
        assert plane_ppp_outage(params, 0.0).epsilon == pytest.approx(
            1.0 - math.exp(-0.1), abs=1e-15
        )

    def test_activity_thins_the_process(self):
        thinned = plane_ppp_outage(ChannelParams(4.0, 1.0, p=0.5), 0.2).epsilon
        full = plane_ppp_outage(ChannelParams(4.0, 1.0, p=1.0), 0.1).epsilon
        assert thinned == pytest.approx(full, rel=1e-14)
