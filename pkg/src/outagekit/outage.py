"""Outage probability of a Rayleigh reference link amid random interferers.

The link under test runs from a transmitter at unit distance to a receiver
at the origin; interferers are placed uniformly over a region (a fixed
number of them, or a Poisson number with a given density), each active
independently with probability p, all channels Rayleigh. Spatial averaging
over the interferer positions collapses to a single scalar per region and
channel, the interference factor

    I = E[ r^alpha / (beta + r^alpha) ]

with r the origin distance of a uniform point. Everything else is
composition: a fixed count of m interferers multiplies (1 - p + p I)^m into
the noise-only success probability, and a Poisson population exponentiates
the same quantity.

Three routes to I are offered: exact closed forms (annuli and regular
polygons), a deterministic lattice quadrature, and plain Monte Carlo
averaging over sampled positions. They agree within their stated accuracy
and serve as cross-checks on one another.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as sp_stats

from .errors import DomainError, UnsupportedRegionError
from .regions import (
    Annulus,
    MultiPolygon,
    Region,
    RegularPolygon,
    area,
    corner_break_radius,
    grid_points,
    sample_distances,
)
from .special import (
    QuadControl,
    SeriesControl,
    phi,
    plane_limit_phi,
    theta,
)

__all__ = [
    "ChannelParams",
    "Diagnostics",
    "OutageResult",
    "conditional_outage",
    "interference_factor",
    "bpp_outage",
    "ppp_outage",
    "ppp_outage_by_count_sum",
    "plane_ppp_outage",
]

DEFAULT_GRID_TARGET = 125_000
DEFAULT_SAMPLE_COUNT = 1_000_000


@dataclass(frozen=True)
class ChannelParams:
    """Channel and protocol parameters, all linear (convert dB first).

    alpha : path-loss exponent, > 2 so far-field interference stays finite
    beta  : SINR threshold the reference link must clear
    snr   : mean SNR of the reference link at the receiver; math.inf
            switches noise off
    p     : probability each interferer is transmitting in the slot
    """

    alpha: float
    beta: float
    snr: float = math.inf
    p: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 2.0):
            raise DomainError(f"path-loss exponent must be > 2, got {self.alpha!r}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise DomainError(f"threshold must be finite and positive, got {self.beta!r}")
        if math.isnan(self.snr) or self.snr <= 0.0:
            raise DomainError(f"snr must be positive (math.inf allowed), got {self.snr!r}")
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"activity probability must lie in [0, 1], got {self.p!r}")

    @property
    def noise_exponent(self) -> float:
        """beta / snr, the noise-only outage exponent (0 when snr is inf)."""
        return 0.0 if math.isinf(self.snr) else self.beta / self.snr


@dataclass(frozen=True)
class Diagnostics:
    """How a result was obtained, where that is more than a tag.

    series_terms : corner-series terms consumed (closed polygon, series route)
    quad_error   : absolute tolerance requested of the quadrature (closed
                   polygon, quadrature route)
    samples      : lattice or Monte Carlo points behind the estimate
    """

    series_terms: int | None = None
    quad_error: float | None = None
    samples: int | None = None


@dataclass(frozen=True)
class OutageResult:
    """Outage probability with its computation route attached."""

    epsilon: float
    method: str
    diagnostics: Diagnostics = field(default_factory=Diagnostics)

    @property
    def coverage(self) -> float:
        return 1.0 - self.epsilon


def conditional_outage(params: ChannelParams, distances) -> float:
    """Outage for one fixed set of interferer distances.

    Averages only over the fading and activity, not positions:

        eps = 1 - exp(-beta/snr) * prod_i (1 - p + p * r_i^alpha / (beta + r_i^alpha))

    distances may be empty (noise-only link).
    """
    r = np.asarray(distances, dtype=float)
    if r.ndim > 1:
        raise DomainError("distances must be a flat sequence")
    if np.any(~np.isfinite(r)) or np.any(r <= 0.0):
        raise DomainError("interferer distances must be finite and positive")
    ra = r**params.alpha
    factors = 1.0 - params.p + params.p * ra / (params.beta + ra)
    return 1.0 - math.exp(-params.noise_exponent) * float(np.prod(factors))


def _closed_interference_mass(
    params: ChannelParams,
    region: Region,
    series_ctl: SeriesControl | None,
    quad_ctl: QuadControl | None,
    corner_method: str,
) -> tuple[float, Diagnostics]:
    """area * (1 - I) by closed form, the natural output of the potentials."""
    a, b = params.alpha, params.beta
    if isinstance(region, Annulus):
        mass = -math.pi * (phi(region.r_out, a, b) - phi(region.r_in, a, b))
        return mass, Diagnostics()
    if isinstance(region, RegularPolygon):
        r_c = corner_break_radius(region)
        t = theta(
            region.r_in,
            r_c,
            region.r_out,
            region.sides,
            a,
            b,
            series_ctl=series_ctl,
            quad_ctl=quad_ctl,
            corner_method=corner_method,
        )
        if corner_method == "series":
            ctl = series_ctl or SeriesControl()
            diag = Diagnostics(series_terms=ctl.max_terms)
        else:
            qctl = quad_ctl or QuadControl()
            diag = Diagnostics(quad_error=qctl.abs_tol)
        return -t, diag
    if isinstance(region, MultiPolygon):
        raise UnsupportedRegionError(
            "no closed form for a MultiPolygon; use method='grid' or method='sample'"
        )
    raise DomainError(f"unknown region type {type(region).__name__}")


def interference_factor(
    params: ChannelParams,
    region: Region,
    method: str = "closed",
    *,
    grid_target: int = DEFAULT_GRID_TARGET,
    samples: int = DEFAULT_SAMPLE_COUNT,
    seed: int = 0,
    series_ctl: SeriesControl | None = None,
    quad_ctl: QuadControl | None = None,
    corner_method: str = "quadrature",
) -> float:
    """Mean of r^alpha / (beta + r^alpha) over the region.

    Always in (0, 1); larger means interferers are typically farther out
    relative to beta^(1/alpha) and hurt less. method is "closed" (exact,
    annuli and regular polygons only), "grid" (lattice average, any region),
    or "sample" (Monte Carlo average with the given seed, any region).
    """
    value, _ = _interference_factor_diag(
        params,
        region,
        method,
        grid_target=grid_target,
        samples=samples,
        seed=seed,
        series_ctl=series_ctl,
        quad_ctl=quad_ctl,
        corner_method=corner_method,
    )
    return value


def _interference_factor_diag(
    params: ChannelParams,
    region: Region,
    method: str,
    *,
    grid_target: int,
    samples: int,
    seed: int,
    series_ctl: SeriesControl | None,
    quad_ctl: QuadControl | None,
    corner_method: str,
) -> tuple[float, Diagnostics]:
    if method == "closed":
        mass, diag = _closed_interference_mass(
            params, region, series_ctl, quad_ctl, corner_method
        )
        return 1.0 - mass / area(region), diag
    if method == "grid":
        pts = grid_points(region, grid_target)
        r = np.hypot(pts[:, 0], pts[:, 1])
        ra = r**params.alpha
        return float(np.mean(ra / (params.beta + ra))), Diagnostics(samples=len(r))
    if method == "sample":
        if not isinstance(samples, (int, np.integer)) or samples < 1:
            raise DomainError(f"sample count must be a positive integer, got {samples!r}")
        rng = np.random.default_rng(seed)
        r = sample_distances(region, int(samples), rng)
        ra = r**params.alpha
        return float(np.mean(ra / (params.beta + ra))), Diagnostics(samples=int(samples))
    raise DomainError(f"unknown method {method!r}; expected closed, grid, or sample")


def _method_tag(region: Region, method: str) -> str:
    if method == "closed":
        if isinstance(region, Annulus):
            return "closed-form-annulus"
        if isinstance(region, RegularPolygon):
            return "closed-form-polygon"
        return "closed-form"
    if method == "grid":
        return "quadrature"
    return "sampled"


def bpp_outage(
    params: ChannelParams,
    region: Region,
    m: int,
    method: str = "closed",
    **kwargs,
) -> OutageResult:
    """Spatially averaged outage with exactly m uniform interferers.

        eps = 1 - exp(-beta/snr) * (1 - p + p I)^m

    Keyword arguments pass through to interference_factor.
    """
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 0:
        raise DomainError(f"interferer count must be an integer >= 0, got {m!r}")
    tag = _method_tag(region, method)
    if m == 0 or params.p == 0.0:
        eps = 1.0 - math.exp(-params.noise_exponent)
        return OutageResult(eps, tag)
    factor, diag = _interference_factor_diag(params, region, method, **_filled(kwargs))
    eps = 1.0 - math.exp(-params.noise_exponent) * (
        1.0 - params.p + params.p * factor
    ) ** int(m)
    return OutageResult(eps, tag, diag)


def ppp_outage(
    params: ChannelParams,
    region: Region,
    intensity: float,
    method: str = "closed",
    **kwargs,
) -> OutageResult:
    """Spatially averaged outage with a Poisson population on the region.

        eps = 1 - exp(-beta/snr - intensity * p * area * (1 - I))

    The closed route evaluates area * (1 - I) directly from the potentials
    rather than through I, which keeps full precision when I is near 1.
    """
    _check_intensity(intensity)
    tag = _method_tag(region, method)
    if intensity == 0.0 or params.p == 0.0:
        eps = 1.0 - math.exp(-params.noise_exponent)
        return OutageResult(eps, tag)
    kw = _filled(kwargs)
    if method == "closed":
        mass, diag = _closed_interference_mass(
            params, region, kw["series_ctl"], kw["quad_ctl"], kw["corner_method"]
        )
    else:
        factor, diag = _interference_factor_diag(params, region, method, **kw)
        mass = area(region) * (1.0 - factor)
    eps = 1.0 - math.exp(-params.noise_exponent - intensity * params.p * mass)
    return OutageResult(eps, tag, diag)


def ppp_outage_by_count_sum(
    params: ChannelParams,
    region: Region,
    intensity: float,
    method: str = "closed",
    tail: float = 1e-12,
    **kwargs,
) -> OutageResult:
    """Poisson outage assembled count by count, as a cross-check.

    Conditions on the interferer count, applies the fixed-count formula,
    and sums against the Poisson weights out to the 1 - tail quantile.
    Agrees with ppp_outage to roughly the tail mass; it exists so the
    exponentiated closed form is never the only route to the number.
    """
    _check_intensity(intensity)
    if not (0.0 < tail < 0.1):
        raise DomainError(f"tail must lie in (0, 0.1), got {tail!r}")
    tag = "count-sum"
    mean_count = intensity * area(region)
    if mean_count == 0.0 or params.p == 0.0:
        return OutageResult(1.0 - math.exp(-params.noise_exponent), tag)
    factor, diag = _interference_factor_diag(params, region, method, **_filled(kwargs))
    m_max = int(sp_stats.poisson.ppf(1.0 - tail, mean_count)) + 1
    counts = np.arange(0, m_max + 1)
    weights = sp_stats.poisson.pmf(counts, mean_count)
    base = 1.0 - params.p + params.p * factor
    success = math.exp(-params.noise_exponent) * float(np.sum(weights * base**counts))
    return OutageResult(1.0 - success, tag, diag)


def plane_ppp_outage(params: ChannelParams, intensity: float) -> OutageResult:
    """Outage with Poisson interferers over the whole plane.

        eps = 1 - exp(-beta/snr - (2 pi^2 intensity p / alpha)
                                    * beta^(2/alpha) / sin(2 pi / alpha))

    This is the r_out -> infinity limit of the disk formula; finite only
    because alpha > 2.
    """
    _check_intensity(intensity)
    mass = -math.pi * plane_limit_phi(params.alpha, params.beta)
    eps = 1.0 - math.exp(-params.noise_exponent - intensity * params.p * mass)
    return OutageResult(eps, "plane")


def _check_intensity(intensity: float) -> None:
    if not (math.isfinite(intensity) and intensity >= 0.0):
        raise DomainError(f"intensity must be finite and >= 0, got {intensity!r}")


def _filled(kwargs: dict) -> dict:
    known = {
        "grid_target": DEFAULT_GRID_TARGET,
        "samples": DEFAULT_SAMPLE_COUNT,
        "seed": 0,
        "series_ctl": None,
        "quad_ctl": None,
        "corner_method": "quadrature",
    }
    extra = set(kwargs) - set(known)
    if extra:
        raise TypeError(f"unexpected keyword arguments {sorted(extra)}")
    known.update(kwargs)
    return known
