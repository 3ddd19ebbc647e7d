"""Closed-form building blocks for spatially averaged outage probabilities.

The central object is the power-law moment

    psi(k, y) = integral_0^y r^(alpha+k) / (1 + r^alpha / beta) dr,

which carries the Rayleigh-faded interference kernel through every closed
form in this package. It is evaluated two independent ways: a Gauss
hypergeometric representation and direct adaptive quadrature. The polygon
corner correction (an arccos-weighted variant of the same integral) likewise
has a truncated-series route and a quadrature route; the quadrature route is
the accurate one and is used by default, while the series route is retained
because its truncation behavior is of interest in its own right (see
``big_k_diff``).

All angles are radians, all parameters linear (no dB here).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp_special
from scipy.integrate import quad

from .errors import DomainError, SeriesError

__all__ = [
    "SeriesControl",
    "QuadControl",
    "gauss_2f1",
    "psi",
    "psi_diff",
    "big_k_diff",
    "big_k_diff_quadrature",
    "phi",
    "plane_limit_phi",
    "theta",
]

# Term caps for the internal hypergeometric power series. The transformed
# argument never exceeds 1/2 on the supported branches, so 2000 is generous;
# the fallback cap only matters in a degenerate parameter corner (see
# gauss_2f1) where convergence is linear rather than geometric.
_SERIES_CAP = 2000
_FALLBACK_CAP = 400_000


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the corner-correction series.

    max_terms caps the number of series terms; rel_tol allows an early stop
    once a term falls below rel_tol times the accumulated value.
    """

    max_terms: int = 25
    rel_tol: float = 1e-12

    def __post_init__(self):
        if not isinstance(self.max_terms, int) or self.max_terms < 1:
            raise DomainError(f"max_terms must be an integer >= 1, got {self.max_terms!r}")
        if not (self.rel_tol > 0.0):
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")


@dataclass(frozen=True)
class QuadControl:
    """Tolerances handed to the adaptive quadrature routines."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0.0) or not (self.rel_tol > 0.0):
            raise DomainError("quadrature tolerances must be positive")
        if not isinstance(self.max_subdivisions, int) or self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be an integer >= 1")


_DEFAULT_SERIES = SeriesControl()
_DEFAULT_QUAD = QuadControl()


def _series_sum(a: float, b: float, c: float, z: float, cap: int) -> float:
    """Plain power series sum_n (a)_n (b)_n / ((c)_n n!) z^n for 0 <= z < 1."""
    term = 1.0
    total = 1.0
    quiet = 0
    for n in range(cap):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
        if abs(term) <= 1e-17 * abs(total):
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise SeriesError(
        f"hypergeometric series did not converge within {cap} terms (z={z!r})",
        partial=total,
    )


def gauss_2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; x) for x <= 0.

    The argument is first mapped into [0, 1) with the Pfaff transformation
    x -> x/(x-1). For x < -1 the transformed argument lies in (1/2, 1), where
    the plain series is slow, so the standard z -> 1-z connection formula is
    applied on top; its argument 1/(1-x) then shrinks with |x| and the
    evaluation stays fast and accurate out to arbitrarily large |x|.

    Relative accuracy is ~1e-14 except within ~1e-4 of the connection
    formula's removable parameter degeneracy (b - a an integer, |x| > 1),
    where a slower direct series takes over.
    """
    for name, v in (("a", a), ("b", b), ("c", c), ("x", x)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")
    if c <= 0.0 and abs(c - round(c)) < 1e-9:
        raise DomainError(f"c must not be a non-positive integer, got {c!r}")
    if x > 0.0:
        raise DomainError(f"argument must be <= 0, got {x!r}")
    if x == 0.0:
        return 1.0

    z = x / (x - 1.0)
    prefactor = (1.0 - x) ** (-a)
    b_t = c - b  # second parameter after the Pfaff transformation
    if z <= 0.5:
        return prefactor * _series_sum(a, b_t, c, z, _SERIES_CAP)

    w = 1.0 / (1.0 - x)  # equals 1 - z, in (0, 1/2)
    gap = b - a          # the c-a-b gap of the transformed series
    if abs(gap - round(gap)) < 1e-4:
        # Connection coefficients blow up; fall back to the direct series,
        # which converges (slowly) for any z < 1.
        return prefactor * _series_sum(a, b_t, c, z, _FALLBACK_CAP)

    g = sp_special.gamma
    # float() so no numpy scalar escapes into callers' arithmetic
    coef1 = float(g(c) * g(gap) / (g(c - a) * g(b)))
    coef2 = float(g(c) * g(-gap) / (g(a) * g(b_t)))
    if not (math.isfinite(coef1) and math.isfinite(coef2)):
        raise DomainError(
            f"2F1 parameters hit a gamma pole (a={a!r}, b={b!r}, c={c!r})"
        )
    part1 = coef1 * _series_sum(a, b_t, a - b + 1.0, w, _SERIES_CAP)
    part2 = coef2 * w**gap * _series_sum(c - a, b, gap + 1.0, w, _SERIES_CAP)
    return prefactor * (part1 + part2)


def _check_channel(alpha: float, beta: float) -> None:
    if not (math.isfinite(alpha) and alpha > 2.0):
        raise DomainError(f"path-loss exponent must be finite and > 2, got {alpha!r}")
    if not (math.isfinite(beta) and beta > 0.0):
        raise DomainError(f"threshold must be finite and positive, got {beta!r}")


def psi(
    k: float,
    y: float,
    alpha: float,
    beta: float,
    how: str = "hypergeometric",
    quad_ctl: QuadControl | None = None,
) -> float:
    """Power-law moment of the fading kernel over [0, y].

    psi(k, y) = integral_0^y r^(alpha+k) / (1 + r^alpha/beta) dr.

    how selects the evaluation route: "hypergeometric" (closed form via
    gauss_2f1) or "quadrature" (adaptive). The two agree to ~1e-12 relative
    and serve as mutual cross-checks.
    """
    _check_channel(alpha, beta)
    if not (math.isfinite(y) and y >= 0.0):
        raise DomainError(f"upper limit must be finite and >= 0, got {y!r}")
    if alpha + k <= -1.0:
        raise DomainError(
            f"one-sided moment diverges at 0 for alpha+k <= -1 (k={k!r}); use psi_diff"
        )
    if y == 0.0:
        return 0.0
    if how == "hypergeometric":
        b = (1.0 + k) / alpha + 1.0
        return y ** (alpha + k + 1.0) / (1.0 + k + alpha) * gauss_2f1(
            1.0, b, b + 1.0, -(y**alpha) / beta
        )
    if how == "quadrature":
        ctl = quad_ctl or _DEFAULT_QUAD
        knee = beta ** (1.0 / alpha)  # where the denominator turns over
        points = [knee] if 0.0 < knee < y else None
        val, _ = quad(
            lambda r: r ** (alpha + k) / (1.0 + r**alpha / beta),
            0.0,
            y,
            points=points,
            epsabs=ctl.abs_tol,
            epsrel=ctl.rel_tol,
            limit=ctl.max_subdivisions,
        )
        return val
    raise DomainError(f"unknown evaluation route {how!r}")


def psi_diff(
    k: float,
    y0: float,
    y1: float,
    alpha: float,
    beta: float,
    quad_ctl: QuadControl | None = None,
) -> float:
    """Two-sided moment integral_{y0}^{y1} r^(alpha+k) / (1 + r^alpha/beta) dr.

    Unlike psi, this stays finite for arbitrarily negative k as long as
    y0 > 0, which is what the corner-correction series needs.
    """
    _check_channel(alpha, beta)
    if not (math.isfinite(y0) and math.isfinite(y1)) or y0 < 0.0 or y1 < y0:
        raise DomainError(f"need 0 <= y0 <= y1, got y0={y0!r}, y1={y1!r}")
    if y0 == 0.0 and alpha + k <= -1.0:
        raise DomainError(
            f"moment diverges at 0 for alpha+k <= -1 (k={k!r}); use y0 > 0"
        )
    if y0 == y1:
        return 0.0
    ctl = quad_ctl or _DEFAULT_QUAD
    knee = beta ** (1.0 / alpha)
    points = [knee] if y0 < knee < y1 else None
    val, _ = quad(
        lambda r: r ** (alpha + k) / (1.0 + r**alpha / beta),
        y0,
        y1,
        points=points,
        epsabs=ctl.abs_tol,
        epsrel=ctl.rel_tol,
        limit=ctl.max_subdivisions,
    )
    return val


def _corner_band_checks(y0: float, y1: float, r_c: float) -> None:
    if not (math.isfinite(y0) and math.isfinite(y1) and math.isfinite(r_c)):
        raise DomainError("corner band limits must be finite")
    if r_c <= 0.0:
        raise DomainError(f"corner-break radius must be positive, got {r_c!r}")
    if y0 < r_c * (1.0 - 1e-12):
        raise DomainError(
            f"corner band starts below the corner-break radius (y0={y0!r} < r_c={r_c!r})"
        )
    if y1 < y0:
        raise DomainError(f"need y0 <= y1, got y0={y0!r}, y1={y1!r}")


def _corner_series(
    y0: float,
    y1: float,
    r_c: float,
    alpha: float,
    beta: float,
    ctl: SeriesControl,
    qctl: QuadControl,
) -> tuple[float, int]:
    """Truncated-series corner value and the number of terms consumed."""
    lead = 0.5 * math.pi * psi_diff(1.0, y0, y1, alpha, beta, qctl)
    if y0 == y1:
        return 0.0, 0
    acc = 0.0
    coeff = 1.0  # (2n)! / (4^n (n!)^2 (2n+1)) built by recurrence
    used = 0
    for n in range(ctl.max_terms):
        if n > 0:
            coeff *= (2 * n - 1) ** 2 / ((2 * n) * (2 * n + 1.0))
        power = 2 * n + 1
        # The factor r_c^(2n+1) stays inside the integrand so nothing
        # overflows at large n: (r_c/r)^(2n+1) <= 1 on the band.
        term, _ = quad(
            lambda r: (r_c / r) ** power * beta * r ** (alpha + 1.0) / (beta + r**alpha),
            y0,
            y1,
            epsabs=qctl.abs_tol,
            epsrel=qctl.rel_tol,
            limit=qctl.max_subdivisions,
        )
        term *= coeff
        acc += term
        used = n + 1
        if abs(term) <= ctl.rel_tol * abs(lead - acc):
            break
    return lead - acc, used


def big_k_diff(
    y0: float,
    y1: float,
    r_c: float,
    alpha: float,
    beta: float,
    ctl: SeriesControl | None = None,
    quad_ctl: QuadControl | None = None,
) -> float:
    """Corner-correction kernel over [y0, y1], truncated-series route.

    Equals (pi/2) * psi_diff(1, y0, y1) minus the arccos Taylor series
    integrated term by term, truncated per ctl. The series argument r_c/r
    touches 1 at the lower endpoint, so the truncation error decays only
    like max_terms^(-3/2): about 5e-4 relative at the default 25 terms for
    a corner band spanning an octave. Use big_k_diff_quadrature when the
    value itself (rather than the truncation behavior) is what matters.
    """
    _check_channel(alpha, beta)
    _corner_band_checks(y0, y1, r_c)
    val, _ = _corner_series(
        y0, y1, r_c, alpha, beta, ctl or _DEFAULT_SERIES, quad_ctl or _DEFAULT_QUAD
    )
    return val


def big_k_diff_quadrature(
    y0: float,
    y1: float,
    r_c: float,
    alpha: float,
    beta: float,
    quad_ctl: QuadControl | None = None,
) -> float:
    """Corner-correction kernel over [y0, y1] by adaptive quadrature.

    Integrates beta * r^(alpha+1) / (beta + r^alpha) * arccos(r_c/r). When
    the band starts at the corner-break radius, the arccos factor has a
    square-root onset there; the substitution r = r_c + u^2 renders the
    integrand smooth, so the quadrature converges at full accuracy.
    """
    _check_channel(alpha, beta)
    _corner_band_checks(y0, y1, r_c)
    if y0 == y1:
        return 0.0
    ctl = quad_ctl or _DEFAULT_QUAD

    def kernel(r: float) -> float:
        ratio = r_c / r
        if ratio > 1.0:
            ratio = 1.0
        return beta * r ** (alpha + 1.0) / (beta + r**alpha) * math.acos(ratio)

    if y0 <= r_c * (1.0 + 1e-12):
        u_hi = math.sqrt(y1 - r_c)
        val, _ = quad(
            lambda u: 2.0 * u * kernel(r_c + u * u),
            0.0,
            u_hi,
            epsabs=ctl.abs_tol,
            epsrel=ctl.rel_tol,
            limit=ctl.max_subdivisions,
        )
        return val
    val, _ = quad(
        kernel,
        y0,
        y1,
        epsabs=ctl.abs_tol,
        epsrel=ctl.rel_tol,
        limit=ctl.max_subdivisions,
    )
    return val


def phi(x: float, alpha: float, beta: float) -> float:
    """Disk interference potential: (2/beta) * psi(1, x) - x^2.

    Zero at x = 0; tends to plane_limit_phi(alpha, beta) as x grows. The
    closed forms for annuli and disks need only differences of this.
    """
    _check_channel(alpha, beta)
    if not (math.isfinite(x) and x >= 0.0):
        raise DomainError(f"radius must be finite and >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    return (2.0 / beta) * psi(1.0, x, alpha, beta) - x * x


def plane_limit_phi(alpha: float, beta: float) -> float:
    """Limit of phi(x) as x -> infinity: -(2 pi / alpha) beta^(2/alpha) csc(2 pi / alpha)."""
    _check_channel(alpha, beta)
    angle = 2.0 * math.pi / alpha
    return -angle * beta ** (2.0 / alpha) / math.sin(angle)


def theta(
    r_in: float,
    r_c: float,
    r_out: float,
    sides: int,
    alpha: float,
    beta: float,
    series_ctl: SeriesControl | None = None,
    quad_ctl: QuadControl | None = None,
    corner_method: str = "quadrature",
) -> float:
    """Interference excess of a regular polygon with an exclusion disk.

    Combines the radial potential difference, the corner correction over
    [r_c, r_out], and the area defect term:

        theta = pi * (phi(r_out) - phi(r_in))
                - (2 * sides / beta) * K
                - r_out^2 * (sides/2 * sin(2 pi / sides) - pi)

    Dividing by the region area gives (interference factor - 1) exactly.
    corner_method picks how K is computed: "quadrature" (default, accurate
    to the quadrature tolerances) or "series" (truncated per series_ctl;
    see big_k_diff for its convergence rate).
    """
    _check_channel(alpha, beta)
    if not isinstance(sides, (int, np.integer)) or isinstance(sides, bool) or sides < 3:
        raise DomainError(f"side count must be an integer >= 3, got {sides!r}")
    if not (0.0 <= r_in <= r_c * (1.0 + 1e-12)) or not (r_c <= r_out * (1.0 + 1e-12)):
        raise DomainError(
            f"need 0 <= r_in <= r_c <= r_out, got {r_in!r}, {r_c!r}, {r_out!r}"
        )
    if corner_method == "quadrature":
        corner = big_k_diff_quadrature(r_c, r_out, r_c, alpha, beta, quad_ctl)
    elif corner_method == "series":
        corner = big_k_diff(r_c, r_out, r_c, alpha, beta, series_ctl, quad_ctl)
    else:
        raise DomainError(f"unknown corner method {corner_method!r}")
    dphi = phi(r_out, alpha, beta) - phi(r_in, alpha, beta)
    area_defect = r_out * r_out * (0.5 * sides * math.sin(2.0 * math.pi / sides) - math.pi)
    return math.pi * dphi - (2.0 * sides / beta) * corner - area_defect
