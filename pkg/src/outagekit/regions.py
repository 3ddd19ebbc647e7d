"""Planar interferer regions, measured from a receiver at the origin.

Three region kinds are supported:

* ``Annulus`` -- centered ring 0 <= r_in < r_out (a disk when r_in = 0);
* ``RegularPolygon`` -- origin-centered regular polygon given by its
  circumradius, optionally with a centered circular exclusion hole;
* ``MultiPolygon`` -- one or more simple rings combined by the even-odd
  rule, for footprints with no useful symmetry.

Everything downstream cares about the distance from the origin to a point
drawn uniformly over the region, so alongside containment, sampling, and
area, this module carries the closed-form distance density where one exists
(annuli and regular polygons) and uniform samplers plus a deterministic
evaluation grid for everything else.

Regular polygons are oriented with a vertex on the positive x axis. The
corner-break radius (the apothem, adjusted for nothing: the inscribed-circle
radius) splits the distance density into its two analytic branches.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import DomainError, SamplingError, UnsupportedRegionError

__all__ = [
    "Annulus",
    "RegularPolygon",
    "MultiPolygon",
    "Region",
    "area",
    "corner_break_radius",
    "bounding_box",
    "contains",
    "distance_pdf",
    "distance_cdf",
    "sample_point",
    "sample_points",
    "sample_distance",
    "sample_distances",
    "grid_points",
    "scale_to_area",
    "region_to_dict",
    "region_from_dict",
    "load_region",
    "bundled_region",
    "BUNDLED_REGIONS",
]

# Rejection sampling gives up after this many consecutive misses; reached
# only for regions that are a vanishing fraction of their bounding box.
_REJECTION_MISS_CAP = 1_000_000

BUNDLED_REGIONS = ("disk2", "triangle", "irregular")


@dataclass(frozen=True)
class Annulus:
    """Centered ring r_in <= ||x|| <= r_out; r_in = 0 gives a disk."""

    r_in: float
    r_out: float

    def __post_init__(self):
        if not (math.isfinite(self.r_in) and math.isfinite(self.r_out)):
            raise DomainError("annulus radii must be finite")
        if not (0.0 <= self.r_in < self.r_out):
            raise DomainError(
                f"need 0 <= r_in < r_out, got r_in={self.r_in!r}, r_out={self.r_out!r}"
            )


@dataclass(frozen=True)
class RegularPolygon:
    """Origin-centered regular polygon, vertex on the +x axis.

    sides is the number of vertices, r_out the circumradius, r_in the radius
    of an optional centered exclusion disk. The hole must fit inside the
    inscribed circle so the two-branch distance density stays valid.
    """

    sides: int
    r_out: float
    r_in: float = 0.0

    def __post_init__(self):
        if (
            not isinstance(self.sides, (int, np.integer))
            or isinstance(self.sides, bool)
            or self.sides < 3
        ):
            raise DomainError(f"side count must be an integer >= 3, got {self.sides!r}")
        object.__setattr__(self, "sides", int(self.sides))
        if not (math.isfinite(self.r_out) and self.r_out > 0.0):
            raise DomainError(f"circumradius must be positive, got {self.r_out!r}")
        if not (math.isfinite(self.r_in) and self.r_in >= 0.0):
            raise DomainError(f"exclusion radius must be >= 0, got {self.r_in!r}")
        r_c = self.r_out * math.cos(math.pi / self.sides)
        if self.r_in > r_c:
            raise DomainError(
                f"exclusion radius {self.r_in!r} exceeds the inscribed radius {r_c!r}"
            )


@dataclass(frozen=True)
class MultiPolygon:
    """Union of simple rings combined by the even-odd rule.

    A point is inside when a ray from it crosses the rings' edges an odd
    number of times, so a ring nested inside another punches a hole. Rings
    may be listed in any orientation; each must be simple (no repeated or
    crossing edges) and rings must not touch each other.
    """

    rings: tuple[tuple[tuple[float, float], ...], ...]

    def __post_init__(self):
        norm = []
        for ring in self.rings:
            pts = tuple((float(x), float(y)) for x, y in ring)
            if len(pts) < 3:
                raise DomainError(f"ring needs at least 3 vertices, got {len(pts)}")
            for x, y in pts:
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise DomainError("ring vertices must be finite")
            norm.append(pts)
        object.__setattr__(self, "rings", tuple(norm))
        for pts in self.rings:
            _check_ring_simple(pts)
        if _multipolygon_area(self.rings) <= 0.0:
            raise DomainError("multipolygon encloses no area under the even-odd rule")


Region = Annulus | RegularPolygon | MultiPolygon


def _check_ring_simple(pts: tuple[tuple[float, float], ...]) -> None:
    n = len(pts)
    for i in range(n):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        if ax == bx and ay == by:
            raise DomainError(f"ring has a zero-length edge at vertex {i}")
    # O(n^2) proper-intersection test; rings here are dozens of vertices, not
    # thousands, so this is plenty.
    for i in range(n):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # shared-endpoint neighbors
            cx, cy = pts[j]
            dx, dy = pts[(j + 1) % n]
            d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
            d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
            d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
            if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
                raise DomainError(
                    f"ring is self-intersecting (edges {i} and {j} cross)"
                )


def _ring_arrays(ring: tuple[tuple[float, float], ...]) -> tuple[np.ndarray, np.ndarray]:
    vx = np.array([p[0] for p in ring] + [ring[0][0]])
    vy = np.array([p[1] for p in ring] + [ring[0][1]])
    return vx, vy


def _edge_table(
    rings: tuple[tuple[tuple[float, float], ...], ...],
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Endpoint arrays of every non-horizontal edge across all rings."""
    x1 = []
    y1 = []
    x2 = []
    y2 = []
    for ring in rings:
        vx, vy = _ring_arrays(ring)
        x1.append(vx[:-1])
        y1.append(vy[:-1])
        x2.append(vx[1:])
        y2.append(vy[1:])
    ex1 = np.concatenate(x1)
    ey1 = np.concatenate(y1)
    ex2 = np.concatenate(x2)
    ey2 = np.concatenate(y2)
    keep = ey1 != ey2  # horizontal edges never straddle a scan value
    return ex1[keep], ey1[keep], ex2[keep], ey2[keep]


def _rings_contain(
    rings: tuple[tuple[tuple[float, float], ...], ...],
    x: np.ndarray,
    y: np.ndarray,
) -> np.ndarray:
    """Even-odd crossing test, vectorized over points."""
    x1, y1, x2, y2 = _edge_table(rings)
    slope = (x2 - x1) / (y2 - y1)
    inside = np.zeros(np.shape(x), dtype=bool)
    for j in range(len(x1)):
        straddles = (y1[j] > y) != (y2[j] > y)
        inside ^= straddles & (x < x1[j] + (y - y1[j]) * slope[j])
    return inside


def _ring_shoelace(ring: tuple[tuple[float, float], ...]) -> float:
    vx, vy = _ring_arrays(ring)
    return 0.5 * float(np.sum(vx[:-1] * vy[1:] - vx[1:] * vy[:-1]))


def _multipolygon_area(rings: tuple[tuple[tuple[float, float], ...], ...]) -> float:
    """Even-odd area: each ring counts with sign (-1)^depth.

    Depth is how many *other* rings contain the ring's first vertex; rings
    are disjoint, so any vertex is representative.
    """
    total = 0.0
    for i, ring in enumerate(rings):
        others = tuple(r for j, r in enumerate(rings) if j != i)
        x0 = np.array([ring[0][0]])
        y0 = np.array([ring[0][1]])
        depth = 0
        for other in others:
            if bool(_rings_contain((other,), x0, y0)[0]):
                depth += 1
        total += (-1.0) ** depth * abs(_ring_shoelace(ring))
    return total


def area(region: Region) -> float:
    """Area of the region."""
    if isinstance(region, Annulus):
        return math.pi * (region.r_out**2 - region.r_in**2)
    if isinstance(region, RegularPolygon):
        poly = 0.5 * region.sides * region.r_out**2 * math.sin(2.0 * math.pi / region.sides)
        return poly - math.pi * region.r_in**2
    if isinstance(region, MultiPolygon):
        return _multipolygon_area(region.rings)
    raise DomainError(f"unknown region type {type(region).__name__}")


def corner_break_radius(region: RegularPolygon) -> float:
    """Radius where the polygon's distance density changes branch.

    This is the inscribed-circle radius r_out * sin(pi (sides-2) / (2 sides)),
    i.e. the apothem: beyond it, circles of that radius start leaving the
    polygon through its edges.
    """
    if not isinstance(region, RegularPolygon):
        raise DomainError("corner_break_radius applies to regular polygons only")
    half_interior = math.pi * (region.sides - 2) / (2.0 * region.sides)
    return region.r_out * math.sin(half_interior)


def bounding_box(region: Region) -> tuple[float, float, float, float]:
    """Axis-aligned bounding box (xmin, ymin, xmax, ymax)."""
    if isinstance(region, (Annulus, RegularPolygon)):
        r = region.r_out
        return (-r, -r, r, r)
    if isinstance(region, MultiPolygon):
        xs = [p[0] for ring in region.rings for p in ring]
        ys = [p[1] for ring in region.rings for p in ring]
        return (min(xs), min(ys), max(xs), max(ys))
    raise DomainError(f"unknown region type {type(region).__name__}")


def _contains_arrays(region: Region, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if isinstance(region, Annulus):
        r = np.hypot(x, y)
        return (r >= region.r_in) & (r <= region.r_out)
    if isinstance(region, RegularPolygon):
        r = np.hypot(x, y)
        ang = np.arctan2(y, x)
        sector = 2.0 * math.pi / region.sides
        # Fold the angle into one edge sector; the distance to the binding
        # edge is r * cos(offset from the edge normal).
        frac = np.mod(ang / sector, 1.0)
        offset = sector * np.abs(frac - 0.5)
        r_c = region.r_out * math.cos(math.pi / region.sides)
        return (r >= region.r_in) & (r * np.cos(offset) <= r_c)
    if isinstance(region, MultiPolygon):
        return _rings_contain(region.rings, x, y)
    raise DomainError(f"unknown region type {type(region).__name__}")


def contains(region: Region, x, y=None):
    """Membership test. Accepts contains(region, (x, y)) or array x, y."""
    if y is None:
        x, y = x
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    out = _contains_arrays(region, x_arr, y_arr)
    if np.ndim(out) == 0:
        return bool(out)
    return out


def distance_pdf(region: Region, r):
    """Density of the origin distance of a uniform point; 0 off-support.

    Closed forms exist for annuli (2 pi r / area on [r_in, r_out]) and
    regular polygons, whose density loses an arccos wedge per side beyond
    the corner-break radius. MultiPolygon has no closed form here; use
    sample_distances or grid_points instead.
    """
    if isinstance(region, MultiPolygon):
        raise UnsupportedRegionError(
            "no closed-form distance density for a MultiPolygon; "
            "use sample_distances or grid_points"
        )
    r_arr = np.asarray(r, dtype=float)
    scalar = np.ndim(r_arr) == 0
    r_arr = np.atleast_1d(r_arr)
    if np.any(~np.isfinite(r_arr)) or np.any(r_arr < 0.0):
        raise DomainError("distances must be finite and >= 0")
    a = area(region)
    out = np.zeros_like(r_arr)
    if isinstance(region, Annulus):
        on = (r_arr >= region.r_in) & (r_arr <= region.r_out)
        out[on] = 2.0 * math.pi * r_arr[on] / a
    else:
        r_c = corner_break_radius(region)
        on = (r_arr >= region.r_in) & (r_arr <= region.r_out)
        out[on] = 2.0 * math.pi * r_arr[on] / a
        wedge = on & (r_arr > r_c)
        rw = r_arr[wedge]
        out[wedge] -= (
            2.0 * region.sides * rw / a * np.arccos(np.clip(r_c / rw, -1.0, 1.0))
        )
    if scalar:
        return float(out[0])
    return out


def distance_cdf(region: Region, r):
    """Distribution function of the origin distance of a uniform point."""
    if isinstance(region, MultiPolygon):
        raise UnsupportedRegionError(
            "no closed-form distance distribution for a MultiPolygon; "
            "use sample_distances"
        )
    r_arr = np.asarray(r, dtype=float)
    scalar = np.ndim(r_arr) == 0
    r_arr = np.atleast_1d(r_arr)
    if np.any(~np.isfinite(r_arr)) or np.any(r_arr < 0.0):
        raise DomainError("distances must be finite and >= 0")
    a = area(region)
    rr = np.clip(r_arr, region.r_in, region.r_out)
    disk_part = math.pi * (rr**2 - region.r_in**2)
    if isinstance(region, Annulus):
        out = disk_part / a
    else:
        r_c = corner_break_radius(region)
        out = disk_part.copy()
        past = rr > r_c
        rp = rr[past]
        # Area of the disk cap lying outside each of the polygon's sides.
        cap = rp**2 * np.arccos(np.clip(r_c / rp, -1.0, 1.0)) - r_c * np.sqrt(
            np.maximum(rp**2 - r_c**2, 0.0)
        )
        out[past] -= region.sides * cap
        out /= a
    out = np.clip(out, 0.0, 1.0)
    if scalar:
        return float(out[0])
    return out


def _rejection_sample(region: Region, n: int, rng: np.random.Generator) -> np.ndarray:
    xmin, ymin, xmax, ymax = bounding_box(region)
    out = np.empty((n, 2))
    have = 0
    misses = 0
    while have < n:
        # chunk rule is part of the determinism contract: any fixed rule
        # works, this one balances overdraw against peak memory
        chunk = min(max(1024, 2 * (n - have)), 131072)
        xs = rng.uniform(xmin, xmax, chunk)
        ys = rng.uniform(ymin, ymax, chunk)
        keep = _contains_arrays(region, xs, ys)
        hits = int(np.count_nonzero(keep))
        if hits == 0:
            misses += chunk
            if misses >= _REJECTION_MISS_CAP:
                raise SamplingError(
                    f"rejection sampler exceeded {_REJECTION_MISS_CAP} consecutive "
                    "misses; the region is a vanishing fraction of its bounding box"
                )
            continue
        misses = 0
        take = min(hits, n - have)
        out[have : have + take, 0] = xs[keep][:take]
        out[have : have + take, 1] = ys[keep][:take]
        have += take
    return out


def sample_points(region: Region, n: int, rng: np.random.Generator) -> np.ndarray:
    """n uniform points over the region, shape (n, 2).

    Annuli use the exact polar inverse-CDF construction (radius then angle,
    two uniforms per point); polygons and multipolygons use bounding-box
    rejection. Both consume only the supplied generator, so a fixed
    generator state fixes the output.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
        raise DomainError(f"sample count must be an integer >= 0, got {n!r}")
    n = int(n)
    if isinstance(region, Annulus):
        u = rng.random(n)
        v = rng.random(n)
        r = np.sqrt(region.r_in**2 + u * (region.r_out**2 - region.r_in**2))
        ang = 2.0 * math.pi * v
        return np.column_stack((r * np.cos(ang), r * np.sin(ang)))
    return _rejection_sample(region, n, rng)


def sample_point(region: Region, rng: np.random.Generator) -> tuple[float, float]:
    """One uniform point as an (x, y) tuple."""
    pt = sample_points(region, 1, rng)
    return (float(pt[0, 0]), float(pt[0, 1]))


def sample_distances(region: Region, n: int, rng: np.random.Generator) -> np.ndarray:
    """Origin distances of n uniform points (the norms of sample_points)."""
    pts = sample_points(region, n, rng)
    return np.hypot(pts[:, 0], pts[:, 1])


def sample_distance(region: Region, rng: np.random.Generator) -> float:
    """Origin distance of one uniform point."""
    return float(sample_distances(region, 1, rng)[0])


def grid_points(region: Region, count_target: int) -> np.ndarray:
    """Deterministic cell-centered square lattice restricted to the region.

    The spacing is sqrt(area / count_target), so roughly count_target points
    survive the restriction (exactly count_target for a region that tiles
    the lattice, like an axis-aligned square). Useful as a quadrature rule
    over regions with no closed-form distance density.
    """
    if not isinstance(count_target, (int, np.integer)) or isinstance(count_target, bool):
        raise DomainError(f"count_target must be an integer, got {count_target!r}")
    if count_target < 1:
        raise DomainError(f"count_target must be >= 1, got {count_target!r}")
    a = area(region)
    h = math.sqrt(a / count_target)
    xmin, ymin, xmax, ymax = bounding_box(region)
    nx = int(math.floor((xmax - xmin) / h + 0.5))
    ny = int(math.floor((ymax - ymin) / h + 0.5))
    xs = xmin + (np.arange(max(nx, 1)) + 0.5) * h
    ys = ymin + (np.arange(max(ny, 1)) + 0.5) * h
    gx, gy = np.meshgrid(xs, ys)
    gx = gx.ravel()
    gy = gy.ravel()
    keep = _contains_arrays(region, gx, gy)
    if not np.any(keep):
        raise DomainError(
            "no lattice point landed inside the region; raise count_target"
        )
    return np.column_stack((gx[keep], gy[keep]))


def scale_to_area(region: Region, target_area: float) -> Region:
    """Same shape, uniformly rescaled about the origin to the given area."""
    if not (math.isfinite(target_area) and target_area > 0.0):
        raise DomainError(f"target area must be positive, got {target_area!r}")
    s = math.sqrt(target_area / area(region))
    if isinstance(region, Annulus):
        return Annulus(region.r_in * s, region.r_out * s)
    if isinstance(region, RegularPolygon):
        return RegularPolygon(region.sides, region.r_out * s, region.r_in * s)
    if isinstance(region, MultiPolygon):
        rings = tuple(
            tuple((x * s, y * s) for x, y in ring) for ring in region.rings
        )
        return MultiPolygon(rings)
    raise DomainError(f"unknown region type {type(region).__name__}")


def region_to_dict(region: Region) -> dict:
    """JSON-ready description of a region."""
    if isinstance(region, Annulus):
        return {"type": "annulus", "r_in": region.r_in, "r_out": region.r_out}
    if isinstance(region, RegularPolygon):
        return {
            "type": "polygon",
            "L": region.sides,
            "r_out": region.r_out,
            "r_in": region.r_in,
        }
    if isinstance(region, MultiPolygon):
        return {
            "type": "multipolygon",
            "rings": [[[x, y] for x, y in ring] for ring in region.rings],
        }
    raise DomainError(f"unknown region type {type(region).__name__}")


def region_from_dict(data: dict) -> Region:
    """Inverse of region_to_dict, with schema validation."""
    if not isinstance(data, dict):
        raise DomainError(f"region description must be an object, got {type(data).__name__}")
    kind = data.get("type")
    if kind == "annulus":
        _require_keys(data, {"type", "r_in", "r_out"})
        return Annulus(float(data["r_in"]), float(data["r_out"]))
    if kind == "polygon":
        _require_keys(data, {"type", "L", "r_out"}, optional={"r_in"})
        sides = data["L"]
        if not isinstance(sides, int) or isinstance(sides, bool):
            raise DomainError(f"polygon side count must be an integer, got {sides!r}")
        return RegularPolygon(sides, float(data["r_out"]), float(data.get("r_in", 0.0)))
    if kind == "multipolygon":
        _require_keys(data, {"type", "rings"})
        rings = data["rings"]
        if not isinstance(rings, list) or not rings:
            raise DomainError("multipolygon needs a non-empty 'rings' list")
        try:
            norm = tuple(tuple((float(x), float(y)) for x, y in ring) for ring in rings)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"malformed ring coordinates: {exc}") from exc
        return MultiPolygon(norm)
    raise DomainError(f"unknown region type {kind!r}")


def _require_keys(data: dict, required: set, optional: set = frozenset()) -> None:
    keys = set(data)
    missing = required - keys
    extra = keys - required - set(optional)
    if missing:
        raise DomainError(f"region description missing keys {sorted(missing)}")
    if extra:
        raise DomainError(f"region description has unknown keys {sorted(extra)}")


def bundled_region(name: str) -> Region:
    """One of the regions shipped with the package, by name.

    disk2      -- disk of radius 2 (area 4 pi);
    triangle   -- equilateral triangle scaled to area 4 pi;
    irregular  -- a 21-vertex boot-shaped footprint with two offshore
                  islands, scaled to area 4 pi.
    """
    if name not in BUNDLED_REGIONS:
        raise DomainError(
            f"unknown bundled region {name!r}; choose from {', '.join(BUNDLED_REGIONS)}"
        )
    path = resources.files("outagekit") / "data" / f"{name}.json"
    with path.open("r", encoding="utf-8") as fh:
        return region_from_dict(json.load(fh))


def load_region(source: str) -> Region:
    """Region from a bundled name or a JSON file path.

    A path like ``disk2.json`` that does not exist on disk but whose stem is
    a bundled name falls back to the bundled region, so the shipped regions
    are reachable from any working directory.
    """
    if source in BUNDLED_REGIONS:
        return bundled_region(source)
    try:
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        stem = source[:-5] if source.endswith(".json") else source
        if stem in BUNDLED_REGIONS:
            return bundled_region(stem)
        raise DomainError(
            f"cannot read region {source!r} (not a bundled name or readable file): {exc}"
        ) from exc
    except OSError as exc:
        raise DomainError(
            f"cannot read region {source!r} (not a bundled name or readable file): {exc}"
        ) from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"region file {source!r} is not valid JSON: {exc}") from exc
    return region_from_dict(data)
