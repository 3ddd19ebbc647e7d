"""Spatially averaged outage probability for wireless links amid
point-process interference.

A reference link with Rayleigh fading is evaluated against interference
from transmitters scattered uniformly over a planar region, either a fixed
number of them or a Poisson population. The package provides exact closed
forms where the region allows (disks, annuli, regular polygons with
exclusion zones, the whole plane), deterministic and Monte Carlo averaging
for arbitrary multi-polygon footprints, and an independent network
simulator used to validate every closed form.
"""

from .errors import (
    DomainError,
    OutageKitError,
    SamplingError,
    SeriesError,
    UnsupportedRegionError,
)
from .outage import (
    ChannelParams,
    Diagnostics,
    OutageResult,
    bpp_outage,
    conditional_outage,
    interference_factor,
    plane_ppp_outage,
    ppp_outage,
    ppp_outage_by_count_sum,
)
from .regions import (
    Annulus,
    MultiPolygon,
    Region,
    RegularPolygon,
    area,
    bounding_box,
    bundled_region,
    contains,
    corner_break_radius,
    distance_cdf,
    distance_pdf,
    grid_points,
    load_region,
    region_from_dict,
    region_to_dict,
    sample_distance,
    sample_distances,
    sample_point,
    sample_points,
    scale_to_area,
)
from .simulate import (
    Estimate,
    FixedCount,
    NetworkRealization,
    PoissonCount,
    SimConfig,
    draw_realizations,
    estimate_interference_factor,
    simulate_conditional,
    simulate_outage,
)
from .special import (
    QuadControl,
    SeriesControl,
    big_k_diff,
    big_k_diff_quadrature,
    gauss_2f1,
    phi,
    plane_limit_phi,
    psi,
    psi_diff,
    theta,
)

__version__ = "0.1.0"

__all__ = [
    "Annulus",
    "ChannelParams",
    "Diagnostics",
    "DomainError",
    "Estimate",
    "FixedCount",
    "MultiPolygon",
    "NetworkRealization",
    "OutageKitError",
    "OutageResult",
    "PoissonCount",
    "QuadControl",
    "Region",
    "RegularPolygon",
    "SamplingError",
    "SeriesControl",
    "SeriesError",
    "SimConfig",
    "UnsupportedRegionError",
    "area",
    "big_k_diff",
    "big_k_diff_quadrature",
    "bounding_box",
    "bpp_outage",
    "bundled_region",
    "conditional_outage",
    "contains",
    "corner_break_radius",
    "distance_cdf",
    "distance_pdf",
    "draw_realizations",
    "estimate_interference_factor",
    "gauss_2f1",
    "grid_points",
    "interference_factor",
    "load_region",
    "phi",
    "plane_limit_phi",
    "plane_ppp_outage",
    "ppp_outage",
    "ppp_outage_by_count_sum",
    "psi",
    "psi_diff",
    "region_from_dict",
    "region_to_dict",
    "sample_distance",
    "sample_distances",
    "sample_point",
    "sample_points",
    "scale_to_area",
    "simulate_conditional",
    "simulate_outage",
    "theta",
]
