"""Command-line front end.

Four subcommands:

* ``outage``   -- one outage probability (fixed-count, Poisson, or whole-plane);
* ``sweep``    -- outage and coverage versus intensity or interferer count,
                  as CSV or JSON, optionally with Monte Carlo columns;
* ``simulate`` -- the Monte Carlo estimate alone, reproducibly seeded;
* ``region``   -- region inspection (area, bounding box, break radius).

Channel parameters are taken in dB by default (``--beta-db``, ``--snr-db``)
with linear alternatives (``--beta``, ``--snr``); ``inf`` is accepted where
a noiseless link is wanted. Regions come from JSON files or the bundled
names (disk2, triangle, irregular). Exit status is 0 on success, 2 for
unusable arguments, 1 for domain or numeric failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from .errors import OutageKitError
from .outage import (
    DEFAULT_GRID_TARGET,
    DEFAULT_SAMPLE_COUNT,
    ChannelParams,
    bpp_outage,
    interference_factor,
    plane_ppp_outage,
    ppp_outage,
)
from .regions import (
    Annulus,
    MultiPolygon,
    Region,
    RegularPolygon,
    area,
    bounding_box,
    corner_break_radius,
    load_region,
    region_to_dict,
    scale_to_area,
)
from .simulate import FixedCount, PoissonCount, SimConfig, simulate_outage

__all__ = ["SweepRecord", "compute_sweep", "sweep_to_csv", "main"]


class _UsageError(Exception):
    """Arguments parsed but cannot be acted on; maps to exit status 2."""


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a sweep; either outage family may be simulated.

    x is the sweep coordinate (intensity or interferer count). The fixed
    count and the Poisson intensity are matched through the region area,
    with the count rounded to the nearest integer.
    """

    x: float
    epsilon_bpp: float
    epsilon_ppp: float
    coverage_bpp: float
    coverage_ppp: float
    mc_mean: float | None = None
    mc_stderr: float | None = None


def compute_sweep(
    params: ChannelParams,
    region: Region,
    values: list[float],
    over: str = "lambda",
    method: str = "closed",
    *,
    grid_target: int = DEFAULT_GRID_TARGET,
    samples: int = DEFAULT_SAMPLE_COUNT,
    sample_seed: int = 0,
    simulate_trials: int | None = None,
    simulate_seed: int = 1,
    workers: int = 1,
) -> list[SweepRecord]:
    """Sweep records for a grid of intensities or interferer counts.

    over="lambda" treats values as Poisson intensities and matches the
    fixed count as round(x * area); over="m" treats values as counts and
    matches the intensity as x / area. The interference factor does not
    depend on the sweep coordinate, so it is computed once. When
    simulate_trials is set, each record gains a Monte Carlo estimate of the
    swept family (Poisson for over="lambda", fixed-count for over="m").
    """
    if over not in ("lambda", "m"):
        raise _UsageError(f"sweep axis must be 'lambda' or 'm', got {over!r}")
    region_area = area(region)
    factor = interference_factor(
        params,
        region,
        method,
        grid_target=grid_target,
        samples=samples,
        seed=sample_seed,
    )
    noise = params.noise_exponent
    base = 1.0 - params.p + params.p * factor
    records = []
    for x in values:
        if over == "lambda":
            lam = float(x)
            m = int(round(lam * region_area))
        else:
            if abs(x - round(x)) > 1e-9:
                raise _UsageError(f"count sweep needs integer values, got {x!r}")
            m = int(round(x))
            lam = m / region_area
        eps_bpp = 1.0 - math.exp(-noise) * base**m
        eps_ppp = 1.0 - math.exp(-noise - lam * params.p * region_area * (1.0 - factor))
        mc_mean = mc_stderr = None
        if simulate_trials is not None:
            count = PoissonCount(lam) if over == "lambda" else FixedCount(m)
            cfg = SimConfig(region, params, count, simulate_trials, simulate_seed)
            est = simulate_outage(cfg, workers=workers)
            mc_mean, mc_stderr = est.mean, est.std_error
        records.append(
            SweepRecord(
                x=float(x),
                epsilon_bpp=eps_bpp,
                epsilon_ppp=eps_ppp,
                coverage_bpp=1.0 - eps_bpp,
                coverage_ppp=1.0 - eps_ppp,
                mc_mean=mc_mean,
                mc_stderr=mc_stderr,
            )
        )
    return records


_SWEEP_FIELDS = (
    "x",
    "epsilon_bpp",
    "epsilon_ppp",
    "coverage_bpp",
    "coverage_ppp",
    "mc_mean",
    "mc_stderr",
)


def sweep_to_csv(records: list[SweepRecord]) -> str:
    """CSV text for sweep records; floats use shortest round-trip form."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_SWEEP_FIELDS)
    for rec in records:
        row = []
        for name in _SWEEP_FIELDS:
            value = getattr(rec, name)
            row.append("" if value is None else repr(float(value)))
        writer.writerow(row)
    return buf.getvalue()


def parse_sweep_csv(text: str) -> list[SweepRecord]:
    """Inverse of sweep_to_csv."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != _SWEEP_FIELDS:
        raise _UsageError("not a sweep CSV (header mismatch)")
    records = []
    for row in rows[1:]:
        vals = [None if cell == "" else float(cell) for cell in row]
        records.append(SweepRecord(*vals))
    return records


def _record_dict(rec: SweepRecord) -> dict:
    return {name: getattr(rec, name) for name in _SWEEP_FIELDS}


def _parse_range(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"range must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise _UsageError(f"range values must be numbers: {exc}") from exc
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise _UsageError("range values must be finite")
    if step <= 0.0 or stop < start:
        raise _UsageError(f"need start <= stop and step > 0, got {text!r}")
    values = []
    k = 0
    while True:
        x = start + k * step
        if x > stop + 1e-9 * step:
            break
        values.append(x)
        k += 1
    return values


def _trial_count(text: str) -> int:
    # accepts 100000 and 1e6 alike
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not math.isfinite(value) or value < 1 or value != int(value):
        raise argparse.ArgumentTypeError(f"trial count must be a positive integer: {text!r}")
    return int(value)


def _add_channel_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=3.2, help="path-loss exponent (> 2)")
    group_b = parser.add_mutually_exclusive_group()
    group_b.add_argument("--beta-db", type=float, default=None, help="SINR threshold in dB (default 0)")
    group_b.add_argument("--beta", type=float, default=None, help="SINR threshold, linear")
    group_s = parser.add_mutually_exclusive_group()
    group_s.add_argument("--snr-db", type=float, default=None, help="reference SNR in dB (default 10; inf allowed)")
    group_s.add_argument("--snr", type=float, default=None, help="reference SNR, linear (inf allowed)")
    parser.add_argument("--p", type=float, default=1.0, help="interferer activity probability")


def _build_channel(args: argparse.Namespace) -> ChannelParams:
    if args.beta is not None:
        beta = args.beta
    else:
        beta_db = 0.0 if args.beta_db is None else args.beta_db
        beta = 10.0 ** (beta_db / 10.0)
    if args.snr is not None:
        snr = args.snr
    else:
        snr_db = 10.0 if args.snr_db is None else args.snr_db
        snr = math.inf if math.isinf(snr_db) and snr_db > 0 else 10.0 ** (snr_db / 10.0)
    return ChannelParams(alpha=args.alpha, beta=beta, snr=snr, p=args.p)


def _add_method_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--method",
        choices=("auto", "closed", "grid", "sample"),
        default="auto",
        help="interference-factor route; auto picks closed where one exists",
    )
    parser.add_argument(
        "--grid-points",
        type=int,
        default=DEFAULT_GRID_TARGET,
        help="lattice size target for --method grid",
    )
    parser.add_argument(
        "--samples",
        type=_trial_count,
        default=DEFAULT_SAMPLE_COUNT,
        help="position draws for --method sample",
    )
    parser.add_argument(
        "--sample-seed",
        type=int,
        default=0,
        help="seed for --method sample position draws",
    )


def _resolve_method(method: str, region: Region) -> str:
    if method != "auto":
        return method
    return "grid" if isinstance(region, MultiPolygon) else "closed"


def _load_region_arg(args: argparse.Namespace, required: bool = True) -> Region | None:
    if args.region is None:
        if required:
            raise _UsageError("this command needs --region")
        return None
    return load_region(args.region)


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def _cmd_outage(args: argparse.Namespace) -> int:
    params = _build_channel(args)
    if args.process == "plane":
        if args.region is not None:
            raise _UsageError("the plane process takes no --region")
        if args.intensity is None:
            raise _UsageError("the plane process needs --lambda")
        result = plane_ppp_outage(params, args.intensity)
    else:
        region = _load_region_arg(args)
        method = _resolve_method(args.method, region)
        kwargs = {
            "grid_target": args.grid_points,
            "samples": args.samples,
            "seed": args.sample_seed,
        }
        if args.process == "bpp":
            if args.m is None:
                raise _UsageError("the bpp process needs --m")
            if args.intensity is not None:
                raise _UsageError("--lambda does not apply to bpp; use --m")
            result = bpp_outage(params, region, args.m, method, **kwargs)
        else:
            if args.intensity is None:
                raise _UsageError("the ppp process needs --lambda")
            if args.m is not None:
                raise _UsageError("--m does not apply to ppp; use --lambda")
            result = ppp_outage(params, region, args.intensity, method, **kwargs)
    _emit({"epsilon": result.epsilon, "coverage": result.coverage, "method": result.method})
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    params = _build_channel(args)
    region = _load_region_arg(args)
    method = _resolve_method(args.method, region)
    values = _parse_range(args.range)
    trials = seed = None
    if args.simulate is not None:
        trials, seed = args.simulate
    records = compute_sweep(
        params,
        region,
        values,
        over=args.over,
        method=method,
        grid_target=args.grid_points,
        samples=args.samples,
        sample_seed=args.sample_seed,
        simulate_trials=trials,
        simulate_seed=seed if seed is not None else 1,
        workers=args.workers,
    )
    if args.json:
        print(json.dumps([_record_dict(r) for r in records]))
    else:
        sys.stdout.write(sweep_to_csv(records))
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    params = _build_channel(args)
    region = _load_region_arg(args)
    if (args.m is None) == (args.intensity is None):
        raise _UsageError("simulate needs exactly one of --m and --lambda")
    count = FixedCount(args.m) if args.m is not None else PoissonCount(args.intensity)
    cfg = SimConfig(region, params, count, args.trials, args.seed)
    est = simulate_outage(cfg, workers=args.workers)
    _emit({"mean": est.mean, "std_error": est.std_error, "trials": est.trials})
    return 0


def _cmd_region_info(args: argparse.Namespace) -> int:
    region = _load_region_arg(args)
    if args.area is not None:
        region = scale_to_area(region, args.area)
    if isinstance(region, RegularPolygon):
        r_c = corner_break_radius(region)
    else:
        r_c = None
    if isinstance(region, (Annulus, RegularPolygon)):
        support = [region.r_in, region.r_out]
    else:
        support = None
    _emit(
        {
            "area": area(region),
            "bounding_box": list(bounding_box(region)),
            "corner_break_radius": r_c,
            "pdf_support": support,
            "region": region_to_dict(region),
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="outagekit",
        description="Spatially averaged outage probability for links amid point-process interference.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_out = sub.add_parser("outage", help="one outage probability")
    p_out.add_argument("process", choices=("bpp", "ppp", "plane"))
    p_out.add_argument("--region", help="bundled region name or JSON file")
    p_out.add_argument("--m", type=int, default=None, help="interferer count (bpp)")
    p_out.add_argument("--lambda", dest="intensity", type=float, default=None, help="interferer density (ppp, plane)")
    _add_channel_flags(p_out)
    _add_method_flags(p_out)
    p_out.set_defaults(func=_cmd_outage)

    p_sweep = sub.add_parser("sweep", help="outage versus intensity or count")
    p_sweep.add_argument("--region", help="bundled region name or JSON file")
    p_sweep.add_argument("--over", choices=("lambda", "m"), default="lambda", help="sweep axis")
    p_sweep.add_argument("--range", required=True, help="start:stop:step grid")
    p_sweep.add_argument(
        "--simulate",
        nargs=2,
        metavar=("TRIALS", "SEED"),
        default=None,
        help="append Monte Carlo columns for the swept family",
    )
    p_sweep.add_argument("--workers", type=int, default=1, help="threads for --simulate")
    p_sweep.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    _add_channel_flags(p_sweep)
    _add_method_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_sim = sub.add_parser("simulate", help="Monte Carlo estimate alone")
    p_sim.add_argument("--region", help="bundled region name or JSON file")
    p_sim.add_argument("--m", type=int, default=None, help="fixed interferer count")
    p_sim.add_argument("--lambda", dest="intensity", type=float, default=None, help="Poisson density")
    p_sim.add_argument("--trials", type=_trial_count, default=100_000)
    p_sim.add_argument("--seed", type=int, default=1)
    p_sim.add_argument("--workers", type=int, default=1)
    _add_channel_flags(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_reg = sub.add_parser("region", help="region inspection")
    reg_sub = p_reg.add_subparsers(dest="region_command", required=True)
    p_info = reg_sub.add_parser("info", help="area, bounding box, break radius")
    p_info.add_argument("--region", required=True, help="bundled region name or JSON file")
    p_info.add_argument("--area", type=float, default=None, help="rescale to this area first")
    p_info.set_defaults(func=_cmd_region_info)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "simulate", None) is not None:
        try:
            args.simulate = (_trial_count(args.simulate[0]), int(args.simulate[1]))
        except (argparse.ArgumentTypeError, ValueError) as exc:
            print(f"error: --simulate: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OutageKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
