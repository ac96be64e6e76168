"""Command-line front end.

Subcommands: count, distribution, sample, density, arctic, solve-gap,
verify.  Outputs are CSV (header row, '.' decimals, '\n' newlines), JSON
(exact rationals as {"num": "...", "den": "..."}), and optional SVG polyline
plots.  Exit codes: 0 success, 1 verification failure, 2 usage error.

Interval flags are in scaled units (site = floor(value * k)); use
--forbidden-sites / --packed-sites for exact integer site ranges.  The
default seed comes from FREEBOUND_SEED.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import density as dens
from . import arctic, resolvent, sampler, verify
from .enumeration import (
    CUT_HEXAGON,
    HALF_CUT_HEXAGON,
    EndpointConfig,
    RegionSpec,
    exact_distribution,
    z_det,
)
from .svgplot import svg_plot


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _rational_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _parse_span(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise UsageError(f"interval must be lo:hi, got {text!r}") from exc


def _scaled_to_sites(lo: float, hi: float, k: int) -> tuple[int, int]:
    """Half-open scaled interval [lo, hi) -> inclusive site range."""
    import math as _m

    a = int(_m.ceil(lo * k - 1e-9))
    b = int(_m.ceil(hi * k - 1e-9)) - 1
    return a, b


def _region_from_args(args) -> RegionSpec:
    kind = CUT_HEXAGON if args.region == "cut" else HALF_CUT_HEXAGON
    forbidden = []
    packed = []
    for text in args.forbidden or []:
        lo, hi = _parse_span(text)
        forbidden.append(_scaled_to_sites(lo, hi, args.k))
    for text in args.packed or []:
        lo, hi = _parse_span(text)
        packed.append(_scaled_to_sites(lo, hi, args.k))
    for text in args.forbidden_sites or []:
        a, b = text.split(":")
        forbidden.append((int(a), int(b)))
    for text in args.packed_sites or []:
        a, b = text.split(":")
        packed.append((int(a), int(b)))
    try:
        return RegionSpec(
            kind, args.k, args.n, _fraction(args.q),
            forbidden=tuple(forbidden), packed=tuple(packed),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write_csv(path: str | None, header: list[str], rows: list[list]) -> None:
    def cell(v) -> str:
        if isinstance(v, Fraction):
            return f"{v.numerator}/{v.denominator}"
        if isinstance(v, float):
            return repr(v)
        return str(v)

    text = "\n".join([",".join(header)] + [",".join(cell(v) for v in r) for r in rows]) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_csv_cell(text: str):
    """Inverse of the CSV cell writer (rationals exactly, floats by repr)."""
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def _maybe_svg(path: str | None, series, title: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(svg_plot(series, title=title))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_count(args) -> int:
    region = _region_from_args(args)
    try:
        m = tuple(int(v) for v in args.m.split(","))
    except ValueError as exc:
        raise UsageError(f"--m must be a comma-separated integer list: {args.m!r}") from exc
    cfg = EndpointConfig(m)
    if not cfg.valid_for(region):
        raise UsageError(f"configuration {m} is not valid for the region (precondition: m valid)")
    value = z_det(region, cfg)
    print(json.dumps({"value": _rational_json(value)}, sort_keys=True))
    return 0


def cmd_distribution(args) -> int:
    region = _region_from_args(args)
    dist = exact_distribution(region)
    rows = []
    for cfg, w in zip(dist.configs, dist.weights):
        rows.append([";".join(str(v) for v in cfg.m), w, w / dist.total])
    _write_csv(args.out, ["m", "weight", "probability"], rows)
    return 0


def _theory_density(region: RegionSpec, args):
    choice = args.compare
    k = region.k
    if choice == "none":
        return None
    if choice == "auto":
        if region.kind == HALF_CUT_HEXAGON:
            choice = "halfcut"
        elif region.q != 1:
            choice = "qcut" if not region.forbidden and not region.packed else "none"
        elif not region.forbidden and not region.packed:
            choice = "uniform"
        elif (
            len(region.forbidden) == 2
            and not region.packed
            and region.forbidden[0][0] == region.site_min
            and region.forbidden[1][1] == region.site_max
        ):
            choice = "two-corner"
        else:
            choice = "none"
    if choice == "none":
        return None
    if choice == "uniform":
        lam = region.n / k
        return lambda z: dens.uniform_rho(z, lam)
    if choice == "halfcut":
        al = region.n / k
        return lambda z: dens.halfcut_endpoint_rho(z, al)
    if choice == "qcut":
        eps = sampler.scaled_spacing(region)
        return lambda z: dens.qcut_rho(z, region.n * eps, k * eps)
    if choice == "two-corner":
        lam = region.n / k
        nu = (region.forbidden[0][1] + 1) / k
        theta = region.forbidden[1][0] / k
        sol = dens.two_corner_solution(lam, nu, theta)
        return sol.profile.rho
    raise UsageError(f"unknown comparison model {choice!r}")


def cmd_sample(args) -> int:
    region = _region_from_args(args)
    if args.steps <= args.burnin:
        raise UsageError("precondition violated: steps > burnin >= 0")
    hist, info = sampler.endpoint_histogram(
        region, args.steps, args.burnin, args.seed, bins=args.bins
    )
    theory = _theory_density(region, args)
    heights = hist.heights()
    rows = []
    for c, h, (lo, hi) in zip(hist.centers, heights, zip(hist.bin_edges[:-1], hist.bin_edges[1:])):
        if theory is None:
            ref = float("nan")
        else:
            xs = np.linspace(lo, hi, 9)
            ref = float(np.mean(theory(0.5 * (xs[:-1] + xs[1:]))))
        rows.append([float(c), float(h), ref, abs(float(h) - ref)])
    _write_csv(args.out, ["bin_center", "empirical", "theory", "abs_err"], rows)
    _maybe_svg(
        args.svg,
        [(hist.centers, heights)] + ([(hist.centers, [r[2] for r in rows])] if theory else []),
        "endpoint histogram",
    )
    return 0


_MODELS = ("uniform", "qcut", "two-corner", "hexagon", "halfcut", "triangle", "tsscpp")


def _density_profile(args):
    model = args.model
    if model == "uniform":
        prof = dens.uniform_profile(args.lam)
        band = prof.bands[0][0]
        return prof, (band.lo, band.hi), "uniform"
    if model == "qcut":
        prof = dens.qcut_profile(args.alpha, args.beta)
        band = prof.bands[0][0]
        return prof, (band.lo, band.hi), "qcut"
    if model == "two-corner":
        sol = dens.two_corner_solution(args.lam, args.nu, args.theta)
        return sol.profile, (args.nu, args.theta), sol.regime
    if model == "hexagon":
        sol = dens.hexagon_solution(args.lam, args.theta, args.x)
        return sol.profile, sol.support, f"case-{sol.case}"
    if model == "halfcut":
        prof = dens.halfcut_profile(args.alpha)
        return prof, (0.0, dens.halfcut_edge(args.alpha)), "halfcut"
    if model == "triangle":
        prof = dens.triangle_profile(args.x)
        return prof, (0.0, args.x), "triangle"
    if model == "tsscpp":
        prof = dens.tsscpp_profile(args.x)
        return prof, (args.x, (1.0 + args.x) / 2.0), "tsscpp"
    raise UsageError(f"unknown model {args.model!r}")


def cmd_density(args) -> int:
    if args.model not in _MODELS:
        raise UsageError(f"--model must be one of {_MODELS}")
    try:
        prof, (lo, hi), tag = _density_profile(args)
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from exc
    zs = np.linspace(lo, hi, args.grid)
    vals = prof.rho(zs)
    rows = [[float(z), float(v), tag] for z, v in zip(zs, vals)]
    _write_csv(args.out, ["z", "rho", "regime_tag"], rows)
    _maybe_svg(args.svg, [(zs, vals)], f"{args.model} density")
    return 0


def cmd_arctic(args) -> int:
    if args.family == "hexagon":
        curve = arctic.hexagon_arctic(args.lam, args.theta)
    elif args.family == "cuthex":
        curve = arctic.cuthex_arctic(args.lam)
    else:
        raise UsageError("--family must be hexagon or cuthex")
    pts = curve.boundary_points(args.samples)
    rows = [[float(x), float(y)] for x, y in pts]
    _write_csv(args.out, ["x", "y"], rows)
    _maybe_svg(args.svg, [(pts[:, 0], pts[:, 1])], f"{args.family} arctic curve")
    return 0


def cmd_solve_gap(args) -> int:
    intervals = []
    for text in args.forbidden or []:
        lo, hi = _parse_span(text)
        intervals.append((resolvent.FORBIDDEN, lo, hi))
    for text in args.packed or []:
        lo, hi = _parse_span(text)
        intervals.append((resolvent.PACKED, lo, hi))
    try:
        problem = resolvent.ResolventProblem(lam=args.lam, intervals=tuple(intervals))
        sol = resolvent.solve(problem)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    summary = {
        "bands": [[b.lo, b.hi] for b in sol.bands],
        "plateaus": [[a, b] for a, b in sol.plateaus],
        "merged": sol.merged,
        "mass": sol.mass(),
        "residuals": sol.residuals,
    }
    print(json.dumps(summary, sort_keys=True))
    rows = []
    zs = np.linspace(0.0, args.lam + 1.0, args.grid)
    vals = sol.rho(zs)
    for z, v in zip(zs, vals):
        rows.append([float(z), float(v), "solve-gap"])
    if args.out:
        _write_csv(args.out, ["z", "rho", "regime_tag"], rows)
    _maybe_svg(args.svg, [(zs, vals)], "constrained boundary density")
    return 0


def cmd_verify(args) -> int:
    report = verify.run_all(seed=args.seed, fast=args.fast)
    for line in report.lines():
        print(line)
    return report.exit_code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freebound",
        description="Rhombus tilings with a free boundary: exact counts, sampling, limit densities.",
    )
    default_seed = int(os.environ.get("FREEBOUND_SEED", "2024"))
    sub = parser.add_subparsers(dest="command", required=True)

    def add_region(p):
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", default="1", help="rational, e.g. 1, 2, 1/2")
        p.add_argument("--region", choices=("cut", "halfcut"), default="cut")
        p.add_argument("--forbidden", action="append", metavar="LO:HI",
                       help="forbidden interval in scaled units (repeatable)")
        p.add_argument("--packed", action="append", metavar="LO:HI")
        p.add_argument("--forbidden-sites", action="append", metavar="A:B",
                       help="forbidden inclusive site range (repeatable)")
        p.add_argument("--packed-sites", action="append", metavar="A:B")

    p = sub.add_parser("count", help="exact weighted count of one configuration")
    add_region(p)
    p.add_argument("--m", required=True, help="comma-separated endpoint sites")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("distribution", help="full exact endpoint distribution")
    add_region(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("sample", help="Metropolis endpoint histogram")
    add_region(p)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--burnin", type=int, default=-1, help="default: 20%% of steps")
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--compare", default="auto",
                   choices=("auto", "uniform", "qcut", "two-corner", "halfcut", "none"))
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("density", help="closed-form limit density on a grid")
    p.add_argument("--model", required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--x", type=float, default=0.5)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("arctic", help="arctic curve boundary samples")
    p.add_argument("--family", required=True, choices=("hexagon", "cuthex"))
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=180)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_arctic)

    p = sub.add_parser("solve-gap", help="numerical density for constrained boundaries")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--forbidden", action="append", metavar="LO:HI")
    p.add_argument("--packed", action="append", metavar="LO:HI")
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_solve_gap)

    p = sub.add_parser("verify", help="run the cross-validation suite")
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--fast", action="store_true", help="skip the long Monte-Carlo checks")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "burnin", None) == -1:
        args.burnin = args.steps // 5
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
