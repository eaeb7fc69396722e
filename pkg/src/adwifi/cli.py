"""Command-line front end.

Model parameters come from a JSON config (one canonical example ships in
configs/baseline.json); flags steer the experiments. Exit codes: 0 on
success, 1 when a verify suite breaches tolerance, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

from . import experiments, figures, oracle, simulation
from .errors import MarketModelError
from .market import MarketParams
from .platform import solve_equilibrium

_ORACLE_TOL = 1e-4
_ZETA_FLOOR = 0.99


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, MarketModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="adwifi",
        description="Equilibrium analysis of advertising-sponsored public Wi-Fi markets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    eq = sub.add_parser("equilibrium", help="solve the three-stage equilibrium for a config")
    eq.add_argument("--config", required=True, help="JSON file with market parameters")
    eq.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    eq.set_defaults(handler=_cmd_equilibrium)

    sw = sub.add_parser("sweep", help="equilibrium sweep over a (gamma, lambda) grid")
    sw.add_argument("--config", required=True)
    sw.add_argument("--gamma-min", type=float, default=0.01)
    sw.add_argument("--gamma-max", type=float, default=1.0)
    sw.add_argument("--lambda-min", type=float, default=0.1)
    sw.add_argument("--lambda-max", type=float, default=15.0)
    sw.add_argument("--grid", type=int, default=25, help="points per axis")
    sw.add_argument("--seed", type=int, default=0, help="artifact name tag (sweeps are deterministic)")
    sw.add_argument("--outdir", default=".")
    sw.set_defaults(handler=_cmd_sweep)

    sim = sub.add_parser("simulate", help="Monte Carlo agent simulation at the equilibrium")
    sim.add_argument("--config", required=True)
    sim.add_argument("--replications", type=int, default=500)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--outdir", default=".")
    sim.set_defaults(handler=_cmd_simulate)

    uni = sub.add_parser("uniform", help="optimal single sharing ratio across sampled venues")
    uni.add_argument("--config", required=True)
    uni.add_argument("--vo-count", type=int, default=10_000)
    uni.add_argument("--seed", type=int, default=0)
    uni.add_argument("--outdir", default=".")
    uni.set_defaults(handler=_cmd_uniform)

    ver = sub.add_parser("verify", help="run the brute-force oracle suites against the closed forms")
    ver.add_argument("--draws", type=int, default=1000, help="draws per oracle suite")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--grid-points", type=int, default=oracle.DEFAULT_GRID)
    ver.add_argument("--zeta-draws", type=int, default=10_000,
                     help="draws per (M, sigma_max) cell")
    ver.add_argument("--outdir", default=".")
    ver.set_defaults(handler=_cmd_verify)

    return parser


def _load_params(path) -> MarketParams:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ValueError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"config is not valid JSON: {exc}") from None
    return MarketParams.from_dict(data)


def _workers() -> int:
    raw = os.environ.get("ADWIFI_WORKERS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"ADWIFI_WORKERS must be an integer, got {raw!r}") from None
    return max(1, workers)


def _cmd_equilibrium(args) -> int:
    params = _load_params(args.config)
    eq = solve_equilibrium(params)
    if args.json:
        payload = {
            "params": params.to_dict(),
            "equilibrium": {
                "omega": eq.omega,
                "regime": eq.regime.name,
                "delta_star": eq.delta_star,
                "p_f_star": eq.p_f_star,
                "p_a": eq.p_a,
                "phi_a": eq.phi_a,
                "phi_f": eq.phi_f,
                "platform_revenue": eq.platform_revenue,
                "vo_ad_revenue": eq.vo_ad_revenue,
                "vo_premium_revenue": eq.vo_premium_revenue,
                "vo_total_revenue": eq.vo_total_revenue,
                "social_welfare": eq.social_welfare,
            },
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(f"Omega               {eq.omega:.6g}  (regime {eq.regime.name})")
    print(f"delta*              {eq.delta_star:.6g}")
    print(f"p_f*                {eq.p_f_star:.6g}")
    print(f"p_a (asymptotic)    {eq.p_a:.6g}")
    print(f"phi_a / phi_f       {eq.phi_a:.6g} / {eq.phi_f:.6g}")
    print(f"platform revenue    {eq.platform_revenue:.6g}")
    print(f"VO ad revenue       {eq.vo_ad_revenue:.6g}")
    print(f"VO premium revenue  {eq.vo_premium_revenue:.6g}")
    print(f"VO total revenue    {eq.vo_total_revenue:.6g}")
    print(f"social welfare      {eq.social_welfare:.6g}")
    return 0


def _cmd_sweep(args) -> int:
    params = _load_params(args.config)
    grid = experiments.sweep(params, (args.gamma_min, args.gamma_max),
                             (args.lambda_min, args.lambda_max), args.grid)
    outdir = _ensure_outdir(args.outdir)
    csv_path = experiments.artifact_path(outdir, "sweep", args.seed)
    experiments.write_sweep_csv(grid, csv_path)
    written = [csv_path] + figures.sweep_contours(grid, outdir, args.seed)
    print(f"swept {args.grid}x{args.grid} cells")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_simulate(args) -> int:
    params = _load_params(args.config)
    eq = solve_equilibrium(params)
    report = simulation.run_market_simulation(params, eq, args.replications, args.seed)
    outdir = _ensure_outdir(args.outdir)
    json_path = experiments.artifact_path(outdir, "simulate", args.seed, "json")
    simulation.write_report_json(report, json_path)
    written = [json_path]
    if report.tau_curve:
        tau_csv = experiments.artifact_path(outdir, "tau", args.seed)
        simulation.write_tau_csv(report.tau_curve, tau_csv)
        written.append(tau_csv)
        written.append(figures.tau_figure(
            report.tau_curve, experiments.artifact_path(outdir, "tau", args.seed, "png")))
    print(f"replications        {report.replication_count}")
    _print_gap("premium revenue", report.empirical_vo_premium_revenue, eq.vo_premium_revenue)
    _print_gap("VO ad revenue", report.empirical_vo_ad_revenue, eq.vo_ad_revenue)
    _print_gap("platform revenue", report.empirical_platform_revenue, eq.platform_revenue)
    for path in written:
        print(f"wrote {path}")
    return 0


def _print_gap(label, empirical, closed):
    gap = abs(empirical - closed) / max(abs(closed), 1e-12)
    print(f"{label:<19} empirical {empirical:.6g}  closed form {closed:.6g}  rel gap {gap:.2e}")


def _cmd_uniform(args) -> int:
    params = _load_params(args.config)
    deltas, objective = experiments.uniform_sharing_scan(params, args.vo_count, args.seed)
    best = int(objective.argmax())
    outdir = _ensure_outdir(args.outdir)
    csv_path = experiments.artifact_path(outdir, "uniform", args.seed)
    experiments.write_uniform_csv(deltas, objective, csv_path)
    png_path = figures.uniform_figure(
        deltas, objective, experiments.artifact_path(outdir, "uniform", args.seed, "png"))
    print(f"delta_U*            {deltas[best]:.4f}")
    print(f"expected revenue    {objective[best]:.6g}")
    print(f"wrote {csv_path}")
    print(f"wrote {png_path}")
    return 0


def _cmd_verify(args) -> int:
    workers = _workers()
    suites = [
        ("ad-price oracle", partial(oracle.ad_price_draw, grid_points=args.grid_points)),
        ("wifi-price oracle", oracle.wifi_price_draw),
        ("sharing oracle", partial(oracle.sharing_draw, grid_points=args.grid_points)),
    ]
    failed = False
    for label, draw in suites:
        results = _run_suite(draw, args.draws, args.seed, workers)
        worst = max(result.rel_gap for result in results)
        ok = worst < _ORACLE_TOL
        failed |= not ok
        print(f"{label:<18} max rel_gap {worst:.3e} over {args.draws} draws "
              f"(tolerance {_ORACLE_TOL:.0e})  {'PASS' if ok else 'FAIL'}")

    frame = oracle.zeta_experiment(draws_per_cell=args.zeta_draws,
                                   seed=args.seed)
    outdir = _ensure_outdir(args.outdir)
    csv_path = experiments.artifact_path(outdir, "zeta", args.seed)
    oracle.write_zeta_csv(frame, csv_path)
    png_path = figures.zeta_figure(
        frame, experiments.artifact_path(outdir, "zeta", args.seed, "png"))
    subset = frame[(frame.M >= 6) & (frame.sigma_max >= 6)]
    floor = float(subset.avg_zeta.min())
    ok = floor >= _ZETA_FLOOR
    failed |= not ok
    print(f"{'zeta experiment':<18} min cell average {floor:.4f} for M>=6, sigma_max>=6 "
          f"(threshold {_ZETA_FLOOR})  {'PASS' if ok else 'FAIL'}")
    print(f"wrote {csv_path}")
    print(f"wrote {png_path}")
    return 1 if failed else 0


def _run_suite(draw, draws, seed, workers):
    if workers > 1:
        chunk = max(1, draws // (8 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(draw, [seed] * draws, range(draws), chunksize=chunk))
    return [draw(seed, i) for i in range(draws)]


def _ensure_outdir(outdir) -> Path:
    path = Path(outdir)
    path.mkdir(parents=True, exist_ok=True)
    return path


if __name__ == "__main__":
    sys.exit(main())
