"""Numerical studies over the equilibrium solver.

Three studies: the (gamma, lambda) parameter sweep behind the contour
figures, the uniform-sharing problem where one platform policy must serve
many heterogeneous venues, and the welfare-versus-lambda curve for the
non-monotonicity example.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
import pandas as pd

from .market import MarketParams
from .platform import solve_equilibrium

_NUMERIC_FIELDS = (
    "omega", "delta_star", "p_f_star", "p_a", "phi_a", "phi_f",
    "platform_revenue", "vo_ad_revenue", "vo_premium_revenue",
    "vo_total_revenue", "social_welfare",
)


@dataclass(frozen=True)
class SweepGrid:
    """Equilibria on a gamma x lambda grid; cells[i][j] pairs
    gamma_axis[i] with lambda_axis[j]."""

    gamma_axis: list
    lambda_axis: list
    cells: list


def sweep(params_base: MarketParams, gamma_range, lambda_range,
          resolution: int) -> SweepGrid:
    """Solve the equilibrium on an evenly spaced (gamma, lambda) grid,
    holding every other parameter at params_base."""
    params_base.require_asymptotic("sweep")
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2 per axis, got {resolution}")
    g_lo, g_hi = _checked_range("gamma", gamma_range)
    l_lo, l_hi = _checked_range("lambda", lambda_range)
    gamma_axis = [float(g) for g in np.linspace(g_lo, g_hi, resolution)]
    lambda_axis = [float(l) for l in np.linspace(l_lo, l_hi, resolution)]
    cells = [
        [solve_equilibrium(replace(params_base, gamma=g, lam=l)) for l in lambda_axis]
        for g in gamma_axis
    ]
    return SweepGrid(gamma_axis=gamma_axis, lambda_axis=lambda_axis, cells=cells)


def _checked_range(name, pair):
    lo, hi = float(pair[0]), float(pair[1])
    if lo <= 0 or hi <= lo:
        raise ValueError(f"{name} range must satisfy 0 < min < max, got ({lo}, {hi})")
    return lo, hi


def sweep_to_frame(grid: SweepGrid) -> pd.DataFrame:
    """Long-format view of a sweep: one row per (gamma, lambda, field)."""
    rows = []
    for gamma, row in zip(grid.gamma_axis, grid.cells):
        for lam, eq in zip(grid.lambda_axis, row):
            for field in _NUMERIC_FIELDS:
                rows.append((gamma, lam, field, getattr(eq, field)))
            rows.append((gamma, lam, "regime", eq.regime.name))
    return pd.DataFrame(rows, columns=["gamma", "lambda", "field", "value"])


def uniform_sharing_scan(params_base: MarketParams, vo_count: int = 10_000,
                         seed: int = 0, gamma_range=(0.01, 1.0),
                         lambda_range=(0.1, 15.0), delta_step: float = 1e-4):
    """Expected platform revenue as a function of a single shared delta.

    Samples vo_count venues with (gamma, lambda) drawn uniformly, then
    evaluates every candidate delta against the same sample (common
    random numbers), so the objective is a smooth curve and the argmax is
    well defined. Returns (delta_grid, objective) arrays.
    """
    params_base.require_asymptotic("uniform_sharing_scan")
    if vo_count < 1:
        raise ValueError(f"vo_count must be >= 1, got {vo_count}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    gammas = rng.uniform(gamma_range[0], gamma_range[1], vo_count)
    lams = rng.uniform(lambda_range[0], lambda_range[1], vo_count)
    g = _g_vectorized(lams, gammas, params_base.eta)

    cap = params_base.beta * params_base.theta_max
    slope = params_base.a * g / (2.0 * lams * cap)   # phi_a = min(1, 1/2 + (1-d)*slope)
    top = 1.0 - params_base.epsilon
    count = int(round(top / delta_step)) + 1
    deltas = np.linspace(0.0, top, count)

    objective = np.empty(count)
    block = 256
    for start in range(0, count, block):
        d = deltas[start:start + block, None]
        phi_a = np.minimum(1.0, 0.5 + (1.0 - d) * slope[None, :])
        objective[start:start + block] = (
            d[:, 0] * params_base.a * params_base.N * (phi_a @ g) / vo_count)
    return deltas, objective


def uniform_sharing_optimum(params_base: MarketParams, vo_count: int = 10_000,
                            seed: int = 0, gamma_range=(0.01, 1.0),
                            lambda_range=(0.1, 15.0), delta_step: float = 1e-4):
    """The revenue-maximizing shared policy: (delta_U_star, expected revenue)."""
    deltas, objective = uniform_sharing_scan(
        params_base, vo_count, seed, gamma_range, lambda_range, delta_step)
    idx = int(np.argmax(objective))
    return float(deltas[idx]), float(objective[idx])


def _g_vectorized(lams, gammas, eta):
    if eta == 0.0:
        return np.zeros_like(lams)
    small = lams <= 2.0 * eta / gammas
    return np.where(small,
                    lams * gammas * np.exp(-np.sqrt(2.0 * lams * gammas / eta)),
                    2.0 * eta * math.exp(-2.0))


def welfare_lambda_curve(params: MarketParams, lambda_range=(0.01, 15.0),
                         resolution: int = 300):
    """Equilibrium social welfare along a lambda grid: list of (lambda, SW)."""
    params.require_asymptotic("welfare_lambda_curve")
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    lo, hi = _checked_range("lambda", lambda_range)
    out = []
    for lam in np.linspace(lo, hi, resolution):
        eq = solve_equilibrium(replace(params, lam=float(lam)))
        out.append((float(lam), eq.social_welfare))
    return out


# ---------------------------------------------------------------------------
# File artifacts: <experiment>_<seed>.<ext> under a chosen directory.

def artifact_path(outdir, experiment: str, seed: int, ext: str = "csv") -> Path:
    return Path(outdir) / f"{experiment}_{seed}.{ext}"


def write_sweep_csv(grid: SweepGrid, path) -> None:
    sweep_to_frame(grid).to_csv(path, index=False)


def write_uniform_csv(deltas, objective, path) -> None:
    frame = pd.DataFrame({"delta": deltas, "expected_platform_revenue": objective})
    frame.to_csv(path, index=False)


def write_welfare_csv(points, path) -> None:
    frame = pd.DataFrame(points, columns=["lambda", "social_welfare"])
    frame.to_csv(path, index=False)
