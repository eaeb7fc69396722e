"""Brute-force maximizers that shadow every closed-form optimum.

Each solver here knows nothing about the formulas it checks: it
evaluates the raw objective on a dense grid (log-spaced for the ad price,
golden-section for the concave Wi-Fi objective, linear for the sharing
ratio) and reports the gap against the closed form. The zeta experiment
measures how much revenue the large-market price forfeits in a genuinely
finite market.

Draw functions are keyed by (seed, index) so suites can run in any order
or in parallel and still be bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import InfeasibleEverywhere
from .market import MarketParams, access_split
from .platform import optimal_sharing, platform_revenue
from .pricing import (
    g_function,
    optimal_ad_price_finite,
    optimal_wifi_price,
    vo_ad_revenue,
    vo_total_revenue,
)

DEFAULT_GRID = 100_000

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OracleResult:
    argmax: float
    max_value: float
    closed_form_arg: float
    closed_form_value: float
    rel_gap: float


def _result(argmax, max_value, closed_arg, closed_value):
    gap = abs(max_value - closed_value) / max(abs(max_value), 1e-12)
    return OracleResult(argmax=argmax, max_value=max_value,
                        closed_form_arg=closed_arg,
                        closed_form_value=closed_value, rel_gap=gap)


def _demand_per_density(p_a, gamma, a, sigma_max):
    """Spaces demanded per unit of (M*N*phi_a/sigma_max): vectorized in p_a."""
    level = np.log(a * gamma / p_a)
    sig_T = np.minimum(level / gamma, sigma_max)
    return np.where(level > 0.0, level * sig_T - 0.5 * gamma * sig_T ** 2, 0.0)


def brute_ad_price(p_f: float, delta: float, params: MarketParams,
                   grid_points: int = DEFAULT_GRID) -> OracleResult:
    """Grid-maximize the finite-market ad revenue subject to capacity.

    The grid is log-spaced in price. Because the constrained optimum can
    sit exactly on the capacity boundary with a nonzero objective slope, a
    plain grid leaves a first-order gap there; the boundary point is
    therefore located separately by bisection on the demand Q (no closed
    form involved) and added as a candidate, and the best coarse point
    gets one zoom refinement.
    """
    params.require_finite("brute_ad_price")
    if grid_points < 100:
        raise ValueError(f"grid_points too small: {grid_points}")
    closed = optimal_ad_price_finite(params)
    closed_value = vo_ad_revenue(p_f, closed.price, delta, params)

    phi_a = access_split(p_f, params).phi_a
    ceiling = params.a * params.gamma
    if phi_a == 0.0 or delta == 1.0:
        # revenue is identically zero; any feasible price ties
        return _result(ceiling, 0.0, closed.price, closed_value)

    density = params.M * params.N * phi_a / params.sigma_max
    cap = params.lam * params.N * phi_a

    def best_on(exponents):
        prices = ceiling * np.exp(-exponents)
        demand = _demand_per_density(prices, params.gamma, params.a, params.sigma_max)
        feasible = density * demand <= cap
        if not feasible.any():
            return None
        values = np.where(feasible, (1.0 - delta) * prices * density * demand, -np.inf)
        idx = int(np.argmax(values))
        return float(prices[idx]), float(values[idx]), float(exponents[idx])

    # every branch optimum has exponent <= max(...) below; pad by one
    ratio = params.lam / params.M
    e_max = 1.0 + max(2.0,
                      math.sqrt(2.0 * params.lam * params.gamma * params.sigma_max / params.M),
                      0.5 * params.gamma * params.sigma_max + min(ratio, 1.0))
    coarse = best_on(np.linspace(0.0, e_max, grid_points))
    if coarse is None:
        raise InfeasibleEverywhere("no feasible price on the grid (p_a=a*gamma should always qualify)")
    step = e_max / (grid_points - 1)
    zoom = best_on(np.linspace(max(0.0, coarse[2] - step), coarse[2] + step, grid_points))

    candidates = [coarse[:2], zoom[:2] if zoom else coarse[:2]]
    boundary = _capacity_boundary_price(params, phi_a, cap)
    if boundary is not None:
        demand = float(_demand_per_density(np.asarray([boundary]), params.gamma,
                                           params.a, params.sigma_max)[0])
        if density * demand <= cap:
            candidates.append((boundary, (1.0 - delta) * boundary * density * demand))
    argmax, max_value = max(candidates, key=lambda c: c[1])
    return _result(argmax, max_value, closed.price, closed_value)


def _capacity_boundary_price(params, phi_a, cap):
    """Price where demand meets the sales capacity, by bisection on Q.

    Q falls from unbounded (p -> 0) to 0 (p = a*gamma), so a root exists
    whenever the feasible region has an interior boundary. Returns the
    feasible side of the bracket.
    """
    ceiling = params.a * params.gamma
    density = params.M * params.N * phi_a / params.sigma_max

    def q_minus_cap(exponent):
        p = np.asarray([ceiling * math.exp(-exponent)])
        return density * float(_demand_per_density(p, params.gamma, params.a,
                                                   params.sigma_max)[0]) - cap

    lo_exp = 0.0          # Q = 0 <= cap here
    hi_exp = 1.0
    while q_minus_cap(hi_exp) <= 0.0:
        hi_exp *= 2.0
        if hi_exp > 700.0:
            return None   # capacity never binds within float range
    for _ in range(200):
        mid = 0.5 * (lo_exp + hi_exp)
        if q_minus_cap(mid) <= 0.0:
            lo_exp = mid
        else:
            hi_exp = mid
    return ceiling * math.exp(-lo_exp)


def brute_wifi_price(delta: float, params: MarketParams,
                     grid_points: int = 200) -> OracleResult:
    """Golden-section maximization of the VO's total revenue over
    [0, beta*theta_max]; the objective is a concave quadratic."""
    params.require_asymptotic("brute_wifi_price")
    lo, hi = 0.0, params.beta * params.theta_max
    f = lambda p: vo_total_revenue(p, delta, params)
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(min(max(grid_points, 60), 500)):
        if hi - lo < 1e-13 * max(1.0, params.beta * params.theta_max):
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
    argmax = 0.5 * (lo + hi)
    closed_arg = optimal_wifi_price(delta, params)
    return _result(argmax, f(argmax), closed_arg, f(closed_arg))


def brute_sharing(params: MarketParams, grid_points: int = DEFAULT_GRID) -> OracleResult:
    """Dense grid over delta in [0, 1-epsilon], composing the VO's Stage II
    response at every point."""
    params.require_asymptotic("brute_sharing")
    g = g_function(params)
    half = 0.5 * params.beta * params.theta_max
    deltas = np.linspace(0.0, 1.0 - params.epsilon, grid_points)
    p_f = half + np.minimum((1.0 - deltas) * params.a * g / (2.0 * params.lam), half)
    phi_a = p_f / (params.beta * params.theta_max)
    values = deltas * params.a * params.N * phi_a * g
    idx = int(np.argmax(values))
    closed_arg = optimal_sharing(params)
    return _result(float(deltas[idx]), float(values[idx]),
                   closed_arg, platform_revenue(closed_arg, params))


# ---------------------------------------------------------------------------
# Seeded draw protocols

def _rng_for(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def sample_finite_market(rng) -> tuple[MarketParams, float, float]:
    """One finite-market draw: gamma~U[0.01,1], lambda~U[0.1,5], a~U[1,3],
    M and sigma_max integer in 1..15, plus a Wi-Fi price and sharing ratio
    (which the optimal ad price must ignore)."""
    params = MarketParams.finite(
        N=float(rng.uniform(100.0, 1000.0)),
        theta_max=float(rng.uniform(0.5, 2.0)),
        beta=float(rng.uniform(0.05, 1.0)),
        lam=float(rng.uniform(0.1, 5.0)),
        M=float(rng.integers(1, 16)),
        sigma_max=float(rng.integers(1, 16)),
        gamma=float(rng.uniform(0.01, 1.0)),
        a=float(rng.uniform(1.0, 3.0)),
        epsilon=0.01,
    )
    p_f = float(rng.uniform(0.0, params.beta * params.theta_max))
    delta = float(rng.uniform(0.0, 1.0 - params.epsilon))
    return params, p_f, delta


_OMEGA_BANDS = ((0.001, 0.01), (0.011, 1.0 / 3.0), (0.34, 0.97), (0.99, 3.0))


def sample_asymptotic_market(rng, omega_band: tuple[float, float] | None = None) -> MarketParams:
    """One asymptotic-market draw; when omega_band is given, theta_max is
    back-solved so Omega lands uniformly inside the band (g does not
    depend on theta_max, so the construction is exact)."""
    gamma = float(rng.uniform(0.01, 1.0))
    lam = float(rng.uniform(0.1, 15.0))
    eta = float(rng.uniform(0.2, 5.0))
    a = float(rng.uniform(1.0, 5.0))
    beta = float(rng.uniform(0.05, 1.0))
    common = dict(N=float(rng.uniform(100.0, 1000.0)), beta=beta, lam=lam,
                  eta=eta, gamma=gamma, a=a, epsilon=0.01)
    if omega_band is None:
        return MarketParams.asymptotic(theta_max=float(rng.uniform(0.5, 2.0)), **common)
    probe = MarketParams.asymptotic(theta_max=1.0, **common)
    omega = float(rng.uniform(*omega_band))
    theta_max = omega * a * g_function(probe) / (lam * beta)
    return MarketParams.asymptotic(theta_max=theta_max, **common)


def ad_price_draw(seed: int, index: int, grid_points: int = DEFAULT_GRID) -> OracleResult:
    rng = _rng_for(seed, index)
    params, p_f, delta = sample_finite_market(rng)
    return brute_ad_price(p_f, delta, params, grid_points)


def wifi_price_draw(seed: int, index: int) -> OracleResult:
    rng = _rng_for(seed, index)
    params = sample_asymptotic_market(rng)
    delta = float(rng.uniform(0.0, 1.0 - params.epsilon))
    return brute_wifi_price(delta, params)


def sharing_draw(seed: int, index: int, grid_points: int = DEFAULT_GRID) -> OracleResult:
    """Cycles through the four Omega bands so every sharing branch gets
    covered evenly."""
    rng = _rng_for(seed, index)
    params = sample_asymptotic_market(rng, _OMEGA_BANDS[index % 4])
    return brute_sharing(params, grid_points)


# ---------------------------------------------------------------------------
# zeta: how much the large-market price gives up in a finite market

def zeta_experiment(M_range=range(1, 16), sigma_max_range=range(1, 16),
                    draws_per_cell: int = 10_000, seed: int = 0) -> pd.DataFrame:
    """Average zeta per (M, sigma_max) cell.

    zeta compares the VO's advertising revenue at the large-market price
    (with eta = M/sigma_max) against the finite optimum, for random
    gamma~U[0.01,1], lambda~U[0.1,5], a~U[1,3]. N, p_f and delta scale
    both revenues equally and drop out.
    """
    cells = [(int(m), int(s)) for m in M_range for s in sigma_max_range]
    streams = np.random.SeedSequence(seed).spawn(len(cells))
    rows = []
    for (m, s), stream in zip(cells, streams):
        rng = np.random.default_rng(stream)
        gamma = rng.uniform(0.01, 1.0, draws_per_cell)
        lam = rng.uniform(0.1, 5.0, draws_per_cell)
        a = rng.uniform(1.0, 3.0, draws_per_cell)
        rows.append((m, s, float(np.mean(_zeta_draws(gamma, lam, a, m, s)))))
    return pd.DataFrame(rows, columns=["M", "sigma_max", "avg_zeta"])


def _zeta_draws(gamma, lam, a, M, sigma_max):
    """Vectorized zeta for arrays of (gamma, lambda, a) at one (M, sigma_max)."""
    eta = M / sigma_max
    ceiling = a * gamma
    p_inf = np.where(lam <= 2.0 * eta / gamma,
                     ceiling * np.exp(-np.sqrt(2.0 * lam * gamma / np.maximum(eta, 1e-300))),
                     ceiling * np.exp(-2.0))

    ratio = lam / M
    half = 0.5 * gamma * sigma_max
    bound = 2.0 / (gamma * sigma_max)
    p_star = np.select(
        [ratio <= np.minimum(half, np.minimum(1.0, bound)),
         (half < ratio) & (ratio <= 1.0),
         (half < 1.0) & (1.0 < ratio)],
        [ceiling * np.exp(-np.sqrt(2.0 * lam * gamma * sigma_max / M)),
         ceiling * np.exp(-(half + ratio)),
         ceiling * np.exp(-(half + 1.0))],
        default=ceiling * np.exp(-2.0))

    def revenue(p):
        level = np.log(ceiling / p)
        sig_T = np.minimum(level / gamma, sigma_max)
        return p * (level * sig_T - 0.5 * gamma * sig_T ** 2)

    return revenue(p_inf) / revenue(p_star)


def write_zeta_csv(frame: pd.DataFrame, path) -> None:
    frame.to_csv(path, index=False)
