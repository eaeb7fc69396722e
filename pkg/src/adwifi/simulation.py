"""Agent-level Monte Carlo check of the analytic model.

Each replication draws an actual market: MU valuations and Poisson visit
counts, AD types, integer ad purchases via the floor/ceil randomization,
and a slot-by-slot display assignment. Empirical revenues must converge
to the closed forms, and the realized view frequency of a tagged AD must
match nu(m), which validates the Poisson/Maclaurin simplification against
a simulation that never uses it.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import UndefinedTau
from .market import (
    ASYMPTOTIC,
    FINITE,
    MarketParams,
    access_split,
    ad_optimal_quantity,
    ad_payoff,
    sigma_threshold,
    theta_threshold,
)
from .platform import equilibrium_wifi_price
from .pricing import (
    asymptotic_spaces_sold,
    optimal_ad_price_asymptotic,
    total_ad_spaces_sold,
)

_TAU_CURVE_POINTS = 101
# the default tau curve stops at 0.9975*sigma_T, inside tau's domain
_TAU_CURVE_SPAN = 0.9975


@dataclass(frozen=True)
class SimulationReport:
    empirical_vo_ad_revenue: float
    empirical_vo_premium_revenue: float
    empirical_platform_revenue: float
    tau_curve: list
    replication_count: int
    seed: int
    diagnostics: dict


def randomized_purchase(m_star: float, rng) -> int:
    """Integer purchase implementing a fractional target in expectation:
    floor(m*) with probability 1-kappa, ceil(m*) with probability kappa,
    kappa the fractional part."""
    if m_star < 0:
        raise ValueError(f"m_star must be nonnegative, got {m_star}")
    floor = math.floor(m_star)
    kappa = m_star - floor
    if kappa == 0.0:
        return int(floor)
    return int(floor) + (rng.random() < kappa)


def tau(sigma: float, params: MarketParams) -> float:
    """Relative payoff loss of a type-sigma AD from buying integer spaces.

    Evaluated at the equilibrium prices. Zero whenever m*(sigma) is an
    integer; positive otherwise by concavity of the payoff; undefined at
    and beyond sigma_T where the reference payoff vanishes.
    """
    params.require_asymptotic("tau")
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    p_a = optimal_ad_price_asymptotic(params)
    p_f = equilibrium_wifi_price(params)
    sig_T = sigma_threshold(p_a, params)
    if sigma >= sig_T:
        raise UndefinedTau(f"tau undefined at sigma={sigma} >= sigma_T={sig_T}")
    m_star = ad_optimal_quantity(sigma, p_a, p_f, params)
    kappa = m_star - math.floor(m_star)
    if kappa == 0.0:
        return 0.0
    best = ad_payoff(sigma, m_star, p_f, p_a, params)
    lower = ad_payoff(sigma, math.floor(m_star), p_f, p_a, params)
    upper = ad_payoff(sigma, math.floor(m_star) + 1.0, p_f, p_a, params)
    return 1.0 - ((1.0 - kappa) * lower + kappa * upper) / best


def default_tau_curve(params: MarketParams, points: int = _TAU_CURVE_POINTS) -> list:
    """tau sampled on an even grid inside its domain [0, sigma_T)."""
    p_a = optimal_ad_price_asymptotic(params)
    sig_T = sigma_threshold(p_a, params)
    if sig_T == 0.0:
        return []
    grid = np.linspace(0.0, _TAU_CURVE_SPAN * sig_T, points)
    return [(float(s), tau(float(s), params)) for s in grid]


def run_market_simulation(params: MarketParams, eq, replications: int,
                          seed: int = 0) -> SimulationReport:
    """Simulate the market at the prices in eq across seeded replications.

    eq supplies p_f_star, p_a and delta_star (an EquilibriumOutcome, or
    anything shaped like one). MU and AD populations are redrawn each
    replication; advertising revenue is the price times spaces purchased,
    premium revenue the Wi-Fi price times premium segments.
    """
    if replications < 1:
        raise ValueError(f"replications must be >= 1, got {replications}")
    p_f, p_a, delta = eq.p_f_star, eq.p_a, eq.delta_star
    n_users = _round_half_up(params.N)
    theta_T = theta_threshold(p_f, params)
    phi_a = access_split(p_f, params).phi_a
    sig_T = sigma_threshold(p_a, params)
    ceiling = params.a * params.gamma
    level = math.log(ceiling / p_a) if p_a < ceiling else 0.0
    audience = params.N * phi_a
    poisson_cdf = _poisson_cdf(params.lam) if params.lam <= 30.0 else None

    premium_revs = np.empty(replications)
    ad_revs = np.empty(replications)
    sold_counts = np.empty(replications)
    display_overflow = -np.inf
    view_gaps = []
    promo_shares = []

    for r, child in enumerate(np.random.SeedSequence(seed).spawn(replications)):
        rng = np.random.default_rng(child)
        theta = rng.uniform(0.0, params.theta_max, n_users)
        sponsored = theta < theta_T
        visits = _poisson_draw(rng, params.lam, n_users, poisson_cdf)
        premium_segments = int(visits[~sponsored].sum())
        segments = int(visits[sponsored].sum())
        premium_revs[r] = p_f * premium_segments

        sigma = _draw_ad_types(params, rng, sig_T)
        active = sigma <= sig_T
        m_star = np.where(active & (audience > 0.0),
                          np.maximum(0.0, audience * (level - params.gamma * sigma)),
                          0.0)
        floors = np.floor(m_star)
        bought = (floors + (rng.random(sigma.size) < (m_star - floors))).astype(np.int64)
        sold = int(bought.sum())
        sold_counts[r] = sold
        ad_revs[r] = p_a * sold

        if sold > 0 and segments > 0 and audience > 0.0:
            # one categorical draw per segment over ADs (most popular first),
            # truncated at total probability 1; the rest is self-promotion
            chi = bought / (params.lam * audience)
            cum = np.minimum(np.cumsum(chi), 1.0)
            u = rng.random(segments)
            slot_of = np.searchsorted(cum, u, side="right")
            displayed = int(np.count_nonzero(slot_of < sigma.size))
            display_overflow = max(display_overflow, displayed - segments)
            promo_shares.append(1.0 - displayed / segments)

            tagged = int(np.argmax(bought > 0))
            mu_of_segment = np.repeat(np.arange(int(sponsored.sum())), visits[sponsored])
            hits = np.bincount(mu_of_segment[slot_of == tagged],
                               minlength=int(sponsored.sum()))
            seen_fraction = float(np.mean(hits > 0))
            analytic = -math.expm1(-bought[tagged] / audience)
            view_gaps.append(seen_fraction - analytic)

    view_gaps = np.asarray(view_gaps)
    diagnostics = {
        "sold_spaces_mean": float(sold_counts.mean()),
        "sold_spaces_se": float(sold_counts.std(ddof=1) / math.sqrt(replications))
        if replications > 1 else 0.0,
        "sold_spaces_analytic": _analytic_spaces(p_a, p_f, params),
        "max_displays_minus_segments":
            float(display_overflow) if math.isfinite(display_overflow) else None,
        "self_promotion_share_mean": float(np.mean(promo_shares)) if promo_shares else 0.0,
        "view_gap_mean": float(view_gaps.mean()) if view_gaps.size else 0.0,
        "view_gap_se": float(view_gaps.std(ddof=1) / math.sqrt(view_gaps.size))
        if view_gaps.size > 1 else 0.0,
        "view_check_replications": int(view_gaps.size),
    }
    curve = default_tau_curve(params) if params.mode == ASYMPTOTIC else []
    return SimulationReport(
        empirical_vo_ad_revenue=float((1.0 - delta) * ad_revs.mean()),
        empirical_vo_premium_revenue=float(premium_revs.mean()),
        empirical_platform_revenue=float(delta * ad_revs.mean()),
        tau_curve=curve,
        replication_count=replications,
        seed=seed,
        diagnostics=diagnostics,
    )


def _draw_ad_types(params, rng, sig_T):
    if params.mode == FINITE:
        return np.sort(rng.uniform(0.0, params.sigma_max, _round_half_up(params.M)))
    # asymptotic mode: only types below sigma_T matter. Their expected
    # count is eta*sigma_T; realize it by randomized rounding and place
    # one draw per equal stratum (keeps the purchase total tight).
    count = randomized_purchase(params.eta * sig_T, rng)
    if count == 0:
        return np.empty(0)
    return (np.arange(count) + rng.random(count)) * (sig_T / count)


def _analytic_spaces(p_a, p_f, params):
    if params.mode == FINITE:
        return total_ad_spaces_sold(p_a, p_f, params)
    return asymptotic_spaces_sold(p_a, p_f, params)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _poisson_cdf(lam: float) -> np.ndarray:
    k_max = int(lam + 12.0 * math.sqrt(lam) + 25.0)
    pmf = np.empty(k_max + 1)
    pmf[0] = math.exp(-lam)
    for k in range(1, k_max + 1):
        pmf[k] = pmf[k - 1] * lam / k
    return np.cumsum(pmf)


def _poisson_draw(rng, lam, size, cdf):
    if cdf is None:
        return rng.poisson(lam, size)
    return np.searchsorted(cdf, rng.random(size), side="right")


def write_report_json(report: SimulationReport, path) -> None:
    payload = asdict(report)
    payload["tau_curve"] = [[s, t] for s, t in report.tau_curve]
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def write_tau_csv(tau_curve, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sigma", "tau"])
        writer.writerows(tau_curve)
