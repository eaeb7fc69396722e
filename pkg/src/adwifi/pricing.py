"""Stage II: the venue owner's pricing problem.

Given the platform's sharing ratio delta, the VO picks the advertising
price p_a and the Wi-Fi price p_f. The two choices decouple: the optimal
p_a is independent of p_f and delta, so it is solved first, and the Wi-Fi
price then trades premium revenue against the advertising audience.

The finite market admits a four-branch closed form for p_a. Under the
large-market limit the branches collapse to a two-piece rule in lambda,
and the advertising revenue takes the compact form (1-delta)*a*N*phi_a*g
with g the per-user revenue kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyMarket
from .market import (
    ASYMPTOTIC,
    FINITE,
    MarketParams,
    access_split,
    sigma_threshold,
)


class AdPriceBranch(Enum):
    """Which branch of the finite-market ad price rule applied.

    CapacityBound: demand at the unconstrained peak would exceed the
    lambda*N*phi_a supply, so the capacity constraint binds.
    FiniteCaseB1 / FiniteCaseB3: boundary cases where the type support
    ends before the interior optimum (threshold pinned at sigma_max).
    Unconstrained: the interior optimum a*gamma*e^(-2) is feasible.
    """

    CapacityBound = "CapacityBound"
    FiniteCaseB1 = "FiniteCaseB1"
    FiniteCaseB3 = "FiniteCaseB3"
    Unconstrained = "Unconstrained"


@dataclass(frozen=True)
class AdPriceRegime:
    regime: AdPriceBranch
    price: float


def total_ad_spaces_sold(p_a: float, p_f: float, params: MarketParams) -> float:
    """Expected total spaces Q(p_a, p_f) demanded by all ADs, finite mode.

    Integrates m*(sigma) over the M/sigma_max type density:
    (M*N*phi_a/sigma_max) * (ln(a*gamma/p_a)*sigma_T - (gamma/2)*sigma_T^2).
    """
    params.require_finite("total_ad_spaces_sold")
    if p_a <= 0:
        raise ValueError(f"p_a must be positive, got {p_a}")
    if p_a >= params.a * params.gamma:
        return 0.0
    phi_a = access_split(p_f, params).phi_a
    sig_T = sigma_threshold(p_a, params)
    level = math.log(params.a * params.gamma / p_a)
    per_ad = level * sig_T - 0.5 * params.gamma * sig_T ** 2
    return params.M * params.N * phi_a / params.sigma_max * per_ad


def asymptotic_spaces_sold(p_a: float, p_f: float, params: MarketParams) -> float:
    """Large-market limit of Q: eta*N*phi_a*ln(a*gamma/p_a)^2/(2*gamma)."""
    params.require_asymptotic("asymptotic_spaces_sold")
    if p_a <= 0:
        raise ValueError(f"p_a must be positive, got {p_a}")
    if p_a >= params.a * params.gamma:
        return 0.0
    phi_a = access_split(p_f, params).phi_a
    level = math.log(params.a * params.gamma / p_a)
    return params.eta * params.N * phi_a * level ** 2 / (2.0 * params.gamma)


def vo_ad_revenue(p_f: float, p_a: float, delta: float, params: MarketParams) -> float:
    """The VO's expected advertising revenue (1-delta)*p_a*Q(p_a, p_f).

    delta = 1 is accepted to define the platform-takes-all limit even
    though feasible policies stop at 1 - epsilon.
    """
    _check_delta(delta)
    if p_a >= params.a * params.gamma:
        return 0.0
    if params.mode == FINITE:
        sold = total_ad_spaces_sold(p_a, p_f, params)
    else:
        sold = asymptotic_spaces_sold(p_a, p_f, params)
    return (1.0 - delta) * p_a * sold


def optimal_ad_price_finite(params: MarketParams) -> AdPriceRegime:
    """Optimal advertising price in the finite market.

    Four branches keyed on lambda/M against gamma*sigma_max/2, 1, and
    2/(gamma*sigma_max); a draw on a boundary takes the earlier branch
    (the values coincide there).
    """
    params.require_finite("optimal_ad_price_finite")
    ceiling = params.a * params.gamma
    ratio = params.lam / params.M
    half = 0.5 * params.gamma * params.sigma_max
    capacity = 2.0 / (params.gamma * params.sigma_max)
    if ratio <= min(half, 1.0, capacity):
        price = ceiling * math.exp(-math.sqrt(2.0 * params.lam * params.gamma * params.sigma_max / params.M))
        return AdPriceRegime(AdPriceBranch.CapacityBound, price)
    if half < ratio <= 1.0:
        return AdPriceRegime(AdPriceBranch.FiniteCaseB1, ceiling * math.exp(-(half + ratio)))
    if half < 1.0 < ratio:
        return AdPriceRegime(AdPriceBranch.FiniteCaseB3, ceiling * math.exp(-(half + 1.0)))
    return AdPriceRegime(AdPriceBranch.Unconstrained, ceiling * math.exp(-2.0))


def optimal_ad_price_asymptotic(params: MarketParams) -> float:
    """Optimal advertising price in the large-market limit.

    a*gamma*e^(-sqrt(2*lambda*gamma/eta)) while lambda <= 2*eta/gamma
    (the sell-out regime, boundary included), a*gamma*e^(-2) beyond.
    """
    params.require_asymptotic("optimal_ad_price_asymptotic")
    if params.eta == 0:
        raise EmptyMarket("eta=0: no advertiser demand at any price")
    if params.lam <= 2.0 * params.eta / params.gamma:
        return params.a * params.gamma * math.exp(-math.sqrt(2.0 * params.lam * params.gamma / params.eta))
    return params.a * params.gamma * math.exp(-2.0)


def g_function(params: MarketParams) -> float:
    """Per-MU advertising revenue kernel g(lambda, gamma, eta).

    The VO's advertising revenue at the optimal price is
    (1-delta)*a*N*phi_a*g. Piecewise in lambda at 2*eta/gamma, continuous,
    and constant in lambda past the knee.
    """
    params.require_asymptotic("g_function")
    if params.eta > 0 and params.lam <= 2.0 * params.eta / params.gamma:
        return params.lam * params.gamma * math.exp(-math.sqrt(2.0 * params.lam * params.gamma / params.eta))
    return 2.0 * params.eta * math.exp(-2.0)


def active_ad_count(params: MarketParams) -> float:
    """Expected number of active ADs rho at the optimal asymptotic price:
    sqrt(2*lambda*eta/gamma) in the sell-out regime, 2*eta/gamma beyond."""
    params.require_asymptotic("active_ad_count")
    if params.eta > 0 and params.lam <= 2.0 * params.eta / params.gamma:
        return math.sqrt(2.0 * params.lam * params.eta / params.gamma)
    return 2.0 * params.eta / params.gamma


def vo_premium_revenue(p_f: float, params: MarketParams) -> float:
    """Premium revenue lambda*p_f*N*phi_f(p_f): every premium MU pays p_f
    for each of its lambda expected segments."""
    phi_f = access_split(p_f, params).phi_f
    return params.lam * p_f * params.N * phi_f


def vo_total_revenue(p_f: float, delta: float, params: MarketParams) -> float:
    """The VO's total revenue at the optimal ad price, as a function of p_f.

    Premium plus retained advertising: lambda*p_f*N*phi_f
    + (1-delta)*a*N*g*phi_a. Quadratic in p_f on [0, beta*theta_max] and
    constant beyond (the split saturates).
    """
    params.require_asymptotic("vo_total_revenue")
    _check_delta(delta)
    split = access_split(p_f, params)
    premium = params.lam * p_f * params.N * split.phi_f
    advertising = (1.0 - delta) * params.a * params.N * g_function(params) * split.phi_a
    return premium + advertising


def optimal_wifi_price(delta: float, params: MarketParams) -> float:
    """The VO's best-response Wi-Fi price under sharing policy delta:
    beta*theta_max/2 + min((1-delta)*a*g/(2*lambda), beta*theta_max/2)."""
    params.require_asymptotic("optimal_wifi_price")
    _check_delta(delta)
    half = 0.5 * params.beta * params.theta_max
    lift = (1.0 - delta) * params.a * g_function(params) / (2.0 * params.lam)
    return half + min(lift, half)


def _check_delta(delta):
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
