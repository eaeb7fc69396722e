"""Stage I: the ad platform's sharing policy and the full equilibrium.

The platform moves first, keeping a fraction delta of advertising revenue
and leaving the VO at least epsilon. Backward induction through the VO's
best responses reduces the problem to one dimension, governed by the
equilibrium indicator Omega = lambda*beta*theta_max / (a*g): the ratio of
the VO's premium stake to the advertising value per sponsored user.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import EmptyMarket
from .market import MarketParams, access_split
from .pricing import (
    g_function,
    optimal_ad_price_asymptotic,
    optimal_wifi_price,
    vo_premium_revenue,
)
from .welfare import ad_total_utility, mu_total_utility


class OmegaRegime(Enum):
    """The four intervals of Omega that shape the optimal sharing policy."""

    OmegaTiny = "OmegaTiny"    # (0, eps]: advertising dwarfs premium
    OmegaLow = "OmegaLow"      # (eps, 1/3]
    OmegaMid = "OmegaMid"      # (1/3, 1-2*eps)
    OmegaHigh = "OmegaHigh"    # [1-2*eps, inf): premium stake dominates


@dataclass(frozen=True)
class EquilibriumOutcome:
    """The sub-game perfect equilibrium bundle of the three-stage game."""

    omega: float
    delta_star: float
    p_f_star: float
    p_a: float
    phi_a: float
    phi_f: float
    platform_revenue: float
    vo_ad_revenue: float
    vo_premium_revenue: float
    vo_total_revenue: float
    social_welfare: float
    regime: OmegaRegime


def equilibrium_indicator(params: MarketParams) -> float:
    """Omega = lambda*beta*theta_max / (a*g(lambda, gamma, eta))."""
    params.require_asymptotic("equilibrium_indicator")
    g = g_function(params)
    if g == 0.0:
        raise EmptyMarket("g=0: advertising carries no revenue, Omega undefined")
    return params.lam * params.beta * params.theta_max / (params.a * g)


def omega_regime(omega: float, epsilon: float) -> OmegaRegime:
    """Classify Omega; boundary points belong to the interval that closes
    on them (Omega=1/3 is OmegaLow, Omega=1-2*eps is OmegaHigh)."""
    if omega <= epsilon:
        return OmegaRegime.OmegaTiny
    if omega <= 1.0 / 3.0:
        return OmegaRegime.OmegaLow
    if omega < 1.0 - 2.0 * epsilon:
        return OmegaRegime.OmegaMid
    return OmegaRegime.OmegaHigh


def sharing_from_omega(omega: float, epsilon: float) -> float:
    """Optimal sharing ratio as a function of Omega alone.

    1-eps on the outer branches (the cap binds), 1-Omega in the low range,
    (1+Omega)/2 in the middle. Continuous at every breakpoint and never
    below 2/3.
    """
    regime = omega_regime(omega, epsilon)
    if regime in (OmegaRegime.OmegaTiny, OmegaRegime.OmegaHigh):
        return 1.0 - epsilon
    if regime is OmegaRegime.OmegaLow:
        return 1.0 - omega
    return 0.5 * (1.0 + omega)


def wifi_price_from_omega(omega: float, params: MarketParams) -> float:
    """Equilibrium Wi-Fi price by Omega branch:
    beta*theta_max for Omega <= 1/3, beta*theta_max*(1/4 + 1/(4*Omega))
    in the middle range, beta*theta_max*(1/2 + eps/(2*Omega)) at the top."""
    cap = params.beta * params.theta_max
    regime = omega_regime(omega, params.epsilon)
    if regime in (OmegaRegime.OmegaTiny, OmegaRegime.OmegaLow):
        return cap
    if regime is OmegaRegime.OmegaMid:
        return cap * (0.25 + 0.25 / omega)
    return cap * (0.5 + 0.5 * params.epsilon / omega)


def optimal_sharing(params: MarketParams) -> float:
    """The platform's optimal sharing ratio delta*."""
    params.require_asymptotic("optimal_sharing")
    return sharing_from_omega(equilibrium_indicator(params), params.epsilon)


def equilibrium_wifi_price(params: MarketParams) -> float:
    """The VO's Wi-Fi price at equilibrium, p_f*(delta*).

    Agrees with composing optimal_wifi_price over optimal_sharing; the
    direct branch form avoids recomputing the Stage II response.
    """
    params.require_asymptotic("equilibrium_wifi_price")
    return wifi_price_from_omega(equilibrium_indicator(params), params)


def platform_revenue(delta: float, params: MarketParams) -> float:
    """The platform's revenue delta*a*N*phi_a(p_f*(delta))*g under the
    VO's Stage II best response to delta."""
    params.require_asymptotic("platform_revenue")
    p_f = optimal_wifi_price(delta, params)
    phi_a = access_split(p_f, params).phi_a
    return delta * params.a * params.N * phi_a * g_function(params)


def solve_equilibrium(params: MarketParams) -> EquilibriumOutcome:
    """Solve the three-stage game by backward induction.

    Raises EmptyMarket when advertising carries no revenue (eta = 0), in
    which case no sharing policy is meaningful.
    """
    params.require_asymptotic("solve_equilibrium")
    p_a = optimal_ad_price_asymptotic(params)
    g = g_function(params)
    omega = equilibrium_indicator(params)
    regime = omega_regime(omega, params.epsilon)
    delta_star = sharing_from_omega(omega, params.epsilon)
    p_f_star = wifi_price_from_omega(omega, params)

    split = access_split(p_f_star, params)
    ad_pool = params.a * params.N * split.phi_a * g
    platform_rev = delta_star * ad_pool
    vo_ad = (1.0 - delta_star) * ad_pool
    vo_premium = vo_premium_revenue(p_f_star, params)
    welfare = mu_total_utility(params, p_f_star) \
        + ad_total_utility(params, p_a, split.phi_a)

    return EquilibriumOutcome(
        omega=omega,
        delta_star=delta_star,
        p_f_star=p_f_star,
        p_a=p_a,
        phi_a=split.phi_a,
        phi_f=split.phi_f,
        platform_revenue=platform_rev,
        vo_ad_revenue=vo_ad,
        vo_premium_revenue=vo_premium,
        vo_total_revenue=vo_ad + vo_premium,
        social_welfare=welfare,
        regime=regime,
    )
