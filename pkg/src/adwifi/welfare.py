"""Social welfare at equilibrium: closed form and a long-form integral check.

All monetary transfers (premium payments, ad payments, the platform's
share) cancel in the welfare sum, so welfare equals the total utility of
MUs plus the total advertising value accrued by ADs. The closed form
evaluates that total directly; the long form adds up the four surplus
components with numerical integrals and must land on the same number.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import simpson

from .errors import QuadratureError
from .market import MarketParams, sigma_threshold, theta_threshold

_NODES = 10_001
_CONVERGENCE_TOL = 1e-8


def mu_total_utility(params: MarketParams, p_f: float) -> float:
    """Total MU utility lambda*N*(theta_max/2 - beta*theta_T^2/(2*theta_max)).

    Sponsored users keep theta*(1-beta) per segment, premium users keep
    theta gross of payment; the premium payment itself is a transfer and
    is excluded here.
    """
    theta_T = theta_threshold(p_f, params)
    per_segment = 0.5 * params.theta_max - 0.5 * params.beta * theta_T ** 2 / params.theta_max
    return params.lam * params.N * per_segment


def ad_total_utility(params: MarketParams, p_a: float, phi_a: float) -> float:
    """Total advertising value eta*N*phi_a*(a*(1-e^(-gamma*sigma_T)) - p_a*sigma_T),
    gross of the ad payments (transfers to the VO and the platform)."""
    params.require_asymptotic("ad_total_utility")
    sig_T = sigma_threshold(p_a, params)
    value = params.a * -math.expm1(-params.gamma * sig_T) - p_a * sig_T
    return params.eta * params.N * phi_a * value


def social_welfare_closed(params: MarketParams, eq) -> float:
    """Equilibrium social welfare in closed form:

    (1/2)*lambda*N*theta_max - (1/2)*lambda*N*p_f*phi_a
      + eta*N*phi_a*(a - (p_a/gamma)*(1 + ln(a*gamma/p_a))).

    The first two terms are MU total utility, the last is AD total value.
    """
    params.require_asymptotic("social_welfare_closed")
    mu_part = 0.5 * params.lam * params.N * params.theta_max \
        - 0.5 * params.lam * params.N * eq.p_f_star * eq.phi_a
    level = math.log(params.a * params.gamma / eq.p_a)
    ad_part = params.eta * params.N * eq.phi_a * (params.a - eq.p_a / params.gamma * (1.0 + level))
    return mu_part + ad_part


def social_welfare_longform(params: MarketParams, eq, nodes: int = _NODES) -> float:
    """Welfare as the explicit four-component sum.

    Platform revenue + VO total revenue + the integral of MU net payoffs
    + the integral of AD net payoffs. Integrals use composite Simpson;
    a halving-node residual above 1e-8 relative raises QuadratureError.
    """
    params.require_asymptotic("social_welfare_longform")
    full = _surplus_integrals(params, eq, nodes)
    half = _surplus_integrals(params, eq, nodes // 2 + 1)
    total = eq.platform_revenue + eq.vo_total_revenue + full
    residual = abs(full - half) / max(1.0, abs(total))
    if residual > _CONVERGENCE_TOL:
        raise QuadratureError("welfare integrals did not converge", residual)
    return total


def mu_net_payoff_integral(params: MarketParams, p_f: float, nodes: int = _NODES) -> float:
    """lambda*N*E_theta[net payoff]: theta*(1-beta) below the threshold,
    theta - p_f above, integrated against the uniform type density."""
    theta_T = theta_threshold(p_f, params)
    sponsored = _simpson_on(
        lambda t: t * (1.0 - params.beta), 0.0, theta_T, nodes)
    premium = _simpson_on(
        lambda t: t - p_f, theta_T, params.theta_max, nodes)
    return params.lam * params.N * (sponsored + premium) / params.theta_max


def ad_net_payoff_integral(params: MarketParams, p_a: float, phi_a: float,
                           nodes: int = _NODES) -> float:
    """eta * integral over active types of the AD's maximized net payoff
    a*N*phi_a*s(sigma)*nu(m*(sigma)) - p_a*m*(sigma)."""
    params.require_asymptotic("ad_net_payoff_integral")
    sig_T = sigma_threshold(p_a, params)
    if sig_T == 0.0 or phi_a == 0.0:
        return 0.0
    level = math.log(params.a * params.gamma / p_a)

    def net(sigma):
        m_star = np.maximum(0.0, params.N * phi_a * (level - params.gamma * sigma))
        nu = -np.expm1(-m_star / (params.N * phi_a))
        popularity = params.gamma * np.exp(-params.gamma * sigma)
        return params.a * params.N * phi_a * popularity * nu - p_a * m_star

    return params.eta * _simpson_on(net, 0.0, sig_T, nodes)


def _surplus_integrals(params, eq, nodes):
    return (mu_net_payoff_integral(params, eq.p_f_star, nodes)
            + ad_net_payoff_integral(params, eq.p_a, eq.phi_a, nodes))


def _simpson_on(fn, lo, hi, nodes):
    if hi <= lo:
        return 0.0
    grid = np.linspace(lo, hi, nodes)
    return float(simpson(fn(grid), x=grid))
