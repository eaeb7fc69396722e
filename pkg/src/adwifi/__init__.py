"""Three-stage equilibrium analysis of ad-sponsored public Wi-Fi markets.

A platform shares a fraction of advertising revenue with venue owners, each
venue owner prices premium access and ad spaces, and mobile users and
advertisers respond. The package solves every stage in closed form, checks
the solutions against brute-force oracles, and replays the market with a
Monte Carlo agent simulation.
"""

from .errors import (
    DegenerateMarket,
    EmptyMarket,
    InfeasibleEverywhere,
    MarketModelError,
    QuadratureError,
    UndefinedTau,
)
from .market import (
    ASYMPTOTIC,
    FINITE,
    AccessSplit,
    AdDecision,
    MarketParams,
    access_split,
    ad_decision,
    ad_optimal_quantity,
    ad_payoff,
    ad_popularity,
    display_probability,
    mu_access_choice,
    mu_payoff,
    sigma_threshold,
    theta_threshold,
    view_probability,
)
from .oracle import (
    OracleResult,
    brute_ad_price,
    brute_sharing,
    brute_wifi_price,
    sample_asymptotic_market,
    sample_finite_market,
    zeta_experiment,
)
from .platform import (
    EquilibriumOutcome,
    OmegaRegime,
    equilibrium_indicator,
    equilibrium_wifi_price,
    omega_regime,
    optimal_sharing,
    platform_revenue,
    solve_equilibrium,
)
from .pricing import (
    AdPriceBranch,
    AdPriceRegime,
    active_ad_count,
    asymptotic_spaces_sold,
    g_function,
    optimal_ad_price_asymptotic,
    optimal_ad_price_finite,
    optimal_wifi_price,
    total_ad_spaces_sold,
    vo_ad_revenue,
    vo_premium_revenue,
    vo_total_revenue,
)
from .simulation import (
    SimulationReport,
    default_tau_curve,
    randomized_purchase,
    run_market_simulation,
    tau,
)
from .welfare import (
    ad_total_utility,
    mu_total_utility,
    social_welfare_closed,
    social_welfare_longform,
)

__all__ = [
    "ASYMPTOTIC",
    "FINITE",
    "AccessSplit",
    "AdDecision",
    "AdPriceBranch",
    "AdPriceRegime",
    "DegenerateMarket",
    "EmptyMarket",
    "EquilibriumOutcome",
    "InfeasibleEverywhere",
    "MarketModelError",
    "MarketParams",
    "OmegaRegime",
    "OracleResult",
    "QuadratureError",
    "SimulationReport",
    "UndefinedTau",
    "access_split",
    "active_ad_count",
    "ad_decision",
    "ad_optimal_quantity",
    "ad_payoff",
    "ad_popularity",
    "ad_total_utility",
    "asymptotic_spaces_sold",
    "brute_ad_price",
    "brute_sharing",
    "brute_wifi_price",
    "default_tau_curve",
    "display_probability",
    "equilibrium_indicator",
    "equilibrium_wifi_price",
    "g_function",
    "mu_access_choice",
    "mu_payoff",
    "mu_total_utility",
    "omega_regime",
    "optimal_ad_price_asymptotic",
    "optimal_ad_price_finite",
    "optimal_sharing",
    "optimal_wifi_price",
    "platform_revenue",
    "randomized_purchase",
    "run_market_simulation",
    "sample_asymptotic_market",
    "sample_finite_market",
    "sigma_threshold",
    "social_welfare_closed",
    "social_welfare_longform",
    "solve_equilibrium",
    "tau",
    "theta_threshold",
    "total_ad_spaces_sold",
    "view_probability",
    "vo_ad_revenue",
    "vo_premium_revenue",
    "vo_total_revenue",
    "zeta_experiment",
]
