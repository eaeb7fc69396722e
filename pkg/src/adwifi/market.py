"""Domain types and per-segment behavior of mobile users and advertisers.

The market has three kinds of actors. Mobile users (MUs) of valuation type
theta in [0, theta_max] pick premium or ad-sponsored access each period.
Advertisers (ADs) of type sigma decide how many ad spaces to buy at price
p_a. The venue owner and platform sit upstream and are handled elsewhere;
everything here conditions on the two prices (p_f, p_a).

Two market modes exist. The finite mode carries M advertisers with types
uniform on [0, sigma_max]. The asymptotic mode is the limit M, sigma_max
to infinity at fixed density eta = M / sigma_max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateMarket

FINITE = "finite"
ASYMPTOTIC = "asymptotic"

_MODES = (FINITE, ASYMPTOTIC)

# Dict keys use the reader-facing name "lambda"; the attribute is `lam`
# because of the Python keyword.
_DICT_KEYS = (
    "N", "theta_max", "beta", "lambda", "M", "sigma_max",
    "gamma", "a", "eta", "epsilon", "mode",
)


@dataclass(frozen=True)
class MarketParams:
    """Immutable bundle of primitives for one market instance.

    Use the `finite` or `asymptotic` constructors rather than the raw
    dataclass call; they fill the mode flag and the derived density.
    """

    N: float
    theta_max: float
    beta: float
    lam: float
    gamma: float
    a: float
    epsilon: float
    mode: str
    M: float | None = None
    sigma_max: float | None = None
    eta: float | None = None

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ValueError(f"mode must be 'finite' or 'asymptotic', got {self.mode!r}")
        for name in ("N", "theta_max", "lam", "a"):
            value = getattr(self, name)
            _reject_non_numeric(name, value)
            if value <= 0:
                label = "lambda" if name == "lam" else name
                raise ValueError(f"{label} must be positive, got {value}")
        for name in ("beta", "gamma"):
            value = getattr(self, name)
            _reject_non_numeric(name, value)
            if not 0 < value <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {value}")
        _reject_non_numeric("epsilon", self.epsilon)
        if not 0 < self.epsilon < 1 / 3:
            raise ValueError(f"epsilon must lie in (0, 1/3), got {self.epsilon}")

        if self.mode == FINITE:
            for name in ("M", "sigma_max"):
                value = getattr(self, name)
                if value is None:
                    raise ValueError(f"finite mode requires {name}")
                _reject_non_numeric(name, value)
                if value <= 0:
                    raise ValueError(f"{name} must be positive, got {value}")
            derived = self.M / self.sigma_max
            if self.eta is None:
                object.__setattr__(self, "eta", derived)
            elif not math.isclose(self.eta, derived, rel_tol=1e-12, abs_tol=0.0):
                raise ValueError(
                    f"eta must equal M/sigma_max in finite mode: got {self.eta}, expected {derived}"
                )
        else:
            if self.M is not None or self.sigma_max is not None:
                raise ValueError("asymptotic mode does not take M or sigma_max")
            if self.eta is None:
                raise ValueError("asymptotic mode requires eta")
            _reject_non_numeric("eta", self.eta)
            if self.eta < 0:
                raise ValueError(f"eta must be nonnegative, got {self.eta}")

    @classmethod
    def finite(cls, *, N, theta_max, beta, lam, M, sigma_max, gamma, a, epsilon):
        return cls(N=N, theta_max=theta_max, beta=beta, lam=lam, gamma=gamma,
                   a=a, epsilon=epsilon, mode=FINITE, M=M, sigma_max=sigma_max)

    @classmethod
    def asymptotic(cls, *, N, theta_max, beta, lam, eta, gamma, a, epsilon):
        return cls(N=N, theta_max=theta_max, beta=beta, lam=lam, gamma=gamma,
                   a=a, epsilon=epsilon, mode=ASYMPTOTIC, eta=eta)

    @classmethod
    def from_dict(cls, data: dict) -> "MarketParams":
        """Build params from a plain dict, e.g. parsed JSON.

        The advertiser density key is spelled "lambda". Unknown keys are
        rejected by name so config typos fail loudly.
        """
        if not isinstance(data, dict):
            raise ValueError(f"expected a parameter object, got {type(data).__name__}")
        unknown = sorted(set(data) - set(_DICT_KEYS))
        if unknown:
            raise ValueError(f"unknown parameter field(s): {', '.join(unknown)}")
        mode = data.get("mode")
        if mode is None:
            raise ValueError("missing parameter field: mode ('finite' or 'asymptotic')")
        required = ["N", "theta_max", "beta", "lambda", "gamma", "a", "epsilon"]
        if mode == FINITE:
            required += ["M", "sigma_max"]
        elif mode == ASYMPTOTIC:
            required += ["eta"]
        missing = [key for key in required if key not in data]
        if missing:
            raise ValueError(f"missing parameter field(s): {', '.join(missing)}")
        return cls(
            N=data["N"], theta_max=data["theta_max"], beta=data["beta"],
            lam=data["lambda"], gamma=data["gamma"], a=data["a"],
            epsilon=data["epsilon"], mode=mode,
            M=data.get("M"), sigma_max=data.get("sigma_max"),
            eta=data.get("eta") if mode == ASYMPTOTIC else None,
        )

    def to_dict(self) -> dict:
        out = {
            "N": self.N, "theta_max": self.theta_max, "beta": self.beta,
            "lambda": self.lam, "gamma": self.gamma, "a": self.a,
            "epsilon": self.epsilon, "mode": self.mode,
        }
        if self.mode == FINITE:
            out["M"] = self.M
            out["sigma_max"] = self.sigma_max
        else:
            out["eta"] = self.eta
        return out

    def require_finite(self, what: str):
        if self.mode != FINITE:
            raise ValueError(f"{what} is only defined in finite mode")

    def require_asymptotic(self, what: str):
        if self.mode != ASYMPTOTIC:
            raise ValueError(f"{what} is only defined in asymptotic mode")


def _reject_non_numeric(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{name} must be a number, got {type(value).__name__}")
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class AccessSplit:
    """How the MU population divides between access types at a Wi-Fi price.

    phi_a is the ad-sponsored fraction (types below theta_T), phi_f the
    premium fraction; they sum to one.
    """

    phi_a: float
    phi_f: float
    theta_T: float


@dataclass(frozen=True)
class AdDecision:
    """One advertiser's optimal purchase: expected spaces m_star, and
    whether the type is active (sigma at or below the threshold)."""

    sigma: float
    m_star: float
    active: bool


def theta_threshold(p_f: float, params: MarketParams) -> float:
    """Threshold MU type theta_T = min(p_f / beta, theta_max).

    Types at or above the threshold take premium access, the rest take the
    ad-sponsored service.
    """
    if p_f < 0:
        raise ValueError(f"p_f must be nonnegative, got {p_f}")
    # Saturation is decided against the price cap itself, not the quotient:
    # (beta * theta_max) / beta can land one ulp under theta_max, and the
    # equilibrium price in the saturated regimes is exactly that product.
    if p_f >= params.beta * params.theta_max:
        return params.theta_max
    return min(p_f / params.beta, params.theta_max)


def mu_payoff(theta: float, d: int, p_f: float, params: MarketParams) -> float:
    """Per-segment payoff of a type-theta MU under access choice d.

    d = 1 buys premium access (payoff theta - p_f); d = 0 watches ads
    (payoff theta * (1 - beta)).
    """
    _check_theta(theta, params)
    if p_f < 0:
        raise ValueError(f"p_f must be nonnegative, got {p_f}")
    if d not in (0, 1):
        raise ValueError(f"access choice d must be 0 or 1, got {d!r}")
    if d == 1:
        return theta - p_f
    return theta * (1.0 - params.beta)


def mu_access_choice(theta: float, p_f: float, params: MarketParams) -> int:
    """Optimal access choice of a type-theta MU; ties go to premium.

    The comparison point is the uncapped indifference type p_f/beta: for
    p_f > beta*theta_max no type prefers premium, even theta_max itself,
    so capping at the support edge would misclassify that single type.
    """
    _check_theta(theta, params)
    if p_f < 0:
        raise ValueError("p_f must be nonnegative")
    return 1 if theta >= p_f / params.beta else 0


def access_split(p_f: float, params: MarketParams) -> AccessSplit:
    """Population split induced by the Wi-Fi price p_f."""
    theta_T = theta_threshold(p_f, params)
    phi_a = theta_T / params.theta_max
    return AccessSplit(phi_a=phi_a, phi_f=1.0 - phi_a, theta_T=theta_T)


def ad_popularity(sigma: float, params: MarketParams) -> float:
    """Popularity s(sigma) = gamma * exp(-gamma * sigma) of a type-sigma AD:
    the probability a viewer of its ad buys the product."""
    _check_sigma(sigma)
    return params.gamma * math.exp(-params.gamma * sigma)


def display_probability(m: float, p_f: float, params: MarketParams) -> float:
    """Probability chi that a given segment shows this AD's ad.

    m expected spaces spread over lambda * N * phi_a ad-watching segments.
    m = 0 yields 0 even with no audience; a positive m with no audience is
    meaningless and raises DegenerateMarket.
    """
    _check_m(m)
    if m == 0:
        return 0.0
    phi_a = access_split(p_f, params).phi_a
    if phi_a == 0:
        raise DegenerateMarket("no ad-sponsored users: display probability undefined for m > 0")
    return m / (params.lam * params.N * phi_a)


def view_probability(m: float, p_f: float, params: MarketParams) -> float:
    """Probability nu that a random ad-sponsored MU sees this ad at least
    once in a period: nu = 1 - exp(-m / (N * phi_a)).

    Independent of lambda: more visits mean more segments but also
    proportionally more slots competing for the same m spaces.
    """
    _check_m(m)
    phi_a = access_split(p_f, params).phi_a
    if phi_a == 0:
        raise DegenerateMarket("no ad-sponsored users: view probability undefined")
    return -math.expm1(-m / (params.N * phi_a))


def ad_payoff(sigma: float, m: float, p_f: float, p_a: float, params: MarketParams) -> float:
    """Expected payoff of a type-sigma AD buying m spaces:
    a * N * phi_a * s(sigma) * nu(m) - p_a * m."""
    _check_sigma(sigma)
    _check_m(m)
    if p_a < 0:
        raise ValueError(f"p_a must be nonnegative, got {p_a}")
    if m == 0:
        return 0.0
    phi_a = access_split(p_f, params).phi_a
    nu = view_probability(m, p_f, params)
    return params.a * params.N * phi_a * ad_popularity(sigma, params) * nu - p_a * m


def sigma_threshold(p_a: float, params: MarketParams) -> float:
    """Threshold AD type sigma_T(p_a); types above it buy nothing.

    Equals (1/gamma) * ln(a * gamma / p_a), capped at sigma_max in finite
    mode, and 0 once p_a reaches a * gamma.
    """
    if p_a <= 0:
        raise ValueError(f"p_a must be positive, got {p_a}")
    ceiling = params.a * params.gamma
    if p_a >= ceiling:
        return 0.0
    raw = math.log(ceiling / p_a) / params.gamma
    if params.mode == FINITE:
        return min(raw, params.sigma_max)
    return raw


def ad_optimal_quantity(sigma: float, p_a: float, p_f: float, params: MarketParams) -> float:
    """Optimal expected purchase m*(sigma) of a type-sigma AD.

    N * phi_a * (ln(a * gamma / p_a) - gamma * sigma) for active types,
    zero above the threshold. With no audience every type buys zero.
    """
    _check_sigma(sigma)
    phi_a = access_split(p_f, params).phi_a
    if phi_a == 0:
        return 0.0
    if sigma > sigma_threshold(p_a, params):
        return 0.0
    level = math.log(params.a * params.gamma / p_a) - params.gamma * sigma
    return max(0.0, params.N * phi_a * level)


def ad_decision(sigma: float, p_a: float, p_f: float, params: MarketParams) -> AdDecision:
    """Bundle the purchase quantity with the activity flag."""
    m_star = ad_optimal_quantity(sigma, p_a, p_f, params)
    active = sigma <= sigma_threshold(p_a, params)
    return AdDecision(sigma=sigma, m_star=m_star, active=active)


def _check_theta(theta, params):
    if not 0 <= theta <= params.theta_max:
        raise ValueError(f"theta must lie in [0, {params.theta_max}], got {theta}")


def _check_sigma(sigma):
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")


def _check_m(m):
    if m < 0:
        raise ValueError(f"ad count m must be nonnegative, got {m}")
