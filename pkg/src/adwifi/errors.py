"""Exceptions shared across the market model."""


class MarketModelError(Exception):
    """Base class for model-level failures."""


class DegenerateMarket(MarketModelError):
    """A display or view probability was requested while nobody watches ads.

    Raised when phi_a(p_f) = 0, i.e. the sponsored audience is empty and the
    per-segment display model has no support.
    """


class EmptyMarket(MarketModelError):
    """The advertising side carries no revenue (g = 0), so the equilibrium
    indicator and the platform's problem are undefined."""


class UndefinedTau(MarketModelError):
    """tau(sigma) was requested at or beyond the threshold type sigma_T,
    where the reference payoff in the denominator is zero."""


class InfeasibleEverywhere(MarketModelError):
    """No candidate price satisfies the capacity constraint.

    Kept for completeness: p_a = a*gamma sells zero spaces and is always
    feasible, so a correctly built grid can never trigger this.
    """


class QuadratureError(MarketModelError):
    """Numerical integration failed its convergence check."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual estimate {residual:.3e})")
        self.residual = residual
