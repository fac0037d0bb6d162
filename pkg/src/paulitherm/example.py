"""A two-parameter analytic family of dephasing-rate profiles.

The transverse rate sum is

    gamma_sum(t) = beta - exp(-alpha t) (1 - exp(-alpha t)),

which starts and ends at beta and dips in between; for beta < 1/4 it is
negative exactly on the window

    t1 = -ln(x+)/alpha,  t2 = -ln(x-)/alpha,  x+- = (1 +- sqrt(1-4 beta))/2.

Its integral has the closed form

    phi(t) = beta t - (1 - exp(-alpha t))^2 / (2 alpha),

and phi >= 0 for all t (completely positive z sector) iff beta >= beta_bar,
where beta_bar = 2 z e^{-2z} at the positive solution of e^z = 1 + 2z,
independent of alpha.  The admissible band for a mean-rate negativity
window with CP dynamics is therefore beta_bar < beta < 1/4.

The rate sum is split as gamma1 = gamma2 = gamma_sum/2 with a constant
gamma3 = kappa; the entropy-production statistics depend only on the sum,
so kappa is a free knob that never changes the moments (tested), only the
divisibility bookkeeping of the full channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._backend import kernels
from .channel import ProbabilityTrajectory, RateFunctions, check_cp
from .reversibility import RegimeReport, classify_regime

DEFAULT_KAPPA = 0.3


@dataclass(frozen=True, slots=True)
class ExampleParams:
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha={self.alpha!r} must be positive")
        if not (self.beta >= 0.0 and math.isfinite(self.beta)):
            raise ValueError(f"beta={self.beta!r} must be nonnegative")


def gamma_sum(params: ExampleParams, t: float) -> float:
    """Transverse rate sum at time t >= 0."""
    if t < 0.0:
        raise ValueError(f"time {t!r} must be nonnegative")
    x = math.exp(-params.alpha * t)
    return params.beta - x * (1.0 - x)


def gamma_sum_function(params: ExampleParams) -> Callable[[float], float]:
    a, b = params.alpha, params.beta
    def fn(t: float) -> float:
        x = math.exp(-a * t)
        return b - x * (1.0 - x)
    return fn


def phi_closed(params: ExampleParams, t: float) -> float:
    """Closed-form integral of gamma_sum from 0 to t."""
    if t < 0.0:
        raise ValueError(f"time {t!r} must be nonnegative")
    e = 1.0 - math.exp(-params.alpha * t)
    return params.beta * t - e * e / (2.0 * params.alpha)


def z_max(*, xtol: float = 1e-12) -> float:
    """Positive solution of exp(z) = 1 + 2z, near 1.256."""
    return kernels.bisect(lambda z: math.exp(z) - 1.0 - 2.0 * z, 1.0, 2.0, xtol)


def beta_bar(*, xtol: float = 1e-12) -> float:
    """Smallest beta keeping phi >= 0 for every alpha and t, near 0.204."""
    z = z_max(xtol=xtol)
    return 2.0 * z * math.exp(-2.0 * z)


def negativity_window(params: ExampleParams) -> tuple[float, float] | None:
    """(t1, t2) where gamma_sum < 0, or None when beta >= 1/4.

    At beta = 1/4 the dip only touches zero; that does not count as a
    window.  For beta = 0 the window is right-open: t2 = inf.
    """
    disc = 1.0 - 4.0 * params.beta
    if disc <= 0.0:
        return None
    root = math.sqrt(disc)
    x_hi = 0.5 * (1.0 + root)
    x_lo = 0.5 * (1.0 - root)
    t1 = -math.log(x_hi) / params.alpha
    t2 = -math.log(x_lo) / params.alpha if x_lo > 0.0 else math.inf
    return t1, t2


def admissible(params: ExampleParams) -> tuple[bool, str]:
    """Whether the profile has a negativity window with CP dynamics."""
    bb = beta_bar()
    if params.beta >= 0.25:
        return False, (f"beta={params.beta!r} >= 0.25: the rate sum never "
                       "turns negative")
    if params.beta <= bb:
        return False, (f"beta={params.beta!r} <= beta_bar={bb:.6f}: phi dips "
                       "below 0, the dynamics is not completely positive")
    return True, "admissible"


def classify_example(params: ExampleParams, *,
                     t3_xtol: float = 1e-10) -> RegimeReport:
    """Variance-behaviour case of the negativity window of this profile."""
    ok, reason = admissible(params)
    if not ok:
        raise ValueError(reason)
    window = negativity_window(params)
    assert window is not None
    t1, t2 = window
    return classify_regime(phi_closed(params, t1), phi_closed(params, t2),
                           window=window,
                           phi=lambda t: phi_closed(params, t),
                           t3_xtol=t3_xtol)


def default_rate_split(params: ExampleParams, kappa: float = DEFAULT_KAPPA, *,
                       validate: bool = True, horizon: float | None = None,
                       points: int = 512) -> RateFunctions:
    """Full rate triple (gamma_sum/2, gamma_sum/2, kappa).

    With validate=True the induced mixing weights are checked for complete
    positivity on a grid over [0, horizon] (default 10/alpha); a violation
    raises ValueError naming the first offending time and weight index.
    """
    gsum = gamma_sum_function(params)
    rates = RateFunctions(lambda t: 0.5 * gsum(t),
                          lambda t: 0.5 * gsum(t),
                          lambda t: kappa)
    if validate:
        h = 10.0 / params.alpha if horizon is None else horizon
        times = np.linspace(h / points, h, points)
        traj = ProbabilityTrajectory.from_rates(rates, times)
        for i in range(len(traj)):
            res = check_cp(traj.at(i))
            if not res.ok:
                raise ValueError(
                    f"rate split kappa={kappa!r} breaks complete positivity "
                    f"at t={float(traj.times[i])!r} (weight index "
                    f"{res.violations[0]})")
    return rates
