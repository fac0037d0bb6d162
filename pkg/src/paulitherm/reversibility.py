"""Rates of the entropy-production moments and mitigation-regime analysis.

For a sigma_z-pure initial state (zeta0 = 1) the mean and variance of the
two-point entropy production evolve as

    d<ds>/dt   = lam ln((1+lam)/(1-lam)) * (gamma1 + gamma2)
    dVar/dt    = 2 f(lam) * d<ds>/dt,
    f(lam)     = (lam/2) ln((1+lam)/(1-lam)) - 1,

with lam = exp(-2 phi) and phi(t) = integral_0^t (gamma1 + gamma2) ds.
f has a single zero at x_star ~ 0.8336, so along a rate-sum negativity
window the variance derivative flips behaviour depending on where phi sits
relative to phi_star = -ln(x_star)/2.  That yields three cases:

    I   phi(t1) <= phi_star and phi(t2) <= phi_star: dVar <= 0 throughout
    II  phi(t1) >  phi_star >= phi(t2): dVar turns negative after an
        interior crossing t3
    III both above phi_star: dVar >= 0 throughout

(t1, t2) is the window where the mean rate is negative; phi decreases
across it, so phi(t1) >= phi(t2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from ._backend import kernels
from .channel import SIGN_TOL, RateFunctions

_LAM_SINGULAR = 1.0 - 1e-12


class Case(Enum):
    I = "I"
    II = "II"
    III = "III"


def f_function(lam: float) -> float:
    """(lam/2) ln((1+lam)/(1-lam)) - 1 on [0, 1); -1 at 0, diverges at 1."""
    return kernels.f_lambda(lam)


def mean_rate(lam: float, gamma_sum: float) -> float:
    """Time derivative of the mean entropy production (zeta0 = 1).

    gamma_sum is gamma1 + gamma2 at the same instant.  A zero gamma_sum
    gives 0 for any lam (nothing evolves); otherwise lam = 1 is a genuine
    divergence and raises.
    """
    if gamma_sum == 0.0:
        return 0.0
    if lam >= 1.0:
        raise ValueError("mean rate diverges at lam = 1")
    return kernels.mean_rate_prefactor(lam) * gamma_sum


def second_moment_rate(lam: float, d_mean: float) -> float:
    """Time derivative of the second moment, -2(1 + ln((1-lam^2)/4)/2) d_mean."""
    if d_mean == 0.0:
        return 0.0
    return kernels.second_moment_factor(lam) * d_mean


def var_rate(lam: float, d_mean: float) -> float:
    """Time derivative of the variance, 2 f(lam) d_mean."""
    if d_mean == 0.0:
        return 0.0
    return 2.0 * kernels.f_lambda(lam) * d_mean


def solve_x_star(*, xtol: float = 1e-12) -> float:
    """Unique zero of x ln((1+x)/(1-x)) - 2 on (0, 1), near 0.8336."""
    return kernels.bisect(
        lambda x: x * (math.log1p(x) - math.log1p(-x)) - 2.0,
        0.5, 0.99, xtol)


_X_STAR_CACHE: float | None = None


def x_star() -> float:
    """Cached value of solve_x_star()."""
    global _X_STAR_CACHE
    if _X_STAR_CACHE is None:
        _X_STAR_CACHE = solve_x_star()
    return _X_STAR_CACHE


def phi_star() -> float:
    """-ln(x_star)/2, the threshold on phi for the sign of f, near 0.091."""
    return -0.5 * math.log(x_star())


@dataclass(frozen=True)
class RegimeReport:
    case: Case
    phi_t1: float
    phi_t2: float
    phi_star: float
    window: tuple[float, float] | None = None
    t3: float | None = None


def classify_regime(phi_t1: float, phi_t2: float, *,
                    window: tuple[float, float] | None = None,
                    phi: Callable[[float], float] | None = None,
                    t3_xtol: float = 1e-10) -> RegimeReport:
    """Case of a mean-rate negativity window from phi at its endpoints.

    phi values must be nonnegative (completely positive dynamics) and the
    window must be of the standard decreasing-phi form, phi_t1 >= phi_t2.
    Boundary values exactly equal to phi_star count as the f >= 0 side.
    For case II the interior crossing t3 is located by bisection when both
    `window` and the `phi` callable are supplied.
    """
    if phi_t1 < -1e-12 or phi_t2 < -1e-12:
        raise ValueError("negative phi: the dynamics is not completely positive")
    phi_t1 = max(phi_t1, 0.0)
    phi_t2 = max(phi_t2, 0.0)
    ps = phi_star()

    if phi_t1 <= ps and phi_t2 <= ps:
        return RegimeReport(Case.I, phi_t1, phi_t2, ps, window)
    if phi_t1 > ps and phi_t2 > ps:
        return RegimeReport(Case.III, phi_t1, phi_t2, ps, window)
    if phi_t1 > ps >= phi_t2:
        t3 = None
        if window is not None and phi is not None:
            t3 = kernels.bisect(lambda t: phi(t) - ps, window[0], window[1],
                                t3_xtol)
        return RegimeReport(Case.II, phi_t1, phi_t2, ps, window, t3)
    raise ValueError(
        "phi_t1 <= phi_star < phi_t2: window is not of the decreasing-phi form")


@dataclass(frozen=True, slots=True)
class AnalysisPoint:
    """One scanned instant of the moment dynamics."""

    t: float
    lam: float
    phi: float
    gamma_sum: float
    f: float
    mean: float
    var: float
    d_mean: float
    d_var: float
    lambda_singular: bool
    divisibility_flag: int   # 0 CP rates, 1 P-only rates, 2 pair sum negative


def _divisibility_flag(rates: RateFunctions, t: float, tol: float) -> int:
    if rates.min_pair_sum(t) < -tol:
        return 2
    if rates.min_rate(t) < -tol:
        return 1
    return 0


def _fd_mean_var(zeta0: float, phi_t: float, t: float, gsum_fn, delta: float,
                 quad_tol: float) -> tuple[float, float]:
    """Finite-difference moment rates for mixed initial states.

    Central differences of the closed-form moments; falls back to one-sided
    differences when a stencil point leaves the valid lam range (0, 1].
    """
    quad = kernels.adaptive_simpson

    def moments_at(dt: float) -> tuple[float, float] | None:
        if dt >= 0:
            ph = phi_t + quad(gsum_fn, t, t + dt, quad_tol)
        else:
            ph = phi_t - quad(gsum_fn, t + dt, t, quad_tol)
        lam = math.exp(-2.0 * ph)
        if not (0.0 < lam <= 1.0):
            return None
        return kernels.mean_var(zeta0, lam)

    plus = moments_at(delta)
    minus = moments_at(-delta) if t - delta > 0.0 else None
    center = None
    if plus is None or minus is None:
        center = kernels.mean_var(zeta0, math.exp(-2.0 * phi_t))
    if plus is not None and minus is not None:
        return ((plus[0] - minus[0]) / (2.0 * delta),
                (plus[1] - minus[1]) / (2.0 * delta))
    if plus is not None:
        return ((plus[0] - center[0]) / delta, (plus[1] - center[1]) / delta)
    if minus is not None:
        return ((center[0] - minus[0]) / delta, (center[1] - minus[1]) / delta)
    raise ValueError("finite-difference stencil left the valid lam range")


def scan_trajectory(rates: RateFunctions, horizon: float, *,
                    zeta0: float = 1.0, points: int = 2000,
                    quad_tol: float = 1e-10, fd_step: float = 1e-4,
                    sign_tol: float = SIGN_TOL) -> list[AnalysisPoint]:
    """Moment dynamics on a uniform grid over (0, horizon].

    The scan starts at max(1e-6, grid step) rather than 0, where lam = 1
    makes the analytic rates singular; any later point that still sits at
    lam ~ 1 is reported with `lambda_singular` set instead of raising.
    phi is accumulated by per-interval adaptive quadrature.  For zeta0 = 1
    the moment rates use the analytic formulas; for mixed initial states
    they fall back to finite differences of the closed-form moments.
    """
    if horizon <= 0.0:
        raise ValueError(f"horizon {horizon!r} must be positive")
    if points < 2:
        raise ValueError(f"points {points!r} must be at least 2")
    step = horizon / points
    ts = np.linspace(max(1e-6, step), horizon, points)

    gsum_fn = rates.sum12
    tol_i = max(quad_tol / points, 1e-16)
    quad = kernels.adaptive_simpson

    out: list[AnalysisPoint] = []
    phi_acc = 0.0
    prev = 0.0
    pure = zeta0 == 1.0
    for t in ts:
        t = float(t)
        phi_acc += quad(gsum_fn, prev, t, tol_i)
        prev = t
        gs = gsum_fn(t)
        lam = math.exp(-2.0 * phi_acc)
        singular = lam >= _LAM_SINGULAR
        flag = _divisibility_flag(rates, t, sign_tol)

        if 0.0 < lam <= 1.0 or singular:
            lam_eval = min(lam, 1.0)
            mean, var = kernels.mean_var(zeta0, lam_eval)
        else:
            # lam > 1: phi went negative, the map is not CP; no valid state.
            mean = var = math.nan

        if singular:
            fval = math.inf
            if pure:
                if gs == 0.0:
                    d_mean = d_var = 0.0
                else:
                    d_mean = d_var = math.copysign(math.inf, gs)
            else:
                d_mean, d_var = _fd_mean_var(zeta0, phi_acc, t, gsum_fn,
                                             min(fd_step, 0.5 * t), tol_i)
        elif not (0.0 < lam < 1.0):
            fval = d_mean = d_var = math.nan
        elif pure:
            fval = kernels.f_lambda(lam)
            d_mean = kernels.mean_rate_prefactor(lam) * gs
            d_var = 2.0 * fval * d_mean
        else:
            fval = kernels.f_lambda(lam)
            d_mean, d_var = _fd_mean_var(zeta0, phi_acc, t, gsum_fn,
                                         min(fd_step, 0.5 * t), tol_i)

        out.append(AnalysisPoint(t, lam, phi_acc, gs, fval, mean, var,
                                 d_mean, d_var, singular, flag))
    return out


def negativity_windows_from_scan(scan: Sequence[AnalysisPoint],
                                 tol: float = SIGN_TOL) -> list[tuple[float, float]]:
    """Maximal grid windows where d_mean < -tol (no sub-grid refinement)."""
    windows: list[tuple[float, float]] = []
    start = None
    for pt in scan:
        if pt.d_mean < -tol:
            if start is None:
                start = pt.t
            end = pt.t
        elif start is not None:
            windows.append((start, end))
            start = None
    if start is not None:
        windows.append((start, end))
    return windows
