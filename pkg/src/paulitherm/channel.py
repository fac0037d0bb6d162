"""Time-dependent Pauli channels on a single qubit.

The channel at time t is rho -> sum_a p_a(t) sigma_a rho sigma_a with
p_0(0) = 1.  On Bloch components it acts diagonally with eigenvalues

    lam1 = 1 - 2 (p2 + p3),  lam2 = 1 - 2 (p1 + p3),  lam3 = 1 - 2 (p1 + p2).

Probabilities and the generator rates gamma_a(t) are linked through the
pairwise sums: for i != j,

    1 - 2 (p_i + p_j) = exp(-2 * integral_0^t (gamma_i + gamma_j) ds),

which this module inverts in both directions.  Complete positivity of the
frozen-time map is all p_a >= 0; CP divisibility of the family is all
gamma_a >= 0; P divisibility is all pairwise rate sums >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Sequence

import numpy as np

from ._backend import kernels
from .errors import SingularChannelError

# A rate more negative than this counts as a genuine sign violation.
SIGN_TOL = 1e-9
# Window endpoints are refined by bisection to this width.
WINDOW_XTOL = 1e-10

RateFunction = Callable[[float], float]


@dataclass(frozen=True)
class RateFunctions:
    """The three generator rates gamma_1, gamma_2, gamma_3 as callables of t."""

    gamma1: RateFunction
    gamma2: RateFunction
    gamma3: RateFunction

    @classmethod
    def constant(cls, g1: float, g2: float, g3: float) -> "RateFunctions":
        return cls(lambda t: g1, lambda t: g2, lambda t: g3)

    def values(self, t: float) -> tuple[float, float, float]:
        return self.gamma1(t), self.gamma2(t), self.gamma3(t)

    def pair_sums(self, t: float) -> tuple[float, float, float]:
        """(gamma1+gamma2, gamma1+gamma3, gamma2+gamma3) at time t."""
        g1, g2, g3 = self.values(t)
        return g1 + g2, g1 + g3, g2 + g3

    def sum12(self, t: float) -> float:
        return self.gamma1(t) + self.gamma2(t)

    def min_rate(self, t: float) -> float:
        return min(self.values(t))

    def min_pair_sum(self, t: float) -> float:
        return min(self.pair_sums(t))


@dataclass(frozen=True, slots=True)
class ChannelEigenvalues:
    """Bloch-component contraction factors of the channel at a fixed time."""

    lam1: float
    lam2: float
    lam3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return self.lam1, self.lam2, self.lam3


class CPCheck(NamedTuple):
    ok: bool
    violations: tuple[int, ...]   # indices into (p0, p1, p2, p3)


@dataclass(frozen=True, slots=True)
class ProbabilityVector:
    """Pauli mixing weights (p0, p1, p2, p3) of the channel at a fixed time.

    Entries may be negative (the vector can describe a non-CP point for
    diagnostics) but must sum to 1.
    """

    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self) -> None:
        s = self.p0 + self.p1 + self.p2 + self.p3
        if abs(s - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {s!r}, not 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return self.p0, self.p1, self.p2, self.p3

    def pair_sums(self) -> tuple[float, float, float]:
        """(p1+p2, p1+p3, p2+p3)."""
        return self.p1 + self.p2, self.p1 + self.p3, self.p2 + self.p3

    def eigenvalues(self) -> ChannelEigenvalues:
        s12, s13, s23 = self.pair_sums()
        return ChannelEigenvalues(1.0 - 2.0 * s23, 1.0 - 2.0 * s13,
                                  1.0 - 2.0 * s12)

    def is_cp(self, tol: float = SIGN_TOL) -> bool:
        return check_cp(self, tol=tol).ok


def check_cp(p: ProbabilityVector, tol: float = SIGN_TOL) -> CPCheck:
    """Complete positivity of the frozen-time map: all weights >= -tol."""
    bad = tuple(i for i, v in enumerate(p.as_tuple()) if v < -tol)
    return CPCheck(not bad, bad)


def apply_channel(eigs: ChannelEigenvalues, state) -> "QubitState":
    """Contract each Bloch component of `state` by its channel eigenvalue."""
    from .qubit import QubitState

    return QubitState(eigs.lam1 * state.rx, eigs.lam2 * state.ry,
                      eigs.lam3 * state.rz)


def _pair_integrals(rates: RateFunctions, t: float, tol: float,
                    max_depth: int) -> tuple[float, float, float]:
    quad = kernels.adaptive_simpson
    a12 = quad(lambda s: rates.gamma1(s) + rates.gamma2(s), 0.0, t, tol, max_depth)
    a13 = quad(lambda s: rates.gamma1(s) + rates.gamma3(s), 0.0, t, tol, max_depth)
    a23 = quad(lambda s: rates.gamma2(s) + rates.gamma3(s), 0.0, t, tol, max_depth)
    return a12, a13, a23


def _probabilities_from_pair_integrals(a12: float, a13: float,
                                       a23: float) -> ProbabilityVector:
    s12 = 0.5 * (1.0 - math.exp(-2.0 * a12))
    s13 = 0.5 * (1.0 - math.exp(-2.0 * a13))
    s23 = 0.5 * (1.0 - math.exp(-2.0 * a23))
    p1 = 0.5 * (s12 + s13 - s23)
    p2 = 0.5 * (s12 + s23 - s13)
    p3 = 0.5 * (s13 + s23 - s12)
    return ProbabilityVector(1.0 - p1 - p2 - p3, p1, p2, p3)


def probabilities_from_rates(rates: RateFunctions, t: float, *,
                             tol: float = 1e-10,
                             max_depth: int = 40) -> ProbabilityVector:
    """Mixing weights at time t from the generator rates.

    Integrates the three pairwise rate sums from 0 to t by adaptive Simpson
    quadrature and inverts the exponential pair-sum relations.
    """
    if t < 0.0:
        raise ValueError(f"time {t!r} must be nonnegative")
    if t == 0.0:
        return ProbabilityVector(1.0, 0.0, 0.0, 0.0)
    return _probabilities_from_pair_integrals(*_pair_integrals(rates, t, tol, max_depth))


@dataclass(frozen=True)
class ProbabilityTrajectory:
    """Mixing weights sampled on a time grid (rows of `probs` match `times`)."""

    times: np.ndarray
    probs: np.ndarray   # shape (n, 4)

    def __post_init__(self) -> None:
        if self.times.ndim != 1 or self.probs.shape != (self.times.size, 4):
            raise ValueError("trajectory arrays have inconsistent shapes")
        if self.times.size >= 2 and not np.all(np.diff(self.times) > 0.0):
            raise ValueError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return int(self.times.size)

    def at(self, i: int) -> ProbabilityVector:
        p0, p1, p2, p3 = (float(v) for v in self.probs[i])
        return ProbabilityVector(p0, p1, p2, p3)

    @classmethod
    def from_rates(cls, rates: RateFunctions, times: Sequence[float], *,
                   tol: float = 1e-10,
                   max_depth: int = 40) -> "ProbabilityTrajectory":
        """Sample the weights on `times` with one cumulative quadrature pass.

        The pairwise integrals are accumulated interval by interval, with the
        absolute tolerance budget split across intervals so the total error
        stays at `tol`.
        """
        ts = np.asarray(times, dtype=float)
        if ts.ndim != 1 or ts.size == 0:
            raise ValueError("times must be a nonempty 1-d sequence")
        if ts[0] < 0.0 or (ts.size >= 2 and not np.all(np.diff(ts) > 0.0)):
            raise ValueError("times must be nonnegative and strictly increasing")

        pair_fns = (
            lambda s: rates.gamma1(s) + rates.gamma2(s),
            lambda s: rates.gamma1(s) + rates.gamma3(s),
            lambda s: rates.gamma2(s) + rates.gamma3(s),
        )
        n = ts.size
        tol_i = max(tol / n, 1e-16)
        quad = kernels.adaptive_simpson
        probs = np.empty((n, 4))
        acc = [0.0, 0.0, 0.0]
        prev = 0.0
        for i, t in enumerate(ts):
            for j, fn in enumerate(pair_fns):
                acc[j] += quad(fn, prev, float(t), tol_i, max_depth)
            prev = float(t)
            p = _probabilities_from_pair_integrals(*acc)
            probs[i] = p.as_tuple()
        return cls(ts, probs)


def rates_from_probabilities(traj: ProbabilityTrajectory,
                             t: float) -> tuple[float, float, float]:
    """Generator rates at the trajectory sample nearest to t.

    Differentiates the pairwise probability sums by central differences on
    neighbouring samples, so t must fall strictly inside the sampled range
    and the sampling must be dense enough for the difference quotient.
    """
    times = traj.times
    i = int(np.argmin(np.abs(times - t)))
    if i == 0 or i == times.size - 1:
        raise ValueError(
            f"t={t!r} resolves to a boundary sample; rates need interior points")

    # u = (p_i + p_j) for the three pairs, at the previous/current/next sample
    rows = traj.probs[i - 1:i + 2]
    u = np.stack([rows[:, 1] + rows[:, 2], rows[:, 1] + rows[:, 3],
                  rows[:, 2] + rows[:, 3]], axis=0)
    dt = float(times[i + 1] - times[i - 1])
    g_pair = []
    for k in range(3):
        denom = 1.0 - 2.0 * float(u[k, 1])
        if denom <= 1e-10:
            raise SingularChannelError(
                f"pair sum {float(u[k, 1])!r} at t={float(times[i])!r} leaves "
                "the invertibility window")
        g_pair.append((float(u[k, 2]) - float(u[k, 0])) / dt / denom)
    g12, g13, g23 = g_pair
    g1 = 0.5 * (g12 + g13 - g23)
    g2 = 0.5 * (g12 + g23 - g13)
    g3 = 0.5 * (g13 + g23 - g12)
    return g1, g2, g3


class Divisibility(Enum):
    CP_DIVISIBLE = "CPDivisible"
    P_DIVISIBLE_ONLY = "PDivisibleOnly"
    ESSENTIALLY_NON_MARKOVIAN = "EssentiallyNonMarkovian"


@dataclass(frozen=True)
class DivisibilityReport:
    kind: Divisibility
    rate_windows: tuple[tuple[float, float], ...] = field(default=())
    pair_windows: tuple[tuple[float, float], ...] = field(default=())


def _violation_windows(fn: Callable[[float], float], grid: np.ndarray,
                       vals: np.ndarray, tol: float,
                       xtol: float) -> tuple[tuple[float, float], ...]:
    """Maximal windows where fn < -tol, endpoints refined by bisection."""
    neg = vals < -tol
    windows: list[tuple[float, float]] = []
    i = 0
    n = grid.size
    h = lambda t: fn(t) + tol
    while i < n:
        if not neg[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and neg[j + 1]:
            j += 1
        left = float(grid[i])
        if i > 0:
            left = kernels.bisect(h, float(grid[i - 1]), float(grid[i]), xtol)
        right = float(grid[j])
        if j + 1 < n:
            right = kernels.bisect(h, float(grid[j]), float(grid[j + 1]), xtol)
        windows.append((left, right))
        i = j + 1
    return tuple(windows)


def classify_divisibility(rates: RateFunctions, grid: Sequence[float], *,
                          tol: float = SIGN_TOL,
                          xtol: float = WINDOW_XTOL) -> DivisibilityReport:
    """Divisibility class of the rate family over the given time grid.

    CP-divisible when every rate stays >= -tol; P-divisible-only when some
    rate dips below but all pairwise sums stay >= -tol; essentially
    non-Markovian when a pairwise sum itself turns negative.  Violating
    windows are maximal sign-violation intervals with bisection-refined
    endpoints.
    """
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size < 2:
        raise ValueError("grid must contain at least two times")
    if g[0] != 0.0 or not np.all(np.diff(g) > 0.0):
        raise ValueError("grid must start at 0 and increase strictly")

    min_rate_vals = np.array([rates.min_rate(float(t)) for t in g])
    min_pair_vals = np.array([rates.min_pair_sum(float(t)) for t in g])
    rate_windows = _violation_windows(rates.min_rate, g, min_rate_vals, tol, xtol)
    pair_windows = _violation_windows(rates.min_pair_sum, g, min_pair_vals, tol, xtol)

    if pair_windows:
        kind = Divisibility.ESSENTIALLY_NON_MARKOVIAN
    elif rate_windows:
        kind = Divisibility.P_DIVISIBLE_ONLY
    else:
        kind = Divisibility.CP_DIVISIBLE
    return DivisibilityReport(kind, rate_windows, pair_windows)


def make_grid(horizon: float, points: int = 2000) -> np.ndarray:
    """Uniform grid [0, horizon] for divisibility scans."""
    if horizon <= 0.0:
        raise ValueError(f"horizon {horizon!r} must be positive")
    if points < 2:
        raise ValueError(f"points {points!r} must be at least 2")
    return np.linspace(0.0, horizon, points)
