"""Two-point sigma_z measurement statistics of a Pauli channel.

Both measurements are projective in the sigma_z basis: one before the
evolution, one after.  Because the channel treats the z component linearly,
the whole joint distribution is set by two numbers: the initial population
bias zeta0 = <sigma_z> and the z-sector contraction factor lam of the
channel.  The stochastic entropy production of a record (k, m) is

    dsigma = ln p_in(k) - ln p_fin(m),

a random variable with at most four atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .qubit import QubitState

_SLACK = 1e-12


@dataclass(frozen=True)
class TPMSetup:
    """Initial state plus the z contraction factor of the channel.

    Only the sigma_z populations of `initial_state` matter: the first
    measurement removes coherences.  `lam` must lie in (0, 1] (invertible,
    completely positive z sector).
    """

    initial_state: QubitState
    lam: float

    def __post_init__(self) -> None:
        if not (0.0 < self.lam <= 1.0 + _SLACK):
            raise ValueError(f"lam={self.lam!r} outside (0, 1]")
        if self.lam > 1.0:
            object.__setattr__(self, "lam", 1.0)

    @classmethod
    def from_zeta(cls, zeta0: float, lam: float) -> "TPMSetup":
        return cls(QubitState.from_zeta(zeta0), lam)

    @property
    def zeta0(self) -> float:
        return self.initial_state.rz

    def initial_populations(self) -> tuple[float, float]:
        return self.initial_state.populations()

    def final_populations(self) -> tuple[float, float]:
        zt = self.lam * self.zeta0
        return 0.5 * (1.0 + zt), 0.5 * (1.0 - zt)


def joint_distribution(setup: TPMSetup) -> np.ndarray:
    """2x2 array of record probabilities; rows are the first outcome k,
    columns the second outcome m.

    p(k, m) = p_in(k) * (1 + (-1)^(k xor m) lam) / 2.
    """
    q0, q1 = setup.initial_populations()
    same = 0.5 * (1.0 + setup.lam)
    flip = 0.5 * (1.0 - setup.lam)
    return np.array([[q0 * same, q0 * flip],
                     [q1 * flip, q1 * same]])


@dataclass(frozen=True)
class EntropyDistribution:
    """Atomic distribution of the entropy-production variable.

    `atoms` is a tuple of (value, weight) pairs sorted by value; zero-weight
    records are omitted and numerically coincident values are merged.
    """

    atoms: tuple[tuple[float, float], ...]
    zeta0: float
    lam: float
    t: float | None = None

    def __post_init__(self) -> None:
        w = sum(weight for _, weight in self.atoms)
        if abs(w - 1.0) > 1e-12:
            raise ValueError(f"atom weights sum to {w!r}, not 1")
        if any(weight <= 0.0 for _, weight in self.atoms):
            raise ValueError("atom weights must be positive")

    def moment(self, ell: int) -> float:
        if ell < 0:
            raise ValueError("moment order must be nonnegative")
        return sum(w * v ** ell for v, w in self.atoms)

    def mean(self) -> float:
        return self.moment(1)

    def variance(self) -> float:
        m = self.mean()
        var = self.moment(2) - m * m
        return 0.0 if -_SLACK < var < 0.0 else var

    def exp_minus_sum(self) -> float:
        """sum_atoms w exp(-value).

        Informational: the two-point scheme can reach records in one time
        direction that the reverse scheme cannot, so this sum is generally
        not 1 and is deliberately not asserted anywhere.
        """
        return sum(w * math.exp(-v) for v, w in self.atoms)


def entropy_distribution(setup: TPMSetup, *, t: float | None = None) -> EntropyDistribution:
    """Entropy-production atoms for the given setup.

    Records with zero probability are dropped (0 ln 0 = 0 convention); the
    remaining values are finite because a reachable second outcome has
    positive final probability.
    """
    q = setup.initial_populations()
    r = setup.final_populations()
    same = 0.5 * (1.0 + setup.lam)
    flip = 0.5 * (1.0 - setup.lam)

    raw: list[tuple[float, float]] = []
    for k in (0, 1):
        if q[k] <= 0.0:
            continue
        lnq = math.log(q[k])
        for m in (0, 1):
            w = q[k] * (same if m == k else flip)
            if w <= 0.0:
                continue
            raw.append((lnq - math.log(r[m]), w))
    raw.sort()

    merged: list[tuple[float, float]] = []
    for v, w in raw:
        if merged and abs(v - merged[-1][0]) <= 1e-12 * max(1.0, abs(v)):
            pv, pw = merged[-1]
            tot = pw + w
            merged[-1] = ((pv * pw + v * w) / tot, tot)
        else:
            merged.append((v, w))
    return EntropyDistribution(tuple(merged), setup.zeta0, setup.lam, t)


def moment_closed_form(ell: int, setup: TPMSetup) -> float:
    """ell-th moment from the closed-form binomial trace sum (ell <= 12)."""
    return kernels.moment_closed(ell, setup.zeta0, setup.lam)


def moment_oracle(ell: int, setup: TPMSetup) -> float:
    """ell-th moment by direct enumeration of the four measurement records.

    Deliberately independent of the closed form and of the kernel backend:
    this is the brute-force reference the closed form is checked against.
    """
    if ell < 1:
        raise ValueError(f"moment order {ell!r} must be >= 1")
    q = setup.initial_populations()
    zt = setup.lam * setup.zeta0
    r = (0.5 * (1.0 + zt), 0.5 * (1.0 - zt))
    same = 0.5 * (1.0 + setup.lam)
    flip = 0.5 * (1.0 - setup.lam)
    total = 0.0
    for k in (0, 1):
        if q[k] <= 0.0:
            continue
        lnq = math.log(q[k])
        for m in (0, 1):
            w = q[k] * (same if m == k else flip)
            if w <= 0.0:
                continue
            total += w * (lnq - math.log(r[m])) ** ell
    return total


def mean_and_variance(setup: TPMSetup) -> tuple[float, float]:
    """(mean, variance) of the entropy production, via the closed form."""
    return kernels.mean_var(setup.zeta0, setup.lam)
