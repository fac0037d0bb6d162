"""Single-qubit states in the Bloch representation, and their entropies.

A state is rho = (1 + r . sigma) / 2 with |r| <= 1.  Eigenvalues of rho are
(1 +- |r|) / 2, so every entropy here reduces to scalar functions of the
Bloch vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels

_NORM_SLACK = 1e-12


def xlnx(x: float) -> float:
    """x ln x on [0, 1], with 0 ln 0 = 0 and 1e-12 boundary clamping."""
    return kernels.xlnx(x)


@dataclass(frozen=True, slots=True)
class QubitState:
    """Bloch vector (rx, ry, rz) of a qubit density matrix."""

    rx: float = 0.0
    ry: float = 0.0
    rz: float = 0.0

    def __post_init__(self) -> None:
        n2 = self.rx * self.rx + self.ry * self.ry + self.rz * self.rz
        if n2 > 1.0 + _NORM_SLACK:
            raise ValueError(
                f"Bloch vector norm {math.sqrt(n2)!r} exceeds 1: not a state")

    @classmethod
    def from_zeta(cls, zeta0: float) -> "QubitState":
        """Diagonal state with populations ((1+zeta0)/2, (1-zeta0)/2)."""
        return cls(0.0, 0.0, zeta0)

    @classmethod
    def z_up(cls) -> "QubitState":
        return cls(0.0, 0.0, 1.0)

    @classmethod
    def z_down(cls) -> "QubitState":
        return cls(0.0, 0.0, -1.0)

    @classmethod
    def maximally_mixed(cls) -> "QubitState":
        return cls(0.0, 0.0, 0.0)

    @property
    def bloch_norm(self) -> float:
        n = math.sqrt(self.rx * self.rx + self.ry * self.ry + self.rz * self.rz)
        return min(n, 1.0)

    def is_diagonal(self, tol: float = 1e-12) -> bool:
        """True when the state is diagonal in the sigma_z basis."""
        return abs(self.rx) <= tol and abs(self.ry) <= tol

    def populations(self) -> tuple[float, float]:
        """Diagonal entries of rho in the sigma_z basis."""
        return 0.5 * (1.0 + self.rz), 0.5 * (1.0 - self.rz)


def von_neumann_entropy(state: QubitState) -> float:
    """Entropy (nats) of the state: 0 for pure states, ln 2 at the center."""
    r = state.bloch_norm
    return -kernels.xlnx(0.5 * (1.0 + r)) - kernels.xlnx(0.5 * (1.0 - r))


def relative_entropy_diagonal(rho: QubitState, sigma: QubitState) -> float:
    """Relative entropy S(rho || sigma) for sigma_z-diagonal states.

    Returns math.inf when sigma lacks support where rho has weight.
    Nonnegative by Klein's inequality; tiny negative rounding residue is
    clamped to 0.
    """
    if not rho.is_diagonal() or not sigma.is_diagonal():
        raise ValueError("relative_entropy_diagonal requires sigma_z-diagonal states")
    total = 0.0
    for q, s in zip(rho.populations(), sigma.populations()):
        if q <= 0.0:
            continue
        if s <= 0.0:
            return math.inf
        total += q * (math.log(q) - math.log(s))
    if -_NORM_SLACK < total < 0.0:
        total = 0.0
    return total
