"""Pure-Python scalar kernels.

These are the hot inner routines of the package: entropy terms, the
measurement-statistics moment sum, adaptive Simpson quadrature and bisection.
`paulitherm._kernels_c` is a compiled twin with identical semantics;
`paulitherm._backend` selects one of the two at import time.  Keep the two
implementations in lockstep (tests/test_backends.py checks parity).
"""

from __future__ import annotations

import math

from .errors import ConvergenceError, QuadratureError

BACKEND_NAME = "python"

# Inputs within this distance of a domain boundary are clamped onto it;
# anything further out raises.
DOMAIN_SLACK = 1e-12


def xlnx(x: float) -> float:
    """x * ln(x) on [0, 1] with the continuous-extension convention 0 ln 0 = 0."""
    if x <= 0.0:
        if x < -DOMAIN_SLACK:
            raise ValueError(f"xlnx: argument {x!r} below 0 beyond tolerance")
        return 0.0
    if x >= 1.0:
        if x > 1.0 + DOMAIN_SLACK:
            raise ValueError(f"xlnx: argument {x!r} above 1 beyond tolerance")
        return 0.0
    return x * math.log(x)


def binary_entropy(p: float) -> float:
    """Shannon entropy (nats) of a two-outcome distribution (p, 1-p)."""
    return -xlnx(p) - xlnx(1.0 - p)


def f_lambda(lam: float) -> float:
    """Variance-gain factor (lam/2) ln((1+lam)/(1-lam)) - 1 for 0 <= lam < 1.

    Strictly increasing, equal to -1 at lam = 0 and diverging as lam -> 1.
    Its sign decides whether the entropy-production variance moves with or
    against the mean.
    """
    if lam < 0.0 or lam >= 1.0:
        raise ValueError(f"f_lambda: lam={lam!r} outside [0, 1)")
    return 0.5 * lam * (math.log1p(lam) - math.log1p(-lam)) - 1.0


def mean_rate_prefactor(lam: float) -> float:
    """lam * ln((1+lam)/(1-lam)); multiplies the dephasing rate sum."""
    if lam <= 0.0 or lam >= 1.0:
        raise ValueError(f"mean_rate_prefactor: lam={lam!r} outside (0, 1)")
    return lam * (math.log1p(lam) - math.log1p(-lam))


def second_moment_factor(lam: float) -> float:
    """-2 (1 + ln((1-lam^2)/4) / 2); multiplies the mean rate."""
    if lam <= 0.0 or lam >= 1.0:
        raise ValueError(f"second_moment_factor: lam={lam!r} outside (0, 1)")
    return -2.0 * (1.0 + 0.5 * math.log(0.25 * (1.0 - lam * lam)))


def moment_closed(ell: int, zeta0: float, lam: float) -> float:
    """Closed-form ell-th moment of the two-point entropy-production variable.

    Binomial sum over traces of powers of the log populations before and
    after the channel.  Zero populations follow the 0 ln 0 = 0 convention:
    a term is dropped whenever its population weight vanishes.  ell is
    capped at 12; beyond that the alternating binomial sum loses too many
    digits to be trusted in double precision.
    """
    if ell < 1 or ell > 12:
        raise ValueError(f"moment_closed: ell={ell!r} outside 1..12")
    if abs(zeta0) > 1.0 + DOMAIN_SLACK:
        raise ValueError(f"moment_closed: zeta0={zeta0!r} outside [-1, 1]")
    if lam <= 0.0 or lam > 1.0 + DOMAIN_SLACK:
        raise ValueError(f"moment_closed: lam={lam!r} outside (0, 1]")

    q0 = 0.5 * (1.0 + zeta0)
    q1 = 0.5 * (1.0 - zeta0)
    zt = lam * zeta0
    r0 = 0.5 * (1.0 + zt)
    r1 = 0.5 * (1.0 - zt)
    same = 0.5 * (1.0 + lam)   # P(outcome repeats)
    flip = 0.5 * (1.0 - lam)

    lnq0 = math.log(q0) if q0 > 0.0 else 0.0
    lnq1 = math.log(q1) if q1 > 0.0 else 0.0
    lnr0 = math.log(r0) if r0 > 0.0 else 0.0
    lnr1 = math.log(r1) if r1 > 0.0 else 0.0

    total = 0.0
    for n in range(ell + 1):
        w0 = q0 * lnq0 ** n if q0 > 0.0 else 0.0
        w1 = q1 * lnq1 ** n if q1 > 0.0 else 0.0
        c0 = same * w0 + flip * w1
        c1 = flip * w0 + same * w1
        p = ell - n
        term = 0.0
        if c0 != 0.0:
            term += (lnr0 ** p if p else 1.0) * c0
        if c1 != 0.0:
            term += (lnr1 ** p if p else 1.0) * c1
        sgn = -1.0 if (p & 1) else 1.0
        total += sgn * math.comb(ell, n) * term
    return total


def mean_var(zeta0: float, lam: float) -> tuple[float, float]:
    """(mean, variance) of the two-point entropy-production distribution."""
    m1 = moment_closed(1, zeta0, lam)
    m2 = moment_closed(2, zeta0, lam)
    var = m2 - m1 * m1
    if var < 0.0:
        if var < -DOMAIN_SLACK:
            raise ValueError(f"mean_var: negative variance {var!r}")
        var = 0.0
    return m1, var


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10,
                     max_depth: int = 40) -> float:
    """Integrate f over [a, b] by adaptive Simpson with Richardson correction.

    `tol` is an absolute tolerance on the whole interval; it halves with each
    split.  Raises QuadratureError once a panel exceeds `max_depth` splits.
    """
    if a == b:
        return 0.0
    fa = float(f(a))
    fm = float(f(0.5 * (a + b)))
    fb = float(f(b))
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    return _simpson_panel(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_panel(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = float(f(lm))
    frm = float(f(rm))
    left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    err = left + right - whole
    if abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"adaptive Simpson did not converge on [{a!r}, {b!r}]")
    half = 0.5 * tol
    return (_simpson_panel(f, a, m, fa, flm, fm, left, half, depth - 1)
            + _simpson_panel(f, m, b, fm, frm, fb, right, half, depth - 1))


def bisect(f, a: float, b: float, xtol: float = 1e-12,
           max_iter: int = 256) -> float:
    """Root of f on [a, b] by bisection; f(a) and f(b) must differ in sign."""
    fa = float(f(a))
    fb = float(f(b))
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError(f"bisect: no sign change on [{a!r}, {b!r}]")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if abs(b - a) <= xtol or m == a or m == b:
            return m
        fm = float(f(m))
        if fm == 0.0:
            return m
        if (fm > 0.0) == (fb > 0.0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    raise ConvergenceError(f"bisect: no convergence after {max_iter} iterations")
