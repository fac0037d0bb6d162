# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels.

Twin of `paulitherm._kernels_py` with identical semantics; see that module
for the reference implementations and documentation.  `paulitherm._backend`
picks this version when the extension built.  Keep the two in lockstep
(tests/test_backends.py checks parity).
"""

from libc.math cimport fabs, log, log1p, pow

from .errors import ConvergenceError, QuadratureError

BACKEND_NAME = "cython"

DOMAIN_SLACK = 1e-12

cdef double _SLACK = 1e-12


cpdef double xlnx(double x) except? -1e308:
    """x * ln(x) on [0, 1] with the continuous-extension convention 0 ln 0 = 0."""
    if x <= 0.0:
        if x < -_SLACK:
            raise ValueError(f"xlnx: argument {x!r} below 0 beyond tolerance")
        return 0.0
    if x >= 1.0:
        if x > 1.0 + _SLACK:
            raise ValueError(f"xlnx: argument {x!r} above 1 beyond tolerance")
        return 0.0
    return x * log(x)


cpdef double binary_entropy(double p) except? -1e308:
    """Shannon entropy (nats) of a two-outcome distribution (p, 1-p)."""
    return -xlnx(p) - xlnx(1.0 - p)


cpdef double f_lambda(double lam) except? -1e308:
    """Variance-gain factor (lam/2) ln((1+lam)/(1-lam)) - 1 for 0 <= lam < 1."""
    if lam < 0.0 or lam >= 1.0:
        raise ValueError(f"f_lambda: lam={lam!r} outside [0, 1)")
    return 0.5 * lam * (log1p(lam) - log1p(-lam)) - 1.0


cpdef double mean_rate_prefactor(double lam) except? -1e308:
    """lam * ln((1+lam)/(1-lam)); multiplies the dephasing rate sum."""
    if lam <= 0.0 or lam >= 1.0:
        raise ValueError(f"mean_rate_prefactor: lam={lam!r} outside (0, 1)")
    return lam * (log1p(lam) - log1p(-lam))


cpdef double second_moment_factor(double lam) except? -1e308:
    """-2 (1 + ln((1-lam^2)/4) / 2); multiplies the mean rate."""
    if lam <= 0.0 or lam >= 1.0:
        raise ValueError(f"second_moment_factor: lam={lam!r} outside (0, 1)")
    return -2.0 * (1.0 + 0.5 * log(0.25 * (1.0 - lam * lam)))


cdef double _binomial(int n, int k):
    # exact for n <= 12: products stay far below 2^53
    cdef double num = 1.0
    cdef int i
    if k > n - k:
        k = n - k
    for i in range(k):
        num = num * (n - i) / (i + 1)
    return num


cpdef double moment_closed(int ell, double zeta0, double lam) except? -1e308:
    """Closed-form ell-th moment of the two-point entropy-production variable.

    Same alternating binomial trace sum as the Python twin, with the
    0 ln 0 = 0 convention and the ell <= 12 precision cap.
    """
    if ell < 1 or ell > 12:
        raise ValueError(f"moment_closed: ell={ell!r} outside 1..12")
    if fabs(zeta0) > 1.0 + _SLACK:
        raise ValueError(f"moment_closed: zeta0={zeta0!r} outside [-1, 1]")
    if lam <= 0.0 or lam > 1.0 + _SLACK:
        raise ValueError(f"moment_closed: lam={lam!r} outside (0, 1]")

    cdef double q0 = 0.5 * (1.0 + zeta0)
    cdef double q1 = 0.5 * (1.0 - zeta0)
    cdef double zt = lam * zeta0
    cdef double r0 = 0.5 * (1.0 + zt)
    cdef double r1 = 0.5 * (1.0 - zt)
    cdef double same = 0.5 * (1.0 + lam)
    cdef double flip = 0.5 * (1.0 - lam)

    cdef double lnq0 = log(q0) if q0 > 0.0 else 0.0
    cdef double lnq1 = log(q1) if q1 > 0.0 else 0.0
    cdef double lnr0 = log(r0) if r0 > 0.0 else 0.0
    cdef double lnr1 = log(r1) if r1 > 0.0 else 0.0

    cdef double total = 0.0
    cdef double w0, w1, c0, c1, term, sgn
    cdef int n, p
    for n in range(ell + 1):
        w0 = q0 * pow(lnq0, n) if q0 > 0.0 else 0.0
        w1 = q1 * pow(lnq1, n) if q1 > 0.0 else 0.0
        c0 = same * w0 + flip * w1
        c1 = flip * w0 + same * w1
        p = ell - n
        term = 0.0
        if c0 != 0.0:
            term += (pow(lnr0, p) if p else 1.0) * c0
        if c1 != 0.0:
            term += (pow(lnr1, p) if p else 1.0) * c1
        sgn = -1.0 if (p & 1) else 1.0
        total += sgn * _binomial(ell, n) * term
    return total


def mean_var(double zeta0, double lam):
    """(mean, variance) of the two-point entropy-production distribution."""
    cdef double m1 = moment_closed(1, zeta0, lam)
    cdef double m2 = moment_closed(2, zeta0, lam)
    cdef double var = m2 - m1 * m1
    if var < 0.0:
        if var < -_SLACK:
            raise ValueError(f"mean_var: negative variance {var!r}")
        var = 0.0
    return m1, var


def adaptive_simpson(f, double a, double b, double tol=1e-10,
                     int max_depth=40):
    """Integrate f over [a, b] by adaptive Simpson with Richardson correction.

    `tol` is an absolute tolerance on the whole interval; it halves with each
    split.  Raises QuadratureError once a panel exceeds `max_depth` splits.
    """
    if a == b:
        return 0.0
    cdef double fa = <double> f(a)
    cdef double fm = <double> f(0.5 * (a + b))
    cdef double fb = <double> f(b)
    cdef double whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    return _simpson_panel(f, a, b, fa, fm, fb, whole, tol, max_depth)


cdef double _simpson_panel(f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol,
                           int depth) except? -1e308:
    cdef double m = 0.5 * (a + b)
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = <double> f(lm)
    cdef double frm = <double> f(rm)
    cdef double left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    cdef double right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    cdef double err = left + right - whole
    if fabs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"adaptive Simpson did not converge on [{a!r}, {b!r}]")
    cdef double half = 0.5 * tol
    return (_simpson_panel(f, a, m, fa, flm, fm, left, half, depth - 1)
            + _simpson_panel(f, m, b, fm, frm, fb, right, half, depth - 1))


def bisect(f, double a, double b, double xtol=1e-12, int max_iter=256):
    """Root of f on [a, b] by bisection; f(a) and f(b) must differ in sign."""
    cdef double fa = <double> f(a)
    cdef double fb = <double> f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError(f"bisect: no sign change on [{a!r}, {b!r}]")
    cdef double m, fm
    cdef int i
    for i in range(max_iter):
        m = 0.5 * (a + b)
        if fabs(b - a) <= xtol or m == a or m == b:
            return m
        fm = <double> f(m)
        if fm == 0.0:
            return m
        if (fm > 0.0) == (fb > 0.0):
            b = m
            fb = fm
        else:
            a = m
            fa = fm
    raise ConvergenceError(f"bisect: no convergence after {max_iter} iterations")
