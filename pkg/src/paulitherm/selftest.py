"""Built-in acceptance checks.

Each check is self-contained, runs in seconds, and reports a one-line
detail string.  `paulitherm selftest` runs all of them; the test suite
wraps them one per test so failures are individually visible.

Note on `regime_label_order`: the required label sequence (I, II, III)
for alpha = (0.31, 0.38, 0.45) at beta = 0.23 contradicts the threshold
rules the classifier implements (phi at the window endpoints against
phi_star), which yield (III, II, I).  The classifier follows the rules,
so that check fails by design; `regime_variance_patterns` verifies the
variance behaviour actually matches whichever case is computed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .channel import (ProbabilityTrajectory, RateFunctions,
                      rates_from_probabilities)
from .example import (ExampleParams, beta_bar, classify_example,
                      default_rate_split, gamma_sum, negativity_window,
                      phi_closed, z_max)
from .reversibility import (Case, f_function, mean_rate, scan_trajectory,
                            second_moment_rate, solve_x_star, var_rate)
from .tpm import (TPMSetup, entropy_distribution, mean_and_variance,
                  moment_closed_form, moment_oracle)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _timed(fn: Callable[[], float]) -> tuple[float, float]:
    t0 = time.perf_counter()
    val = fn()
    return val, time.perf_counter() - t0


def check_universal_constants() -> CheckResult:
    (xs, dt1) = _timed(solve_x_star)
    (zm, dt2) = _timed(z_max)
    (bb, dt3) = _timed(beta_bar)
    ps = -0.5 * math.log(xs)
    targets = ((xs, 0.8336, 5e-4), (ps, 0.091, 5e-4),
               (zm, 1.25, 0.01), (bb, 0.20, 0.01))
    within = all(abs(val - ref) <= tol for val, ref, tol in targets)
    slowest = max(dt1, dt2, dt3)
    passed = within and slowest < 1e-3
    detail = (f"x_star={xs:.10f} phi_star={ps:.10f} z_max={zm:.10f} "
              f"beta_bar={bb:.10f} slowest_solve={slowest * 1e6:.0f}us")
    return CheckResult("universal_constants", passed, detail)


def check_window_endpoints() -> CheckResult:
    beta = 0.23
    windows = {}
    for alpha in (0.31, 0.38, 0.45):
        win = negativity_window(ExampleParams(alpha, beta))
        if win is None:
            return CheckResult("window_endpoints", False,
                               f"no negativity window at alpha={alpha}")
        windows[alpha] = win
    lo = max(w[0] for w in windows.values())
    hi = min(w[1] for w in windows.values())
    checks = (abs(windows[0.31][0] - 1.43) <= 0.01,
              abs(windows[0.45][1] - 2.28) <= 0.01,
              abs(lo - 1.43) <= 0.01,
              abs(hi - 2.28) <= 0.01)
    detail = (f"t1(0.31)={windows[0.31][0]:.4f} t2(0.45)={windows[0.45][1]:.4f} "
              f"overlap=[{lo:.4f}, {hi:.4f}]")
    return CheckResult("window_endpoints", all(checks), detail)


def check_regime_label_order() -> CheckResult:
    required = {0.31: Case.I, 0.38: Case.II, 0.45: Case.III}
    got = {a: classify_example(ExampleParams(a, 0.23)).case for a in required}
    passed = got == required
    seq = "/".join(got[a].value for a in (0.31, 0.38, 0.45))
    detail = (f"computed {seq} for alpha=0.31/0.38/0.45 at beta=0.23; "
              "required I/II/III")
    return CheckResult("regime_label_order", passed, detail)


def check_regime_variance_patterns() -> CheckResult:
    notes = []
    for alpha in (0.31, 0.38, 0.45):
        params = ExampleParams(alpha, 0.23)
        rep = classify_example(params)
        assert rep.window is not None
        t1, t2 = rep.window
        rates = default_rate_split(params, validate=False)
        scan = scan_trajectory(rates, t2 + 1.0, points=2000)
        inside = [p for p in scan if t1 < p.t < t2]
        if len(inside) < 100:
            return CheckResult("regime_variance_patterns", False,
                               f"only {len(inside)} grid points in the window")
        d_mean = np.array([p.d_mean for p in inside])
        d_var = np.array([p.d_var for p in inside])
        if not (d_mean < 1e-12).all():
            return CheckResult("regime_variance_patterns", False,
                               f"alpha={alpha}: mean rate not negative inside "
                               "its own negativity window")
        if rep.case is Case.I:
            ok = bool((d_var <= 1e-9).all())
            notes.append(f"alpha={alpha}:I(dvar<=0)")
        elif rep.case is Case.III:
            ok = bool((d_var >= -1e-9).all())
            notes.append(f"alpha={alpha}:III(dvar>=0)")
        else:
            signs = np.sign(d_var[np.abs(d_var) > 1e-12])
            flips = int(np.count_nonzero(np.diff(signs)))
            ok = (flips == 1 and signs[0] > 0 and signs[-1] < 0
                  and rep.t3 is not None and t1 < rep.t3 < t2)
            notes.append(f"alpha={alpha}:II(t3={rep.t3:.4f})"
                         if rep.t3 is not None else f"alpha={alpha}:II(no t3)")
        if not ok:
            return CheckResult("regime_variance_patterns", False,
                               f"alpha={alpha}: variance rate pattern does not "
                               f"match case {rep.case.value}")
    return CheckResult("regime_variance_patterns", True, " ".join(notes))


def check_moment_oracle_equivalence() -> CheckResult:
    worst = 0.0
    n = 0
    for zeta0 in np.linspace(0.1, 1.0, 10):
        for lam in np.linspace(0.05, 0.95, 10):
            setup = TPMSetup.from_zeta(float(zeta0), float(lam))
            for ell in (1, 2, 3, 4):
                diff = abs(moment_closed_form(ell, setup)
                           - moment_oracle(ell, setup))
                worst = max(worst, diff)
                n += 1
    passed = worst < 1e-12
    return CheckResult("moment_oracle_equivalence", passed,
                       f"max |closed - enumerated| = {worst:.3e} over {n} "
                       "(zeta0, lam, order) points")


def check_rate_formulas_vs_finite_differences() -> CheckResult:
    h = 1e-4
    worst_mean = 0.0
    worst_var = 0.0
    gated = 0
    for alpha in (0.31, 0.38, 0.45):
        params = ExampleParams(alpha, 0.23)
        for t in np.linspace(0.1, 10.0, 991):
            t = float(t)
            lam = math.exp(-2.0 * phi_closed(params, t))
            gs = gamma_sum(params, t)
            d_mean = mean_rate(lam, gs)
            if abs(d_mean) <= 1e-6:
                continue
            gated += 1
            d_var = var_rate(lam, d_mean)
            lam_p = math.exp(-2.0 * phi_closed(params, t + h))
            lam_m = math.exp(-2.0 * phi_closed(params, t - h))
            mp, vp = mean_and_variance(TPMSetup.from_zeta(1.0, lam_p))
            mm, vm = mean_and_variance(TPMSetup.from_zeta(1.0, lam_m))
            fd_mean = (mp - mm) / (2.0 * h)
            fd_var = (vp - vm) / (2.0 * h)
            worst_mean = max(worst_mean, abs(fd_mean - d_mean) / abs(d_mean))
            if d_var != 0.0:
                worst_var = max(worst_var, abs(fd_var - d_var) / abs(d_var))
            elif abs(fd_var) > 1e-9:
                worst_var = math.inf
    passed = worst_mean < 1e-4 and worst_var < 1e-4
    return CheckResult("rate_formulas_vs_finite_differences", passed,
                       f"max rel err mean={worst_mean:.3e} var={worst_var:.3e} "
                       f"on {gated} gated points (|d_mean| > 1e-6)")


def _random_admissible(rng: np.random.Generator) -> ExampleParams:
    alpha = float(rng.uniform(0.08, 1.2))
    beta = float(rng.uniform(beta_bar() + 1e-3, 0.2499))
    return ExampleParams(alpha, beta)


def check_algebraic_identities() -> CheckResult:
    rng = np.random.default_rng(20240817)

    # lam by trajectory quadrature vs the closed-form exponent
    worst_lam = 0.0
    n_lam = 0
    for _ in range(30):
        params = _random_admissible(rng)
        rates = default_rate_split(params, validate=False)
        times = np.linspace(1e-3, 8.0, 350)
        traj = ProbabilityTrajectory.from_rates(rates, times)
        for i, t in enumerate(times):
            lam_quad = traj.at(i).eigenvalues().lam3
            lam_closed = math.exp(-2.0 * phi_closed(params, float(t)))
            worst_lam = max(worst_lam, abs(lam_quad - lam_closed))
            n_lam += 1

    # variance rate against 2 f d_mean and the second-moment route
    worst_var_id = 0.0
    lams = rng.uniform(0.01, 0.99, 10000)
    sums = rng.uniform(-1.0, 1.0, 10000)
    for lam, gs in zip(lams, sums):
        lam = float(lam)
        d_mean = mean_rate(lam, float(gs))
        d_var = var_rate(lam, d_mean)
        worst_var_id = max(worst_var_id,
                           abs(d_var - 2.0 * f_function(lam) * d_mean))
        m1, _ = mean_and_variance(TPMSetup.from_zeta(1.0, lam))
        via_m2 = second_moment_rate(lam, d_mean) - 2.0 * m1 * d_mean
        worst_var_id = max(worst_var_id, abs(d_var - via_m2))

    # f bounded below by -1
    f_ok = all(f_function(float(l)) >= -1.0
               for l in rng.uniform(0.0, 0.999999, 10000))

    # mean rate carries the sign of the rate sum
    sign_ok = True
    for lam, gs in zip(rng.uniform(1e-6, 0.999999, 10000),
                       rng.uniform(-1.0, 1.0, 10000)):
        lam, gs = float(lam), float(gs)
        d = mean_rate(lam, gs)
        if ((d > 0) - (d < 0)) != ((gs > 0) - (gs < 0)):
            sign_ok = False
            break

    # positive rate-sum families (P-divisible) never push the mean down
    pdiv_min = math.inf
    for _ in range(25):
        b, e = rng.uniform(-0.4, 0.4, 2)
        extra = rng.uniform(0.01, 0.8)
        a = abs(b) + 0.5 * extra
        c = abs(e) + 0.5 * extra
        w, v = rng.uniform(0.5, 3.0, 2)
        for t in np.linspace(1e-3, 6.0, 400):
            t = float(t)
            gs = a + c + b * math.sin(w * t) + e * math.cos(v * t)
            phi = ((a + c) * t - (b / w) * (math.cos(w * t) - 1.0)
                   + (e / v) * math.sin(v * t))
            pdiv_min = min(pdiv_min, mean_rate(math.exp(-2.0 * phi), gs))
    pdiv_ok = pdiv_min >= -1e-15

    passed = (worst_lam <= 1e-10 and worst_var_id <= 1e-12
              and f_ok and sign_ok and pdiv_ok)
    detail = (f"lam err={worst_lam:.2e}/{n_lam} pts, var-rate id err="
              f"{worst_var_id:.2e}, f>=-1 {'ok' if f_ok else 'FAIL'}, "
              f"sign match {'ok' if sign_ok else 'FAIL'}, "
              f"positive-sum min d_mean={pdiv_min:.2e}")
    return CheckResult("algebraic_identities", passed, detail)


def check_probability_round_trip() -> CheckResult:
    rng = np.random.default_rng(7)
    worst_rate = 0.0
    worst_sum = 0.0
    for _ in range(2):
        a = rng.uniform(0.1, 0.4, 3)
        b = rng.uniform(-0.08, 0.08, 3)
        w = rng.uniform(0.5, 2.0, 3)
        ph = rng.uniform(0.0, 2.0 * math.pi, 3)

        def make(i: int) -> Callable[[float], float]:
            ai, bi, wi, pi = a[i], b[i], w[i], ph[i]
            return lambda t: ai + bi * math.sin(wi * t + pi)

        rates = RateFunctions(make(0), make(1), make(2))
        times = np.linspace(0.0, 5.0, 10001)
        traj = ProbabilityTrajectory.from_rates(rates, times)
        for i in range(len(times)):
            worst_sum = max(worst_sum, abs(sum(traj.at(i).as_tuple()) - 1.0))
        for t in np.linspace(0.25, 4.75, 101):
            rec = rates_from_probabilities(traj, float(t))
            ref = rates.values(float(t))
            worst_rate = max(worst_rate,
                             max(abs(x - y) for x, y in zip(rec, ref)))

    cp_min = math.inf
    for alpha in np.linspace(0.25, 0.55, 13):
        params = ExampleParams(float(alpha), 0.23)
        rates = default_rate_split(params, validate=False)
        times = np.linspace(0.0, 10.0 / params.alpha, 512)
        traj = ProbabilityTrajectory.from_rates(rates, times)
        for i in range(len(times)):
            cp_min = min(cp_min, min(traj.at(i).as_tuple()))

    passed = worst_rate < 1e-6 and worst_sum <= 1e-12 and cp_min >= -1e-9
    detail = (f"max rate err={worst_rate:.2e}, max |sum p - 1|={worst_sum:.2e}, "
              f"min p over kappa-split trajectories={cp_min:.2e}")
    return CheckResult("probability_round_trip", passed, detail)


def check_kappa_independence() -> CheckResult:
    params = ExampleParams(0.38, 0.23)
    scans = {}
    for kappa in (0.3, 0.5, 1.0):
        rates = default_rate_split(params, kappa, validate=False)
        scans[kappa] = scan_trajectory(rates, 8.0, points=400)
    base = scans[0.3]
    worst = 0.0
    for kappa in (0.5, 1.0):
        for p, q in zip(base, scans[kappa]):
            worst = max(worst, abs(p.mean - q.mean), abs(p.var - q.var),
                        abs(p.d_mean - q.d_mean), abs(p.d_var - q.d_var))
    return CheckResult("kappa_independence", worst <= 1e-12,
                       f"max trajectory difference across kappa = {worst:.2e}")


def check_reversible_limits() -> CheckResult:
    probes = [TPMSetup.from_zeta(1.0, 1.0)]
    probes.extend(TPMSetup.from_zeta(0.0, lam) for lam in (0.05, 0.4, 0.9, 1.0))
    for setup in probes:
        dist = entropy_distribution(setup)
        single_zero = (len(dist.atoms) == 1 and dist.atoms[0][0] == 0.0
                       and abs(dist.atoms[0][1] - 1.0) <= 1e-15)
        m, v = mean_and_variance(setup)
        if not (single_zero and dist.mean() == 0.0 and dist.variance() == 0.0
                and m == 0.0 and v == 0.0):
            return CheckResult(
                "reversible_limits", False,
                f"zeta0={setup.zeta0} lam={setup.lam}: atoms={dist.atoms}, "
                f"closed-form mean={m!r} var={v!r}")
    return CheckResult("reversible_limits", True,
                       "identity channel and unbiased state both give the "
                       "single atom {0: 1} with zero mean and variance")


_CHECKS: tuple[tuple[str, Callable[[], CheckResult]], ...] = (
    ("universal_constants", check_universal_constants),
    ("window_endpoints", check_window_endpoints),
    ("regime_label_order", check_regime_label_order),
    ("regime_variance_patterns", check_regime_variance_patterns),
    ("moment_oracle_equivalence", check_moment_oracle_equivalence),
    ("rate_formulas_vs_finite_differences",
     check_rate_formulas_vs_finite_differences),
    ("algebraic_identities", check_algebraic_identities),
    ("probability_round_trip", check_probability_round_trip),
    ("kappa_independence", check_kappa_independence),
    ("reversible_limits", check_reversible_limits),
)


def check_names() -> tuple[str, ...]:
    return tuple(name for name, _ in _CHECKS)


def run_check(name: str) -> CheckResult:
    for key, fn in _CHECKS:
        if key == name:
            try:
                return fn()
            except Exception as exc:  # surface, don't crash the runner
                return CheckResult(name, False,
                                   f"raised {type(exc).__name__}: {exc}")
    raise ValueError(f"unknown check {name!r}; known: {check_names()}")


def run_checks(names: Iterable[str] | None = None,
               verbose: bool = False) -> list[CheckResult]:
    wanted: Sequence[str] = tuple(names) if names is not None else check_names()
    results = [run_check(name) for name in wanted]
    if verbose:
        for res in results:
            tag = "[PASS]" if res.passed else "[FAIL]"
            print(f"{tag} {res.name} — {res.detail}")
    return results
