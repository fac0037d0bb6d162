"""Command-line interface.

Subcommands
    constants      print the universal thresholds of the analysis
    simulate       scan the moment dynamics of a channel over time
    classify       variance-behaviour case of an analytic-family profile
    sweep          classify a range of alpha values at fixed beta
    distribution   entropy-production atoms at one point
    selftest       run the built-in acceptance checks

Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 I/O failure.
CSV output is deterministic: fixed column order declared in a '#' header
comment, 12 significant digits, '\n' line endings.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from ._backend import backend_name
from .channel import make_grid, classify_divisibility
from .config import Scenario, load_config
from .errors import ConfigError, NumericalError
from .example import (ExampleParams, admissible, beta_bar, classify_example,
                      negativity_window, phi_closed, z_max)
from .reversibility import phi_star, scan_trajectory, solve_x_star
from .tpm import TPMSetup, entropy_distribution

SIMULATE_COLUMNS = ("t", "lambda", "phi", "gamma_sum", "f", "mean", "var",
                    "d_mean", "d_var", "divisibility_flag")
SWEEP_COLUMNS = ("alpha", "admissible", "t1", "t2", "phi_t1", "phi_t2",
                 "phi_star", "case")
DISTRIBUTION_COLUMNS = ("value", "weight")


def _fmt_cell(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def render_csv(schema: str, columns: Sequence[str],
               rows: Sequence[Sequence], comments: Sequence[str] = ()) -> str:
    lines = [f"# {schema} columns: {','.join(columns)}"]
    lines.extend(f"# {c}" for c in comments)
    lines.append(",".join(columns))
    lines.extend(",".join(_fmt_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_json(schema: str, columns: Sequence[str],
                rows: Sequence[Sequence], extra: dict | None = None) -> str:
    payload: dict = {"schema": schema}
    if extra:
        payload.update(extra)
    payload["columns"] = list(columns)
    payload["rows"] = [dict(zip(columns, row)) for row in rows]
    return json.dumps(payload, indent=2) + "\n"


def _emit(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad flags through the exit-code-1 path."""

    def error(self, message: str):
        raise ConfigError(message)


def _resolve_scenario(args: argparse.Namespace, *,
                      need_channel: bool = True) -> Scenario:
    sc = load_config(args.config) if getattr(args, "config", None) else Scenario()
    alpha = getattr(args, "alpha", None)
    beta = getattr(args, "beta", None)
    if alpha is not None or beta is not None:
        prev = sc.example
        a = alpha if alpha is not None else (prev.alpha if prev else None)
        b = beta if beta is not None else (prev.beta if prev else None)
        if a is None or b is None:
            raise ConfigError("the analytic channel needs both --alpha and --beta")
        try:
            sc.example = ExampleParams(a, b)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        sc.constant_rates = None
        sc.tabulated_path = None
    for attr, key in (("kappa", "kappa"), ("zeta0", "zeta0"),
                      ("t_max", "t_max"), ("grid", "grid"), ("out", "out"),
                      ("fmt", "format"), ("jobs", "jobs")):
        val = getattr(args, key, None)
        if val is not None:
            setattr(sc, attr, val)
    sc.validate(need_channel=need_channel)
    return sc


def cmd_constants(args: argparse.Namespace) -> int:
    xs = solve_x_star()
    rows = (("x_star", xs),
            ("phi_star", -0.5 * math.log(xs)),
            ("z_max", z_max()),
            ("beta_bar", beta_bar()))
    if getattr(args, "format", None) == "json":
        _emit(args.out, json.dumps({name: val for name, val in rows}, indent=2) + "\n")
    else:
        text = "".join(f"{name:<8} = {val:.10g}\n" for name, val in rows)
        _emit(args.out, text)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    sc = _resolve_scenario(args)
    rates = sc.rate_functions()
    scan = scan_trajectory(rates, sc.horizon(), zeta0=sc.zeta0, points=sc.grid)
    rows = [(p.t, p.lam, p.phi, p.gamma_sum, p.f, p.mean, p.var,
             p.d_mean, p.d_var, p.divisibility_flag) for p in scan]
    if sc.fmt == "json":
        text = render_json("simulate-v1", SIMULATE_COLUMNS, rows,
                           extra={"zeta0": sc.zeta0})
    else:
        text = render_csv("simulate-v1", SIMULATE_COLUMNS, rows,
                          comments=(f"zeta0={sc.zeta0:.12g}",))
    _emit(sc.out, text)
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    sc = _resolve_scenario(args)
    if sc.example is None:
        raise ConfigError("classify needs analytic-family parameters "
                          "(--alpha/--beta or an [example] config section)")
    params = sc.example
    ok, reason = admissible(params)
    if not ok:
        raise ValueError(f"cannot classify alpha={params.alpha:g} "
                         f"beta={params.beta:g}: {reason}")
    rep = classify_example(params)
    win = rep.window
    assert win is not None
    payload = {
        "alpha": params.alpha,
        "beta": params.beta,
        "t1": win[0],
        "t2": win[1],
        "phi_t1": rep.phi_t1,
        "phi_t2": rep.phi_t2,
        "phi_star": rep.phi_star,
        "case": rep.case.value,
        "t3": rep.t3,
    }
    if getattr(args, "format", None) == "json":
        _emit(sc.out, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [
            f"alpha = {params.alpha:.12g}, beta = {params.beta:.12g}",
            f"mean-rate negativity window: t1 = {win[0]:.6f}, t2 = {win[1]:.6f}",
            f"phi(t1) = {rep.phi_t1:.6f}, phi(t2) = {rep.phi_t2:.6f}, "
            f"phi_star = {rep.phi_star:.6f}",
            f"case {rep.case.value}: " + {
                "I": "variance decreases throughout the window",
                "II": f"variance rate turns negative at t3 = {rep.t3:.6f}"
                      if rep.t3 is not None else
                      "variance rate changes sign inside the window",
                "III": "variance increases throughout the window",
            }[rep.case.value],
        ]
        _emit(sc.out, "\n".join(lines) + "\n")
    return 0


def _sweep_row(task: tuple[float, float]) -> tuple:
    alpha, beta = task
    params = ExampleParams(alpha, beta)
    ok, _ = admissible(params)
    window = negativity_window(params)
    if window is None:
        return (alpha, ok, math.nan, math.nan, math.nan, math.nan,
                phi_star(), "-")
    t1, t2 = window
    p1 = phi_closed(params, t1)
    p2 = phi_closed(params, t2) if math.isfinite(t2) else math.nan
    case = "-"
    if ok:
        case = classify_example(params).case.value
    return (alpha, ok, t1, t2, p1, p2, phi_star(), case)


def cmd_sweep(args: argparse.Namespace) -> int:
    beta = args.beta
    if beta is None and args.config:
        sc = load_config(args.config)
        if sc.example is not None:
            beta = sc.example.beta
    if beta is None:
        raise ConfigError("sweep needs --beta (or an [example] config section)")
    if args.steps < 2:
        raise ConfigError("sweep needs at least 2 steps")
    if not (args.alpha_min > 0.0 and args.alpha_max > args.alpha_min):
        raise ConfigError("sweep needs 0 < --alpha-min < --alpha-max")

    span = args.alpha_max - args.alpha_min
    alphas = [args.alpha_min + span * i / (args.steps - 1)
              for i in range(args.steps)]
    tasks = [(a, beta) for a in alphas]
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks, chunksize=16))
    else:
        rows = [_sweep_row(t) for t in tasks]

    if args.format == "json":
        text = render_json("sweep-v1", SWEEP_COLUMNS, rows,
                           extra={"beta": beta})
    else:
        text = render_csv("sweep-v1", SWEEP_COLUMNS, rows,
                          comments=(f"beta={beta:.12g}",))
    _emit(args.out, text)
    return 0


def cmd_distribution(args: argparse.Namespace) -> int:
    if (args.lam is None) == (args.t is None):
        raise ConfigError("distribution needs exactly one of --lam or --t")
    sc = _resolve_scenario(args, need_channel=args.lam is None)
    if args.lam is not None:
        lam = args.lam
        t = None
    else:
        t = args.t
        if t < 0.0:
            raise ConfigError(f"--t {t!r} must be nonnegative")
        if sc.example is not None:
            lam = math.exp(-2.0 * phi_closed(sc.example, t))
        else:
            from .channel import probabilities_from_rates
            rates = sc.rate_functions(validate_cp=False)
            lam = probabilities_from_rates(rates, t).eigenvalues().lam3
    if not (0.0 < lam <= 1.0):
        raise ValueError(f"channel z-contraction {lam!r} outside (0, 1]; "
                         "the two-point statistics need an invertible CP map")

    dist = entropy_distribution(TPMSetup.from_zeta(sc.zeta0, lam), t=t)
    rows = [(v, w) for v, w in dist.atoms]
    summary = {"zeta0": sc.zeta0, "lam": lam, "t": t,
               "mean": dist.mean(), "variance": dist.variance(),
               "exp_minus_sum": dist.exp_minus_sum()}
    fmt = getattr(args, "format", None)
    if fmt == "json":
        text = render_json("distribution-v1", DISTRIBUTION_COLUMNS, rows,
                           extra=summary)
    elif fmt == "csv":
        text = render_csv("distribution-v1", DISTRIBUTION_COLUMNS, rows,
                          comments=tuple(f"{k}={_fmt_cell(v)}"
                                         for k, v in summary.items()
                                         if v is not None))
    else:
        lines = [f"zeta0 = {sc.zeta0:.12g}, lam = {lam:.12g}"
                 + (f", t = {t:.12g}" if t is not None else ""),
                 "value            weight"]
        lines.extend(f"{v: .12f}  {w:.12f}" for v, w in rows)
        lines.append(f"mean = {dist.mean():.12g}")
        lines.append(f"variance = {dist.variance():.12g}")
        lines.append(f"exp_minus_sum = {dist.exp_minus_sum():.12g}")
        text = "\n".join(lines) + "\n"
    _emit(getattr(args, "out", None), text)
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    from .selftest import run_checks

    results = run_checks(verbose=True)
    return 0 if all(r.passed for r in results) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paulitherm",
                     description="Entropy-production statistics of unital "
                                 "qubit Pauli channels")
    parser.add_argument("--version", action="version",
                        version=f"paulitherm 0.1.0 ({backend_name()} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_channel_flags(p):
        p.add_argument("--alpha", type=float, help="analytic-family decay rate")
        p.add_argument("--beta", type=float, help="analytic-family offset")
        p.add_argument("--kappa", type=float,
                       help="constant third rate of the default split")
        p.add_argument("--config", help="scenario file (INI sections)")

    def add_output_flags(p, formats=("csv", "json")):
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=formats, help="output format")

    p = sub.add_parser("constants", help="print the universal thresholds")
    add_output_flags(p, formats=("text", "json"))
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("simulate", help="scan moment dynamics over time")
    add_channel_flags(p)
    p.add_argument("--zeta0", type=float, help="initial sigma_z bias")
    p.add_argument("--t-max", dest="t_max", type=float, help="scan horizon")
    p.add_argument("--grid", type=int, help="number of grid points")
    add_output_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classify", help="variance case of one profile")
    add_channel_flags(p)
    add_output_flags(p, formats=("text", "json"))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="classify a range of alpha values")
    p.add_argument("--beta", type=float, help="fixed offset parameter")
    p.add_argument("--alpha-min", type=float, default=0.25)
    p.add_argument("--alpha-max", type=float, default=0.55)
    p.add_argument("--steps", type=int, default=121)
    p.add_argument("--jobs", type=int,
                   help="worker processes (default: all cores)")
    p.add_argument("--config", help="scenario file (INI sections)")
    add_output_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("distribution", help="entropy-production atoms")
    add_channel_flags(p)
    p.add_argument("--zeta0", type=float, help="initial sigma_z bias")
    p.add_argument("--lam", type=float, help="z contraction factor")
    p.add_argument("--t", type=float, help="evaluate the channel at this time")
    add_output_flags(p, formats=("text", "csv", "json"))
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("selftest", help="run the built-in acceptance checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
