"""Scenario configuration for the command-line tools.

Config files are flat key = value text with one section per concern
(INI syntax, parsed by configparser).  Exactly one channel section must be
present: [example], [constant_rates] or [tabulated_rates].  Command-line
flags override file values.

    [example]
    alpha = 0.31
    beta = 0.23
    kappa = 0.3

    [state]
    zeta0 = 1.0

    [grid]
    t_max = 20.0
    points = 2000

    [output]
    path = run.csv
    format = csv
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .channel import RateFunctions
from .errors import ConfigError
from .example import DEFAULT_KAPPA, ExampleParams, default_rate_split

_CHANNEL_SECTIONS = ("example", "constant_rates", "tabulated_rates")


@dataclass
class Scenario:
    """Resolved inputs of a simulate/classify/distribution run."""

    example: ExampleParams | None = None
    kappa: float = DEFAULT_KAPPA
    constant_rates: tuple[float, float, float] | None = None
    tabulated_path: str | None = None
    zeta0: float = 1.0
    t_max: float | None = None
    grid: int = 2000
    out: str | None = None
    fmt: str = "csv"
    jobs: int | None = None

    def validate(self, *, need_channel: bool = True) -> None:
        present = [name for name, val in (
            ("example", self.example),
            ("constant_rates", self.constant_rates),
            ("tabulated_rates", self.tabulated_path)) if val is not None]
        if len(present) > 1 or (need_channel and not present):
            raise ConfigError(
                "exactly one channel spec required (example parameters, "
                f"constant rates or a rate table); got {present or 'none'}")
        if not (-1.0 <= self.zeta0 <= 1.0):
            raise ConfigError(f"zeta0={self.zeta0!r} outside [-1, 1]")
        if self.t_max is not None and self.t_max <= 0.0:
            raise ConfigError(f"t_max={self.t_max!r} must be positive")
        if self.grid < 16:
            raise ConfigError(f"grid={self.grid!r} must be at least 16 points")
        if self.fmt not in ("csv", "json", "text"):
            raise ConfigError(f"format={self.fmt!r} must be csv, json or text")
        if self.jobs is not None and self.jobs < 1:
            raise ConfigError(f"jobs={self.jobs!r} must be at least 1")

    def horizon(self) -> float:
        if self.t_max is not None:
            return self.t_max
        if self.example is not None:
            return 10.0 / self.example.alpha
        return 10.0

    def rate_functions(self, *, validate_cp: bool = True) -> RateFunctions:
        if self.example is not None:
            return default_rate_split(self.example, self.kappa,
                                      validate=validate_cp,
                                      horizon=self.horizon())
        if self.constant_rates is not None:
            return RateFunctions.constant(*self.constant_rates)
        assert self.tabulated_path is not None
        return load_rate_table(self.tabulated_path)


def _get_float(section: configparser.SectionProxy, key: str) -> float:
    try:
        return section.getfloat(key)
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] {key}: not a number") from exc


def load_config(path: str | Path) -> Scenario:
    """Parse a scenario file; missing optional keys keep their defaults."""
    parser = configparser.ConfigParser()
    read = parser.read(str(path))
    if not read:
        raise ConfigError(f"config file {str(path)!r} not found or unreadable")

    found = [s for s in _CHANNEL_SECTIONS if parser.has_section(s)]
    if len(found) != 1:
        raise ConfigError(
            f"config must contain exactly one of {_CHANNEL_SECTIONS}; "
            f"found {found or 'none'}")

    sc = Scenario()
    if found[0] == "example":
        sec = parser["example"]
        for key in ("alpha", "beta"):
            if key not in sec:
                raise ConfigError(f"[example] missing key {key!r}")
        try:
            sc.example = ExampleParams(_get_float(sec, "alpha"),
                                       _get_float(sec, "beta"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if "kappa" in sec:
            sc.kappa = _get_float(sec, "kappa")
    elif found[0] == "constant_rates":
        sec = parser["constant_rates"]
        vals = []
        for key in ("gamma1", "gamma2", "gamma3"):
            if key not in sec:
                raise ConfigError(f"[constant_rates] missing key {key!r}")
            vals.append(_get_float(sec, key))
        sc.constant_rates = (vals[0], vals[1], vals[2])
    else:
        sec = parser["tabulated_rates"]
        if "path" not in sec:
            raise ConfigError("[tabulated_rates] missing key 'path'")
        raw = sec["path"]
        base = Path(path).parent
        sc.tabulated_path = str((base / raw) if not Path(raw).is_absolute() else Path(raw))

    if parser.has_section("state"):
        sec = parser["state"]
        if "zeta0" in sec:
            sc.zeta0 = _get_float(sec, "zeta0")
    if parser.has_section("grid"):
        sec = parser["grid"]
        if "t_max" in sec:
            sc.t_max = _get_float(sec, "t_max")
        if "points" in sec:
            try:
                sc.grid = sec.getint("points")
            except ValueError as exc:
                raise ConfigError("[grid] points: not an integer") from exc
    if parser.has_section("output"):
        sec = parser["output"]
        if "path" in sec:
            sc.out = sec["path"]
        if "format" in sec:
            sc.fmt = sec["format"].strip().lower()
    return sc


def load_rate_table(path: str | Path) -> RateFunctions:
    """Rates from a CSV table with columns t, gamma1, gamma2, gamma3.

    Lines starting with '#' and a leading non-numeric header row are
    skipped.  Rates between samples are linearly interpolated; outside the
    sampled range the boundary values extend flat.
    """
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"rate table {str(p)!r} not found")
    rows: list[list[float]] = []
    for line in p.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [c.strip() for c in line.split(",")]
        try:
            vals = [float(c) for c in parts]
        except ValueError:
            if rows:
                raise ConfigError(f"rate table {str(p)!r}: bad row {line!r}")
            continue   # header row
        if len(vals) != 4:
            raise ConfigError(
                f"rate table {str(p)!r}: expected 4 columns, got {len(vals)}")
        rows.append(vals)
    if len(rows) < 2:
        raise ConfigError(f"rate table {str(p)!r}: need at least 2 samples")
    data = np.asarray(rows)
    ts = data[:, 0]
    if not np.all(np.diff(ts) > 0.0):
        raise ConfigError(f"rate table {str(p)!r}: times must increase strictly")

    def interp(col: int) -> Callable[[float], float]:
        ys = data[:, col]
        return lambda t: float(np.interp(t, ts, ys))

    return RateFunctions(interp(1), interp(2), interp(3))
