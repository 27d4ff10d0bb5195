"""Energy series bookkeeping, peak-hold decay fits, parameter sweeps and CSV/JSON I/O."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from . import spectral
from .boundary import boundary_state, energy_series_boundary
from .grid import make_grid, preset_initial
from .pointwise import energy_series_pointwise, pointwise_state


class DegenerateSeries(ValueError):
    """Raised when a series carries no usable energy for fitting."""


@dataclass
class EnergySeries:
    times: np.ndarray
    energies: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.energies = np.asarray(self.energies, dtype=float)
        if self.times.shape != self.energies.shape or self.times.ndim != 1:
            raise ValueError("times and energies must be 1-D arrays of equal length")
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        if np.any(self.energies < 0):
            raise ValueError("energies must be nonnegative")

    def window(self, t_lo: float, t_hi: float) -> "EnergySeries":
        m = (self.times >= t_lo) & (self.times <= t_hi)
        return EnergySeries(self.times[m], self.energies[m], dict(self.meta))


@dataclass
class RateFit:
    slope: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    method_tag: str


def fit_decay_rate(series: EnergySeries, period: float, min_periods: int = 10) -> RateFit:
    """Least-squares slope of ``log E`` through per-period maxima on ``[T/2, T]``.

    The second half of the series is cut into consecutive blocks of length
    ``period``; each block contributes its largest energy at the time it
    occurs. Blocks whose maximum is zero are dropped.
    """
    if period <= 0:
        raise ValueError("period must be positive")
    t, e = series.times, series.energies
    if t.size < 2 or t[-1] - t[0] < min_periods * period * (1 - 1e-9):
        raise ValueError(f"series must span at least {min_periods} periods of {period}")
    if not np.any(e > 0):
        raise DegenerateSeries("degenerate: all energies are zero")

    t_lo, t_hi = t[0] + 0.5 * (t[-1] - t[0]), t[-1]
    nblocks = int(math.floor((t_hi - t_lo) / period + 1e-9))
    edges = t_lo + period * np.arange(nblocks + 1)
    pts_t, pts_e = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        m = (t >= lo - 1e-12 * abs(lo)) & (t < hi - 1e-12 * abs(hi))
        if not np.any(m):
            continue
        j = np.argmax(e[m])
        if e[m][j] > 0:
            pts_t.append(t[m][j])
            pts_e.append(e[m][j])
    if len(pts_t) < 2:
        raise DegenerateSeries("degenerate: fewer than two positive period maxima")

    x, y = np.array(pts_t), np.log(pts_e)
    slope, intercept = np.polyfit(x, y, 1)
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return RateFit(float(slope), float(intercept), r2, (float(t_lo), float(t_hi)),
                   f"peak-hold period={period!r}")


# -- simulation pipelines ----------------------------------------------------


def simulate_pointwise(a: float, ell: float = 1.0, n_per_half: int = 64, t_max: float = 100.0,
                       ic: str = "sine") -> EnergySeries:
    g = make_grid(ell, n_per_half)
    state = pointwise_state(preset_initial(ic, g), g, a)
    t, e = energy_series_pointwise(state, t_max)
    return EnergySeries(t, e, {"system": "pointwise", "a": a, "ell": ell,
                               "n_per_half": n_per_half, "ic": ic})


def simulate_boundary(mu1: float, mu2: float, ell: float = 1.0, n_per_half: int = 64,
                      t_max: float = 100.0, ic: str = "sine") -> EnergySeries:
    g = make_grid(ell, n_per_half)
    state = boundary_state(preset_initial(ic, g), g, mu1, mu2)
    t, e = energy_series_boundary(state, t_max)
    return EnergySeries(t, e, {"system": "boundary", "mu1": mu1, "mu2": mu2, "ell": ell,
                               "n_per_half": n_per_half, "ic": ic})


def summarize(series: EnergySeries, report: spectral.SpectralReport, period: float) -> dict:
    """JSON-ready summary comparing fitted and predicted slopes."""
    try:
        fit = fit_decay_rate(series, period)
        fitted, r2 = fit.slope, fit.r_squared
    except DegenerateSeries:
        fitted, r2 = -math.inf, None
    pred = report.predicted_energy_slope
    return {
        "system": report.system_tag,
        "params": {k: v for k, v in series.meta.items() if k != "system"},
        "spectral_radius": float(report.spectral_radius),
        "predicted_slope": None if pred is None else float(pred),
        "fitted_slope": fitted,
        "r_squared": r2,
        "stable_predicted": bool(report.stable),
        "stable_observed": bool(fitted < 0),
    }


def pointwise_runner(ell: float = 1.0, n_per_half: int = 64, t_max: float = 100.0,
                     ic: str = "sine", rel_tol: float = 0.10) -> Callable[[Mapping], dict]:
    def run(p: Mapping) -> dict:
        a = float(p["a"])
        report = spectral.pointwise_report(a, ell)
        summary = summarize(simulate_pointwise(a, ell, n_per_half, t_max, ic), report, ell)
        return _row(p, summary, rel_tol)

    return run


def boundary_runner(ell: float = 1.0, n_per_half: int = 32, t_max: float = 100.0,
                    ic: str = "sine", rel_tol: float = 0.15) -> Callable[[Mapping], dict]:
    def run(p: Mapping) -> dict:
        mu1, mu2 = float(p["mu1"]), float(p["mu2"])
        report = spectral.boundary_report(mu1, mu2, ell)
        series = simulate_boundary(mu1, mu2, ell, n_per_half, t_max, ic)
        return _row(p, summarize(series, report, 4 * ell), rel_tol)

    return run


def _row(params: Mapping, summary: dict, rel_tol: float) -> dict:
    pred, fitted = summary["predicted_slope"], summary["fitted_slope"]
    agree = summary["stable_predicted"] == summary["stable_observed"]
    if agree and pred is not None and math.isfinite(pred) and math.isfinite(fitted):
        agree = abs(fitted - pred) <= rel_tol * abs(pred)
    return {
        **dict(params),
        "stable_predicted": summary["stable_predicted"],
        "spectral_radius": summary["spectral_radius"],
        "predicted_slope": pred,
        "fitted_slope": fitted,
        "agree": bool(agree),
        "error": "",
    }


def sweep(points: Iterable[Mapping], runner: Callable[[Mapping], dict]) -> list[dict]:
    """One row per parameter point; a failing point yields a row with ``error`` set."""
    rows = []
    for p in points:
        try:
            rows.append(runner(p))
        except Exception as exc:  # per-row isolation is the contract
            rows.append({**dict(p), "agree": False, "error": f"{type(exc).__name__}: {exc}"})
    return rows


# -- I/O ----------------------------------------------------------------------


def fmt(x) -> str:
    """Shortest text that round-trips floats exactly (17 significant digits)."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return "" if x is None else str(x)


def series_to_csv(series: EnergySeries) -> str:
    buf = io.StringIO()
    for k, v in series.meta.items():
        buf.write(f"# {k}={fmt(v)}\n")
    buf.write("t,E\n")
    for t, e in zip(series.times, series.energies):
        buf.write(f"{fmt(t)},{fmt(e)}\n")
    return buf.getvalue()


def write_series_csv(series: EnergySeries, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(series_to_csv(series))


def read_series_csv(path) -> EnergySeries:
    meta, rows = {}, []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                k, _, v = line[1:].strip().partition("=")
                meta[k] = v
            elif line != "t,E":
                t, e = line.split(",")
                rows.append((float(t), float(e)))
    arr = np.array(rows, dtype=float).reshape(-1, 2)
    return EnergySeries(arr[:, 0], arr[:, 1], meta)


def table_to_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if columns is None:
        columns = []
        for r in rows:
            columns.extend(k for k in r if k not in columns)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def to_json(obj) -> str:
    def clean(v):
        if isinstance(v, dict):
            return {k: clean(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [clean(x) for x in v]
        if isinstance(v, (np.floating, float)):
            v = float(v)
            return v if math.isfinite(v) else ("-inf" if v < 0 else "inf" if v > 0 else "nan")
        if isinstance(v, np.bool_):
            return bool(v)
        if isinstance(v, np.integer):
            return int(v)
        return v

    return json.dumps(clean(obj), indent=2, sort_keys=True) + "\n"
