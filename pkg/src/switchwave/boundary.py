"""Characteristic marching for the string with switched boundary feedback at x = l.

The solution is ``u(x, t) = a(x + t) - a(t - x)`` with ``a'`` stored on an
expanding interval. The condition at ``x = l`` and time ``t`` fixes
``a'(y)`` at ``y = t + l``; the schedule (half-open windows of length 2l)

    [0, 2l)                 free end         a'(y) = -a'(y - 2l)
    [2(2i+1)l, 2(2i+2)l)    u_x = mu1 u_t    a'(y) = kappa a'(y - 2l)
    [2(2i+2)l, 2(2i+3)l)    u_x = mu2 u_t(t - 2l)
                            a'(y) = (mu2 - 1) a'(y - 2l) - mu2 a'(y - 4l)

with ``kappa = (1 + mu1) / (mu1 - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .grid import Grid, InitialData, Trace, init_trace_boundary
from .spectral import boundary_kappa

FREE, INSTANT, DELAYED = "free", "instantaneous", "delayed"


def window_kind(window: int) -> str:
    """Rule of the ``window``-th time window ``[2 window l, 2 (window + 1) l)``."""
    if window == 0:
        return FREE
    return INSTANT if window % 2 == 1 else DELAYED


@dataclass
class BoundaryState:
    grid: Grid
    mu1: float
    mu2: float
    trace: Trace

    def __post_init__(self):
        self.kappa = boundary_kappa(self.mu1)

    @property
    def t_max(self) -> float:
        return self.trace.coord(self.trace.frontier) - self.grid.ell


def boundary_state(data: InitialData, grid: Grid, mu1: float, mu2: float) -> BoundaryState:
    if mu1 == 1:
        raise ValueError("kappa undefined for mu1 = 1")
    state = BoundaryState(grid, float(mu1), float(mu2), init_trace_boundary(data, grid))
    return extend_boundary(state, 0.0)


def extend_boundary(state: BoundaryState, t_target: float) -> BoundaryState:
    """March ``a'`` up to ``y = t_target + l`` (snapped down to a node).

    Blocks of ``N`` nodes never straddle a window edge (edges sit at
    multiples of ``4N``) and every dependency is at least ``2l = 4N``
    nodes behind.
    """
    g = state.grid
    n = g.n_per_half
    two, four = g.offset(2), g.offset(4)
    start = g.offset(2)  # index of y = l (origin at -l)
    last = g.snap_down(t_target + g.ell, state.trace.origin)
    tr = state.trace
    k1, m2 = state.kappa, state.mu2

    k = tr.frontier + 1
    while k <= last:
        stop = min(last + 1, (k // n + 1) * n)
        idx = np.arange(k, stop)
        kind = window_kind((k - start) // two)
        if kind == FREE:
            new = -tr.at(idx - two)
        elif kind == INSTANT:
            new = k1 * tr.at(idx - two)
        else:
            new = (m2 - 1) * tr.at(idx - two) - m2 * tr.at(idx - four)
        tr.append(new)
        k = stop
    return state


def _time_index(state: BoundaryState, t: float) -> int:
    kt = state.grid.snap(t)
    if kt < 0 or t > state.t_max + 1e-12 * max(1.0, t):
        raise ValueError(f"t={t} outside reconstructible range [0, {state.t_max}]")
    return kt


def _derivs(state: BoundaryState, i, kt: int):
    m2 = state.grid.nodes_per_ell
    fwd = state.trace.at(kt + m2 + np.asarray(i))
    bwd = state.trace.at(kt + m2 - np.asarray(i))
    return fwd - bwd, fwd + bwd


def reconstruct_boundary(state: BoundaryState, x: float, t: float):
    """``(u, u_t, u_x)`` at grid node ``(x, t)``; ``u`` integrates ``u_x`` from 0."""
    g = state.grid
    i = g.snap(x)
    if not 0 <= i <= g.nodes_per_ell:
        raise ValueError(f"x={x} outside [0, {g.ell}]")
    kt = _time_index(state, t)
    _, ux_all = _derivs(state, np.arange(i + 1), kt)
    ut, ux = _derivs(state, i, kt)
    return float(np.trapezoid(ux_all, dx=g.h)), float(ut), float(ux)


def boundary_residuals(state: BoundaryState, t: float) -> float:
    """``|u_x(l, t) - rhs(t)|`` for the rule of the window containing ``t``."""
    g = state.grid
    kt = g.snap_down(t)
    _time_index(state, kt * g.h)
    end = g.nodes_per_ell
    ut, ux = _derivs(state, end, kt)
    kind = window_kind(kt // g.offset(2))
    if kind == FREE:
        rhs = 0.0
    elif kind == INSTANT:
        rhs = state.mu1 * ut
    else:
        ut_delayed, _ = _derivs(state, end, kt - g.offset(2))
        rhs = state.mu2 * ut_delayed
    return float(abs(ux - rhs))


def energy_boundary(state: BoundaryState, t: float) -> float:
    """``int_{-l}^{l} a'(x + t)^2 dx`` by the trapezoid rule."""
    kt = _time_index(state, t)
    f = state.trace.at(np.arange(kt, kt + 2 * state.grid.nodes_per_ell + 1)) ** 2
    return float(np.trapezoid(f, dx=state.grid.h))


def energy_series_boundary(state: BoundaryState, t_end: float, stride: int = 1):
    extend_boundary(state, t_end)
    g = state.grid
    kt_end = g.snap_down(t_end)
    m = 2 * g.nodes_per_ell
    f = state.trace.values[: kt_end + m + 1] ** 2
    win = sliding_window_view(f, m + 1)[::stride]
    e = g.h * (win.sum(axis=1) - 0.5 * (win[:, 0] + win[:, -1]))
    t = np.arange(0, kt_end + 1, stride) * g.h
    return t, e
