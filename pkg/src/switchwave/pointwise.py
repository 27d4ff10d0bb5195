"""Characteristic marching for the string with delayed point damping at l/2.

On ``(0, l/2)`` the solution is ``a-(x+t) - a-(t-x)`` and on ``(l/2, l)`` it
is ``a+(x-l+t) + a+(t-x+l)``; only the derivative traces ``a-'`` and
``a+'`` are stored. For ``y`` in ``[l/2, 5l/2)`` the traces follow the free
transmission rules

    a-'(y) = a+'(y - l),        a+'(y) = -a-'(y - l),

and from ``y = 5l/2`` on (time ``t = y - l/2 >= 2l``) the delayed load adds
``(a/2) (a+'(y - 3l) + a+'(y - 2l))`` to both right-hand sides.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .grid import Grid, InitialData, Trace, init_traces_pointwise


@dataclass
class PointwiseState:
    grid: Grid
    a: float
    trace_minus: Trace
    trace_plus: Trace
    u0_end: float = 0.0  # u0(l), only used by the continuity check

    @property
    def xi(self) -> float:
        return self.grid.ell / 2

    @property
    def t_max(self) -> float:
        # u(., t) needs both traces on [t - l/2, t + l/2]
        return self.trace_minus.coord(self.frontier) - self.grid.ell / 2

    @property
    def frontier(self) -> int:
        return min(self.trace_minus.frontier, self.trace_plus.frontier)

    def index(self, y: float) -> int:
        return self.grid.snap(y, self.trace_minus.origin)


def pointwise_state(data: InitialData, grid: Grid, a: float) -> PointwiseState:
    """Initial state extended to ``t = 0``."""
    minus, plus = init_traces_pointwise(data, grid)
    if data.u0 is not None:
        u0_end = float(data.u0[-1])
    else:
        u0_end = float(np.trapezoid(data.u0_prime, dx=grid.h))
    state = PointwiseState(grid, float(a), minus, plus, u0_end)
    return extend_pointwise(state, 0.0)


def extend_pointwise(state: PointwiseState, t_target: float) -> PointwiseState:
    """March both traces up to ``y = t_target + l/2`` (target snapped down to a node).

    New samples are produced in blocks of ``N`` nodes aligned with the rule
    switch at ``5l/2``; every dependency lies at least ``l = 2N`` nodes
    behind, so a block is the same arithmetic as node-by-node marching.
    """
    g = state.grid
    n = g.n_per_half
    one, two, three = g.offset(1), g.offset(2), g.offset(3)
    k_delay = g.offset("5/2") + n  # index of y = 5l/2 (origin at -l/2)
    last = g.snap_down(t_target + g.ell / 2, state.trace_minus.origin)
    am, ap = state.trace_minus, state.trace_plus
    half_a = state.a / 2

    k = state.frontier + 1
    while k <= last:
        stop = min(last + 1, (k // n + 1) * n)
        idx = np.arange(k, stop)
        if k < k_delay:
            new_m = ap.at(idx - one)
            new_p = -am.at(idx - one)
        else:
            load = half_a * (ap.at(idx - three) + ap.at(idx - two))
            new_m = ap.at(idx - one) + load
            new_p = -am.at(idx - one) + load
        am.append(new_m)
        ap.append(new_p)
        k = stop
    return state


def state_vector(state: PointwiseState, y: float) -> np.ndarray:
    """``C(y) = (a-'(y), a+'(y), a+'(y - l), a+'(y - 2l))``."""
    k = state.index(y)
    one = state.grid.offset(1)
    return np.array([
        state.trace_minus.at(k),
        state.trace_plus.at(k),
        state.trace_plus.at(k - one),
        state.trace_plus.at(k - 2 * one),
    ])


def _branch_derivs(state: PointwiseState, i: np.ndarray, kt: int, side: str):
    """(u_t, u_x) at spatial node indices ``i`` and time index ``kt``.

    Trace index of ``x + t`` is ``i + kt + N`` because the origin is ``-l/2``.
    """
    n = state.grid.n_per_half
    m2 = 2 * n
    if side == "minus":
        fwd = state.trace_minus.at(kt + n + i)
        bwd = state.trace_minus.at(kt + n - i)
        return fwd - bwd, fwd + bwd
    fwd = state.trace_plus.at(kt + n + i - m2)
    bwd = state.trace_plus.at(kt + n - i + m2)
    return fwd + bwd, fwd - bwd


def _time_index(state: PointwiseState, t: float) -> int:
    kt = state.grid.snap(t)
    if kt < 0 or t > state.t_max + 1e-12 * max(1.0, t):
        raise ValueError(f"t={t} outside reconstructible range [0, {state.t_max}]")
    return kt


def reconstruct_pointwise(state: PointwiseState, x: float, t: float, side: str = "auto"):
    """``(u, u_t, u_x)`` at grid node ``(x, t)``.

    ``side`` picks the branch at ``x = l/2``; ``"auto"`` uses the left
    branch for ``x < l/2`` and the right one otherwise. ``u`` is the
    trapezoid integral of ``u_x`` from ``x = 0``.
    """
    g = state.grid
    i = g.snap(x)
    if not 0 <= i <= g.nodes_per_ell:
        raise ValueError(f"x={x} outside [0, {g.ell}]")
    kt = _time_index(state, t)
    n = g.n_per_half
    if side == "auto":
        side = "minus" if i < n else "plus"

    left = np.arange(0, min(i, n) + 1)
    _, ux_left = _branch_derivs(state, left, kt, "minus")
    u = np.trapezoid(ux_left, dx=g.h)
    if i > n:
        right = np.arange(n, i + 1)
        _, ux_right = _branch_derivs(state, right, kt, "plus")
        u += np.trapezoid(ux_right, dx=g.h)
    ut, ux = _branch_derivs(state, np.array(i), kt, side)
    return float(u), float(ut), float(ux)


def transmission_residuals(state: PointwiseState, t: float) -> tuple[float, float]:
    """Continuity and jump defects of the solution at ``x = l/2``.

    The left value of ``u`` integrates ``u_x`` from the clamped end; the
    right value starts from ``u(l, t) = u0(l) + int_0^t 2 a+'(s) ds`` and
    integrates back, so the two routes share no quadrature.
    """
    g = state.grid
    if t <= 2 * g.ell:
        raise ValueError("delayed transmission rule is inactive for t <= 2l")
    kt = _time_index(state, t)
    n = g.n_per_half
    delay = g.offset(2)

    left = np.arange(0, n + 1)
    _, ux_l = _branch_derivs(state, left, kt, "minus")
    u_minus = np.trapezoid(ux_l, dx=g.h)

    # a+'(s) for s in [0, t]: trace index of s is s/h + N
    end_speed = 2.0 * state.trace_plus.at(np.arange(n, n + kt + 1))
    u_end = state.u0_end + np.trapezoid(end_speed, dx=g.h)
    right = np.arange(n, g.nodes_per_ell + 1)
    _, ux_r = _branch_derivs(state, right, kt, "plus")
    u_plus = u_end - np.trapezoid(ux_r, dx=g.h)

    _, ux_m = _branch_derivs(state, np.array(n), kt, "minus")
    _, ux_p = _branch_derivs(state, np.array(n), kt, "plus")
    ut_delayed, _ = _branch_derivs(state, np.array(n), kt - delay, "plus")
    jump = -ux_m + ux_p + state.a * ut_delayed
    return float(abs(u_minus - u_plus)), float(abs(jump))


def energy_pointwise(state: PointwiseState, t: float) -> float:
    """``int_{-l/2}^{l/2} a-'(x+t)^2 + a+'(x+t)^2 dx`` by the trapezoid rule."""
    kt = _time_index(state, t)
    idx = np.arange(kt, kt + state.grid.nodes_per_ell + 1)
    f = state.trace_minus.at(idx) ** 2 + state.trace_plus.at(idx) ** 2
    return float(np.trapezoid(f, dx=state.grid.h))


def energy_series_pointwise(state: PointwiseState, t_end: float, stride: int = 1):
    """Energies at every ``stride``-th time node in ``[0, t_end]``; extends as needed."""
    extend_pointwise(state, t_end)
    g = state.grid
    kt_end = g.snap_down(t_end)
    m = g.nodes_per_ell
    f = state.trace_minus.values[: kt_end + m + 1] ** 2 + state.trace_plus.values[: kt_end + m + 1] ** 2
    win = sliding_window_view(f, m + 1)[::stride]
    e = g.h * (win.sum(axis=1) - 0.5 * (win[:, 0] + win[:, -1]))
    t = np.arange(0, kt_end + 1, stride) * g.h
    return t, e
