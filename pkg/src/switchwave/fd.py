"""Explicit leapfrog finite differences for the three switched/delayed wave problems.

Nodes ``x_i = i h``, ``h = L / nx``, ``i = 0..nx``; ``u_0 = 0`` always.

* ``pointwise``: free right end (ghost node), delayed point load
  ``+a u_t(l/2, t - 2l)`` of weight ``1/h`` at the middle node for ``t >= 2l``.
  The sign matches the transmission jump ``u_x(l/2+) - u_x(l/2-) =
  -a u_t(l/2, t - 2l)`` used by the characteristic solver.
* ``boundary``: ``u_x(l) = g(t)`` through the ghost node, with ``g`` switched
  between ``0``, ``mu1 u_t(l, t)`` and ``mu2 u_t(l, t - 2l)``. The
  instantaneous rule is imposed one-sided at the new time level.
* ``internal``: clamped ends, ``b1 u_t`` (centred, implicit) on
  ``[i P, i P + T*)`` and ``b2 u_t(x, t - tau)`` on ``[i P + T*, (i + 1) P)``,
  ``P = T* + tau``.

Delayed velocities are centred differences kept in a ring buffer of
``delay_steps`` entries.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .grid import preset_functions

Scheme = Literal["pointwise", "boundary", "internal"]


@dataclass
class FdConfig:
    scheme: Scheme
    domain_length: float
    nx: int
    dt: float
    t_end: float
    params: dict = field(default_factory=dict)

    @property
    def h(self) -> float:
        return self.domain_length / self.nx

    @property
    def delay(self) -> float:
        if self.scheme == "internal":
            return self.params["tau"]
        return 2 * self.domain_length

    @property
    def delay_steps(self) -> int:
        return _whole_steps(self.delay, self.dt, "delay")

    @property
    def tstar_steps(self) -> int:
        return _whole_steps(self.params["tstar"], self.dt, "T*")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    def validate(self) -> None:
        if self.nx < 2:
            raise ValueError("nx must be at least 2")
        if self.dt > self.h * (1 + 1e-12):
            raise ValueError(f"CFL violated: dt={self.dt} > h={self.h}")
        if self.scheme == "pointwise" and self.nx % 2:
            raise ValueError("pointwise scheme needs an even nx so that l/2 is a node")
        if self.scheme == "boundary" and self.params["mu1"] == 1:
            raise ValueError("kappa undefined for mu1 = 1")
        if self.scheme == "internal":
            tau, tstar = self.params["tau"], self.params["tstar"]
            if not 0 < tau <= tstar:
                raise ValueError("internal scheme requires 0 < tau <= T*")
            self.tstar_steps
        self.delay_steps


def _whole_steps(length: float, dt: float, what: str) -> int:
    n = length / dt
    if abs(n - round(n)) > 1e-9 * max(1.0, n) or round(n) < 1:
        raise ValueError(f"{what} {length} is not a whole number of time steps dt={dt}")
    return int(round(n))


def make_fd_config(scheme: Scheme, params: dict, domain_length: float = 1.0, nx: int = 256,
                   t_end: float = 10.0, dt: float | None = None, cfl: float = 0.9) -> FdConfig:
    """Config with ``dt`` the largest step ``<= cfl * h`` that divides the delay."""
    params = dict(params)
    if scheme == "pointwise":
        xi = params.setdefault("xi", domain_length / 2)
        if abs(xi - domain_length / 2) > 1e-12 * domain_length:
            raise ValueError("only xi = l/2 is supported")
    if dt is None:
        h = domain_length / nx
        delay = params["tau"] if scheme == "internal" else 2 * domain_length
        if not delay > 0:
            raise ValueError("internal scheme requires 0 < tau <= T*")
        dt = delay / np.ceil(delay / (cfl * h) - 1e-9)
    cfg = FdConfig(scheme, float(domain_length), int(nx), float(dt), float(t_end), params)
    cfg.validate()
    return cfg


@dataclass
class FdState:
    u_prev: np.ndarray
    u_curr: np.ndarray
    history: np.ndarray
    step_index: int = 0


def fd_initial_state(config: FdConfig, ic: str = "sine") -> FdState:
    config.validate()
    right_bc = "dirichlet" if config.scheme == "internal" else "neumann"
    u0f, _, u1f = preset_functions(ic, config.domain_length, right_bc)
    x = np.arange(config.nx + 1) * config.h
    u0, u1 = u0f(x), u1f(x)
    u0[0] = 0.0
    if right_bc == "dirichlet":
        u0[-1] = u1[-1] = 0.0
    utt = _laplacian(u0, config, 0.0)
    if config.scheme == "internal":
        utt = utt - config.params["b1"] * u1
    u_prev = u0 - config.dt * u1 + 0.5 * config.dt**2 * utt
    u_prev[0] = 0.0
    if right_bc == "dirichlet":
        u_prev[-1] = 0.0
    d = config.delay_steps
    hist = np.zeros((d, config.nx + 1)) if config.scheme == "internal" else np.zeros(d)
    return FdState(u_prev, u0.copy(), hist)


def _laplacian(u: np.ndarray, config: FdConfig, flux: float) -> np.ndarray:
    h = config.h
    lap = np.zeros_like(u)
    lap[1:-1] = (u[:-2] - 2 * u[1:-1] + u[2:]) / h**2
    if config.scheme != "internal":
        # ghost node u_{nx+1} = u_{nx-1} + 2 h flux
        lap[-1] = 2 * (u[-2] - u[-1]) / h**2 + 2 * flux / h
    return lap


def fd_step(state: FdState, config: FdConfig) -> FdState:
    """Advance ``u^n -> u^{n+1}`` and record the centred velocity of step ``n``."""
    n = state.step_index
    dt, h = config.dt, config.h
    d = config.delay_steps
    u, up = state.u_curr, state.u_prev
    delayed = state.history[n % d] if n >= d else None
    p = config.params

    if config.scheme == "pointwise":
        new = 2 * u - up + dt**2 * _laplacian(u, config, 0.0)
        if delayed is not None:
            new[config.nx // 2] += dt**2 * p["a"] / h * delayed
        new[0] = 0.0
        probe = lambda v: v[config.nx // 2]  # noqa: E731
    elif config.scheme == "boundary":
        window = n // d
        if window % 2 == 1:
            new = 2 * u - up + dt**2 * _laplacian(u, config, 0.0)
            # (u_N - u_{N-1}) / h = mu1 (u_N - u_N^n) / dt at the new level; a
            # centred end-node update is violently unstable for mu1 > 1
            c = p["mu1"] * h / dt
            if abs(1 - c) < 1e-8:
                raise ZeroDivisionError("singular end-node update for mu1 = dt/h")
            new[-1] = (new[-2] - c * u[-1]) / (1 - c)
        else:
            flux = p["mu2"] * delayed if (window > 0 and delayed is not None) else 0.0
            new = 2 * u - up + dt**2 * _laplacian(u, config, flux)
        new[0] = 0.0
        probe = lambda v: v[-1]  # noqa: E731
    else:
        s = config.tstar_steps
        lap = _laplacian(u, config, 0.0)
        if n % (s + d) < s:
            c = 0.5 * p["b1"] * dt
            new = (2 * u - (1 - c) * up + dt**2 * lap) / (1 + c)
        else:
            new = 2 * u - up + dt**2 * lap - dt**2 * p["b2"] * delayed
        new[0] = new[-1] = 0.0
        probe = lambda v: v  # noqa: E731

    state.history[n % d] = probe((new - up) / (2 * dt))
    state.u_prev, state.u_curr = u, new
    state.step_index = n + 1
    return state


def fd_energy(u_prev: np.ndarray, u_curr: np.ndarray, u_next: np.ndarray, config: FdConfig) -> float:
    """``1/2 int u_t^2 + u_x^2`` at ``u_curr``: centred ``u_t``, second-order ``u_x``, trapezoid."""
    ut = (u_next - u_prev) / (2 * config.dt)
    ux = np.gradient(u_curr, config.h, edge_order=2)
    return float(0.5 * np.trapezoid(ut**2 + ux**2, dx=config.h))


def fd_energy_staggered(u_old: np.ndarray, u_new: np.ndarray, config: FdConfig) -> float:
    """Leapfrog energy at the half step between ``u_old`` and ``u_new``.

    This is the quantity the undamped scheme conserves to rounding and the
    ``b1``-damped scheme decreases at every step.
    """
    h, dt = config.h, config.dt
    w = np.full(u_new.size, h)
    w[0] = 0.5 * h
    w[-1] = 0.5 * h
    kin = 0.5 * np.sum(w * ((u_new - u_old) / dt) ** 2)
    pot = 0.5 * np.sum(np.diff(u_new) * np.diff(u_old)) / h
    return float(kin + pot)


@dataclass
class FdRun:
    config: FdConfig
    times: np.ndarray
    energies: np.ndarray
    staggered_times: np.ndarray
    staggered_energies: np.ndarray
    state: FdState


def run_fd(config: FdConfig, ic: str = "sine", n_steps: int | None = None) -> FdRun:
    """Step from ``t = 0`` to ``t_end``, recording both energies at every step."""
    state = fd_initial_state(config, ic)
    n_steps = config.n_steps if n_steps is None else n_steps
    e, es = np.empty(n_steps + 1), np.empty(n_steps + 1)
    for n in range(n_steps + 1):
        before = state.u_curr
        older = state.u_prev
        fd_step(state, config)
        e[n] = fd_energy(older, before, state.u_curr, config)
        es[n] = fd_energy_staggered(before, state.u_curr, config)
    t = np.arange(n_steps + 1) * config.dt
    return FdRun(config, t, e, t + 0.5 * config.dt, es, state)


# -- internal-damping contraction chain ---------------------------------------


def measure_contraction(config: FdConfig, ic: str = "sine") -> float:
    """``E(T*) / E(0)`` with only the ``b1`` phase simulated."""
    if config.scheme != "internal":
        raise ValueError("contraction is defined for the internal scheme only")
    cfg = copy.deepcopy(config)
    cfg.params["b2"] = 0.0
    run = run_fd(cfg, ic, n_steps=cfg.tstar_steps)
    if run.energies[0] == 0:
        raise ValueError("degenerate initial data: E(0) = 0")
    return float(run.energies[-1] / run.energies[0])


def b2_threshold(alpha: float, tau: float) -> float:
    """Largest admissible ``|b2|``: ``(1 - sqrt(alpha)) / (sqrt(alpha) tau)``."""
    return (1 - np.sqrt(alpha)) / (np.sqrt(alpha) * tau)


@dataclass
class BoundCheck:
    alpha: float
    alpha_tilde: float
    max_ratio: float
    passed: bool


def delayed_window_bound_check(times, energies, alpha: float, b2: float, tau: float,
                               tstar: float, delta: float = 0.05) -> BoundCheck:
    """Check ``E(t) <= alpha (1 + |b2| tau)^2 E(0) (1 + delta)`` on ``(T*, T* + tau)``."""
    times, energies = np.asarray(times), np.asarray(energies)
    if times[0] > 0 or times[-1] < tstar + tau - 1e-12 * (tstar + tau):
        raise ValueError("series does not cover [0, T* + tau]")
    alpha_tilde = alpha * (1 + abs(b2) * tau) ** 2
    e0 = energies[0]
    if e0 == 0:
        return BoundCheck(alpha, alpha_tilde, 0.0, bool(np.all(energies == 0)))
    m = (times > tstar) & (times < tstar + tau)
    ratio = float(np.max(energies[m]) / (alpha_tilde * e0))
    return BoundCheck(alpha, alpha_tilde, ratio, ratio <= 1 + delta)


# -- cross-validation against the characteristic solvers ----------------------


@dataclass
class CrossValidation:
    system: str
    params: dict
    resolutions: list
    rel_diffs: list

    @property
    def monotone(self) -> bool:
        return all(b < a for a, b in zip(self.rel_diffs, self.rel_diffs[1:]))


def fd_cross_validate(system: Literal["pointwise", "boundary"], params: dict,
                      resolutions=(64, 128, 256), ell: float = 1.0, t_end: float | None = None,
                      ic: str = "sine") -> CrossValidation:
    """Relative sup-norm gap between the FD and characteristic energy series.

    The characteristic solver runs on the same spacing ``h = l / nx`` and is
    linearly interpolated to the FD time levels.
    """
    from .boundary import boundary_state, energy_series_boundary
    from .grid import make_grid, preset_initial
    from .pointwise import energy_series_pointwise, pointwise_state

    t_end = 10 * ell if t_end is None else t_end
    diffs = []
    for nx in resolutions:
        if nx % 2:
            raise ValueError("resolutions must be even")
        g = make_grid(ell, nx // 2)
        data = preset_initial(ic, g)
        if system == "pointwise":
            t_ref, e_ref = energy_series_pointwise(pointwise_state(data, g, params["a"]), t_end)
        elif system == "boundary":
            st = boundary_state(data, g, params["mu1"], params["mu2"])
            t_ref, e_ref = energy_series_boundary(st, t_end)
        else:
            raise ValueError(f"unknown system {system!r}")
        run = run_fd(make_fd_config(system, params, ell, nx, t_end), ic)
        m = run.times <= t_ref[-1]
        ref = np.interp(run.times[m], t_ref, e_ref)
        scale = np.max(np.abs(ref))
        diffs.append(0.0 if scale == 0 else float(np.max(np.abs(run.energies[m] - ref)) / scale))
    return CrossValidation(system, dict(params), list(resolutions), diffs)
