"""Uniform sample lattices, append-only derivative traces and initial data.

All characteristic shifts used by the marching schemes (l/2, l, 2l, 3l, 4l)
are whole multiples of the half-interval, so with ``h = l / (2 N)`` every
shift is an integer number of samples and no interpolation is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

PRESETS = ("sine", "bump", "zero")

# Relative slack used when snapping a coordinate to the nearest node.
_SNAP_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Uniform lattice with ``2 * n_per_half`` steps per interval of length ``ell``."""

    ell: float
    n_per_half: int

    @property
    def h(self) -> float:
        return self.ell / (2 * self.n_per_half)

    @property
    def nodes_per_ell(self) -> int:
        return 2 * self.n_per_half

    def offset(self, multiple: Fraction | int | str) -> int:
        """Number of samples spanned by ``multiple * ell``.

        Raises ValueError if the shift is not a whole number of samples.
        """
        steps = Fraction(multiple) * self.nodes_per_ell
        if steps.denominator != 1:
            raise ValueError(f"shift {multiple}*ell is not commensurate with the grid")
        return int(steps)

    def snap(self, value: float, origin: float = 0.0) -> int:
        """Index of ``value`` on the lattice ``origin + k h``; off-grid values raise."""
        k = (value - origin) / self.h
        kr = round(k)
        if abs(k - kr) > _SNAP_TOL * max(1.0, abs(k)):
            raise ValueError(f"coordinate {value!r} is not a grid node (h={self.h!r})")
        return int(kr)

    def snap_down(self, value: float, origin: float = 0.0) -> int:
        """Largest lattice index whose coordinate does not exceed ``value``."""
        k = (value - origin) / self.h
        kr = round(k)
        if abs(k - kr) <= _SNAP_TOL * max(1.0, abs(k)):
            return int(kr)
        return int(np.floor(k))

    def x_nodes(self) -> np.ndarray:
        """Spatial nodes ``0, h, ..., ell`` (``2 N + 1`` samples)."""
        return np.arange(self.nodes_per_ell + 1) * self.h


def make_grid(ell: float, n_per_half: int) -> Grid:
    if not ell > 0:
        raise ValueError(f"ell must be positive, got {ell!r}")
    if int(n_per_half) != n_per_half or n_per_half < 1:
        raise ValueError(f"n_per_half must be a positive integer, got {n_per_half!r}")
    return Grid(float(ell), int(n_per_half))


@dataclass
class Trace:
    """Samples of a profile derivative at ``origin + k h``, ``k = 0..frontier``.

    Storage only grows; previously written samples are never touched.
    """

    origin: float
    h: float
    _buf: np.ndarray = field(default_factory=lambda: np.empty(0), repr=False)
    frontier: int = -1

    @classmethod
    def from_values(cls, origin: float, h: float, values) -> "Trace":
        tr = cls(origin, h, np.empty(max(16, 2 * len(values))))
        tr.append(values)
        return tr

    @property
    def values(self) -> np.ndarray:
        view = self._buf[: self.frontier + 1]
        view.flags.writeable = False
        return view

    def __len__(self) -> int:
        return self.frontier + 1

    def append(self, new) -> None:
        new = np.asarray(new, dtype=float)
        if not np.all(np.isfinite(new)):
            raise FloatingPointError("non-finite trace sample")
        n = self.frontier + 1
        need = n + new.size
        if need > self._buf.size:
            buf = np.empty(max(need, 2 * self._buf.size))
            buf[:n] = self._buf[:n]
            self._buf = buf
        self._buf[n:need] = new
        self.frontier = need - 1

    def coord(self, k: int) -> float:
        return self.origin + k * self.h

    def at(self, k):
        """Sample(s) at integer index ``k``; reading past the frontier raises."""
        k = np.asarray(k)
        if np.any(k < 0) or np.any(k > self.frontier):
            raise IndexError(f"trace index outside [0, {self.frontier}]")
        return self._buf[k]


@dataclass
class InitialData:
    """``u0``, ``u0'`` and ``u1`` sampled on the nodes ``0, h, ..., ell``."""

    u0_prime: np.ndarray
    u1: np.ndarray
    u0: np.ndarray | None = None
    preset_name: str | None = None

    def __post_init__(self):
        self.u0_prime = np.asarray(self.u0_prime, dtype=float)
        self.u1 = np.asarray(self.u1, dtype=float)
        if self.u0_prime.shape != self.u1.shape:
            raise ValueError("u0_prime and u1 must have identical sample counts")
        if self.u0 is not None:
            self.u0 = np.asarray(self.u0, dtype=float)
            if self.u0.shape != self.u1.shape:
                raise ValueError("u0 must be sampled like u1")


def preset_functions(
    name: str, ell: float, right_bc: str = "neumann"
) -> tuple[Callable, Callable, Callable]:
    """Analytic ``(u0, u0', u1)`` for a named preset.

    ``right_bc`` selects the compatible "sine" profile: a quarter wave for a
    free (Neumann) right end, a half wave for a clamped (Dirichlet) one.
    """
    if right_bc not in ("neumann", "dirichlet"):
        raise ValueError(f"unknown right boundary condition {right_bc!r}")
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))  # noqa: E731

    if name == "zero":
        return zero, zero, zero
    if name == "sine":
        k = np.pi / (2 * ell) if right_bc == "neumann" else np.pi / ell
        return (lambda x: np.sin(k * np.asarray(x, float)),
                lambda x: k * np.cos(k * np.asarray(x, float)),
                zero)
    if name == "bump":
        c, w = ell / 2, ell / 4

        def u0(x):
            s = (np.asarray(x, float) - c) / w
            out = np.zeros_like(s)
            m = np.abs(s) < 1
            out[m] = np.exp(-1.0 / (1.0 - s[m] ** 2))
            return out

        def du0(x):
            s = (np.asarray(x, float) - c) / w
            out = np.zeros_like(s)
            m = np.abs(s) < 1
            q = 1.0 - s[m] ** 2
            out[m] = np.exp(-1.0 / q) * (-2.0 * s[m] / q**2) / w
            return out

        return u0, du0, zero
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESETS}")


def preset_initial(name: str, grid: Grid, right_bc: str = "neumann") -> InitialData:
    u0, du0, u1 = preset_functions(name, grid.ell, right_bc)
    x = grid.x_nodes()
    return InitialData(u0_prime=du0(x), u1=u1(x), u0=u0(x), preset_name=name)


def _check_sampling(data: InitialData, grid: Grid) -> None:
    if data.u1.size != grid.nodes_per_ell + 1:
        raise ValueError(
            f"initial data has {data.u1.size} samples, grid expects {grid.nodes_per_ell + 1}"
        )


def init_traces_pointwise(data: InitialData, grid: Grid) -> tuple[Trace, Trace]:
    """Traces of alpha_-' and alpha_+' on ``[-l/2, l/2)`` for the interior point l/2."""
    _check_sampling(data, grid)
    n = grid.n_per_half
    k = np.arange(2 * n)
    neg = k < n
    du0, u1 = data.u0_prime, data.u1

    im = np.abs(k - n)
    minus = np.where(neg, 0.5 * du0[im] - 0.5 * u1[im], 0.5 * du0[im] + 0.5 * u1[im])
    ip = np.where(neg, n + k, 3 * n - k)
    plus = np.where(neg, 0.5 * du0[ip] + 0.5 * u1[ip], -0.5 * du0[ip] + 0.5 * u1[ip])

    origin = -grid.ell / 2
    return Trace.from_values(origin, grid.h, minus), Trace.from_values(origin, grid.h, plus)


def init_trace_boundary(data: InitialData, grid: Grid) -> Trace:
    """Trace of alpha' on ``[-l, l)``."""
    _check_sampling(data, grid)
    m = 2 * grid.n_per_half
    k = np.arange(2 * m)
    neg = k < m
    ix = np.abs(k - m)
    vals = np.where(neg,
                    0.5 * data.u0_prime[ix] - 0.5 * data.u1[ix],
                    0.5 * data.u0_prime[ix] + 0.5 * data.u1[ix])
    return Trace.from_values(-grid.ell, grid.h, vals)
