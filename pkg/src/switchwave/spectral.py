"""Transfer matrices, closed-form eigenvalues and stability predicates.

Pointwise system (interior delayed point damping at l/2): the state
``C(y) = (a-'(y), a+'(y), a+'(y-l), a+'(y-2l))`` advances by one
interval ``l`` through the 4x4 matrix ``M_a``, whose characteristic
polynomial is ``lambda^4 + (1 - a/2) lambda^2 + a/2``.

Boundary switching system: ``U(y) = (a'(y), a'(y-2l))`` advances over one
switching period ``4l`` through a rank-one 2x2 matrix with eigenvalues
``0`` and ``kappa (mu2 - 1) - mu2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

ROOT_TOL = 1e-10
SOLVER_TOL = 1e-8
# a at which the discriminant a^2 - 12a + 4 vanishes (double lambda^2 root)
A_DOUBLE = 6.0 - 4.0 * np.sqrt(2.0)


@dataclass
class SpectralReport:
    system_tag: Literal["pointwise", "boundary"]
    matrix: np.ndarray
    eigenvalues: np.ndarray
    spectral_radius: float
    stable: bool
    predicted_energy_slope: float | None
    conditioning: float | None = None
    params: dict = field(default_factory=dict)


# -- pointwise ---------------------------------------------------------------


def pointwise_matrix(a: float) -> np.ndarray:
    h = a / 2
    return np.array([
        [0.0, 1.0, h, h],
        [-1.0, 0.0, h, h],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
    ])


def char_poly_pointwise(a: float, lam):
    lam2 = np.asarray(lam) ** 2
    return lam2 * lam2 + (1 - a / 2) * lam2 + a / 2


def lambda_squared(a: float) -> np.ndarray:
    """The two roots of ``p_a`` in the variable ``lambda^2`` (principal complex sqrt)."""
    disc = _sqrt_disc(a)
    return np.array([(a - 2 + disc) / 4, (a - 2 - disc) / 4])


def _sqrt_disc(a: float) -> complex:
    d = a * a - 12 * a + 4
    # a discriminant inside its own rounding error is a double root
    if abs(d) <= 16 * np.finfo(float).eps * (a * a + 12 * abs(a) + 4):
        d = 0.0
    return np.sqrt(complex(d))


def pointwise_eigs(a: float, validate: bool = True) -> np.ndarray:
    """Four eigenvalues of ``M_a`` from the closed form.

    With ``validate`` the roots are checked against ``p_a`` and against a
    dense eigensolver on the matrix; a mismatch raises ArithmeticError.
    """
    s = np.sqrt(lambda_squared(a))
    eigs = np.concatenate([s, -s])
    if validate:
        res = np.abs(char_poly_pointwise(a, eigs))
        if res.max() > ROOT_TOL:
            raise ArithmeticError(f"closed-form root residual {res.max():.3e} for a={a}")
        ref = np.linalg.eigvals(pointwise_matrix(a))
        # solver error grows like sqrt(eps) near the double root
        tol = SOLVER_TOL if abs(a - A_DOUBLE) > 1e-6 else 1e-6
        if np.max(np.abs(_match(eigs, ref) - eigs)) > tol:
            raise ArithmeticError(f"closed form disagrees with eigensolver for a={a}")
    return eigs


def _match(target: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Reorder ``candidates`` to best match ``target`` elementwise."""
    best, best_err = None, np.inf
    for perm in itertools.permutations(range(len(candidates))):
        c = candidates[list(perm)]
        err = np.max(np.abs(c - target))
        if err < best_err:
            best, best_err = c, err
    return best


def pointwise_spectral_radius(a: float) -> float:
    return float(np.sqrt(np.max(np.abs(lambda_squared(a)))))


def pointwise_stable(a: float) -> bool:
    """``|a - 2 +- sqrt(a^2 - 12a + 4)| < 4`` with complex modulus when needed."""
    disc = _sqrt_disc(a)
    return bool(abs(a - 2 + disc) < 4 and abs(a - 2 - disc) < 4)


def pointwise_rate(a: float, ell: float) -> float:
    """Predicted slope of ``log E(t)``: ``2 ln(rho_a) / ell``."""
    if not 0 < a < 2:
        raise ValueError(f"a={a} not in stability region (0, 2)")
    if not ell > 0:
        raise ValueError("ell must be positive")
    return 2.0 * np.log(pointwise_spectral_radius(a)) / ell


def eigenvector_conditioning(matrix: np.ndarray) -> float:
    """``||V|| ||V^-1||`` (2-norm) of the numerically computed eigenvector matrix."""
    _, vecs = np.linalg.eig(matrix)
    return float(np.linalg.cond(vecs))


def eig_min_separation(a: float) -> float:
    eigs = pointwise_eigs(a, validate=False)
    return float(min(abs(x - y) for x, y in itertools.combinations(eigs, 2)))


def eig_simplicity_check(a: float) -> bool:
    return eig_min_separation(a) > 1e-8


def pointwise_report(a: float, ell: float = 1.0) -> SpectralReport:
    m = pointwise_matrix(a)
    eigs = pointwise_eigs(a)
    rho = float(np.max(np.abs(eigs)))
    stable = pointwise_stable(a)
    return SpectralReport(
        system_tag="pointwise",
        matrix=m,
        eigenvalues=eigs,
        spectral_radius=rho,
        stable=stable,
        predicted_energy_slope=pointwise_rate(a, ell) if 0 < a < 2 else None,
        conditioning=eigenvector_conditioning(m),
        params={"a": a, "ell": ell},
    )


# -- boundary ----------------------------------------------------------------


def boundary_kappa(mu1: float) -> float:
    if mu1 == 1:
        raise ValueError("kappa undefined for mu1 = 1")
    return (1 + mu1) / (mu1 - 1)


def boundary_matrix(mu1: float, mu2: float) -> tuple[np.ndarray, float]:
    """Period-4l transfer matrix and its nonzero eigenvalue ``lambda_2``."""
    k = boundary_kappa(mu1)
    m = np.array([[k * (mu2 - 1), -k * mu2], [mu2 - 1, -mu2]])
    lam2 = k * (mu2 - 1) - mu2
    # char poly is z^2 - tr(M) z + det(M); eigvals would lose half the digits
    # when lambda_2 -> 0 and M becomes defective
    scale = max(1.0, abs(k), abs(mu2), abs(k * mu2))
    if abs(np.trace(m) - lam2) > ROOT_TOL * scale or abs(np.linalg.det(m)) > ROOT_TOL * scale**2:
        raise ArithmeticError(f"eigenvalues of M are not {{0, {lam2}}}")
    return m, lam2


def boundary_stable(mu1: float, mu2: float) -> bool:
    k = boundary_kappa(mu1)
    return bool(abs(k * (mu2 - 1) - mu2) < 1)


def ordering_predicate(mu1: float, mu2: float) -> bool:
    """``1 < mu2 < mu1`` or ``mu1 < mu2 < 1``."""
    return (1 < mu2 < mu1) or (mu1 < mu2 < 1)


def boundary_rate(mu1: float, mu2: float, ell: float) -> float:
    """Energy slope ``ln|lambda_2| / (2 l)``: amplitudes scale by lambda_2 every 4l."""
    _, lam2 = boundary_matrix(mu1, mu2)
    if lam2 == 0:
        return -np.inf
    return float(np.log(abs(lam2)) / (2 * ell))


def boundary_report(mu1: float, mu2: float, ell: float = 1.0) -> SpectralReport:
    m, lam2 = boundary_matrix(mu1, mu2)
    return SpectralReport(
        system_tag="boundary",
        matrix=m,
        eigenvalues=np.array([0.0, lam2], dtype=complex),
        spectral_radius=abs(lam2),
        stable=boundary_stable(mu1, mu2),
        predicted_energy_slope=boundary_rate(mu1, mu2, ell),
        params={"mu1": mu1, "mu2": mu2, "ell": ell},
    )


# -- region sweeps -------------------------------------------------------------


@dataclass
class RegionCheck:
    checked: int = 0
    skipped: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.disagreements


def region_equivalence_check(
    system: Literal["pointwise", "boundary"],
    points: Iterable,
    eps: float = 1e-6,
) -> RegionCheck:
    """Compare the spectral predicate with its closed-form region on sample points.

    Pointwise points are scalars ``a`` compared against ``0 < a < 2``;
    boundary points are ``(mu1, mu2)`` pairs compared against the ordering
    predicate. Points within ``eps`` of a region boundary are skipped.
    """
    out = RegionCheck()
    for p in points:
        if system == "pointwise":
            a = float(p)
            if min(abs(a), abs(a - 2)) < eps:
                out.skipped += 1
                continue
            got, want = pointwise_stable(a), 0 < a < 2
        elif system == "boundary":
            mu1, mu2 = map(float, p)
            if min(abs(mu1 - 1), abs(mu2 - 1), abs(mu2 - mu1)) < eps:
                out.skipped += 1
                continue
            got, want = boundary_stable(mu1, mu2), ordering_predicate(mu1, mu2)
        else:
            raise ValueError(f"unknown system {system!r}")
        out.checked += 1
        if got != want:
            out.disagreements.append((p, got, want))
    return out
