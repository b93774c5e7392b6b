"""Gaussian two-mode quadrature algebra at a single sideband frequency.

Covariance matrices are plain 4x4 numpy arrays over the quadratures
(x1, p1, x2, p2) of the signal/idler pair, in shot-noise units where the
vacuum state is the identity matrix. `rotate_basis` moves to the +-45 degree
superposition modes a_pm = (a1 +- a2)/sqrt(2) and returns the ordering
(x+, p+, x-, p-), so the squeezed quadratures of an EPR pair sit at indices
1 (p+) and 2 (x-).

All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "IDX_P_PLUS",
    "IDX_X_MINUS",
    "ModeVariancePair",
    "PhysicalityReport",
    "two_mode_squeezed_cov",
    "rotate_basis",
    "apply_loss",
    "squeezed_mode_variances",
    "duan_inseparability",
    "check_physicality",
    "symplectic_form",
]

# indices of the squeezed quadratures in the rotated ordering (x+, p+, x-, p-)
IDX_P_PLUS = 1
IDX_X_MINUS = 2

_SQRT2_INV = 1.0 / np.sqrt(2.0)

# quadrature map for the 50/50 superposition: rows give (x+, p+, x-, p-)
# in terms of (x1, p1, x2, p2); orthogonal, symmetric, hence an involution
_ROTATION = _SQRT2_INV * np.array(
    [
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
        [1.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, -1.0],
    ]
)

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
_SIGMA = np.block([[_J, np.zeros((2, 2))], [np.zeros((2, 2)), _J]])


def symplectic_form() -> np.ndarray:
    """Two-mode symplectic form for the (x1, p1, x2, p2) ordering."""
    return _SIGMA.copy()


@dataclass(frozen=True)
class ModeVariancePair:
    """Squeezed-quadrature variances of the two superposition modes.

    `s_plus` is the variance of p+ and `s_minus` the variance of x-, both in
    shot-noise units (1.0 = vacuum). Scalars or equal-shape arrays.
    """

    s_plus: float | np.ndarray
    s_minus: float | np.ndarray

    def __post_init__(self):
        for name in ("s_plus", "s_minus"):
            v = np.asarray(getattr(self, name), dtype=float)
            if np.any(v <= 0) or not np.all(np.isfinite(v)):
                raise ValueError(f"{name} must be finite and strictly positive")


@dataclass(frozen=True)
class PhysicalityReport:
    ok: bool
    detail: str

    def __bool__(self):
        return self.ok


def _require_cov(cov, tol: float = 1e-9) -> np.ndarray:
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4):
        raise ValueError(f"covariance must be 4x4, got shape {cov.shape}")
    if not np.allclose(cov, cov.T, atol=tol, rtol=0.0):
        raise ValueError("covariance matrix is not symmetric")
    return cov


def two_mode_squeezed_cov(r: float) -> np.ndarray:
    """Covariance of the canonical EPR (two-mode squeezed vacuum) state.

    Diagonal cosh(2r); x1-x2 correlated by sinh(2r), p1-p2 anti-correlated
    by -sinh(2r). r = 0 gives vacuum; negative r swaps the correlated
    quadratures.
    """
    r = float(r)
    if not np.isfinite(r):
        raise ValueError("squeezing parameter must be finite")
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return np.array(
        [
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, -s],
            [s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ]
    )


def rotate_basis(cov: np.ndarray) -> np.ndarray:
    """Congruence transform to the +-45 degree superposition modes.

    Input ordering (x1, p1, x2, p2), output ordering (x+, p+, x-, p-). The
    mixing matrix is orthogonal and symmetric, so the map is an involution
    and preserves trace and determinant.
    """
    cov = _require_cov(cov)
    out = _ROTATION @ cov @ _ROTATION.T
    return 0.5 * (out + out.T)


def apply_loss(cov: np.ndarray, eta: float) -> np.ndarray:
    """Beam-splitter loss map V -> eta V + (1 - eta) I on both modes."""
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"efficiency must lie in [0, 1], got {eta}")
    cov = _require_cov(cov)
    return eta * cov + (1.0 - eta) * np.eye(4)


def squeezed_mode_variances(rotated_cov: np.ndarray) -> ModeVariancePair:
    """Extract (var p+, var x-) from a covariance in the rotated ordering."""
    rotated_cov = _require_cov(rotated_cov)
    return ModeVariancePair(
        s_plus=rotated_cov[IDX_P_PLUS, IDX_P_PLUS],
        s_minus=rotated_cov[IDX_X_MINUS, IDX_X_MINUS],
    )


def duan_inseparability(pair: ModeVariancePair) -> float | np.ndarray:
    """Half-sum of the superposition-mode squeezed variances.

    A value below 1.0 certifies signal/idler entanglement; vacuum sits
    exactly on the boundary.
    """
    s_plus = np.asarray(pair.s_plus, dtype=float)
    s_minus = np.asarray(pair.s_minus, dtype=float)
    out = 0.5 * (s_plus + s_minus)
    return float(out) if out.ndim == 0 else out


def check_physicality(cov: np.ndarray, tol: float = 1e-9) -> PhysicalityReport:
    """Check symmetry, positive semidefiniteness and the uncertainty relation.

    The uncertainty relation is V + i Sigma >= 0, tested through the
    eigenvalues of the associated Hermitian matrix.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4):
        return PhysicalityReport(False, f"wrong shape {cov.shape}")
    asym = float(np.max(np.abs(cov - cov.T)))
    if asym > tol:
        return PhysicalityReport(False, f"not symmetric (max asymmetry {asym:.3e})")
    sym = 0.5 * (cov + cov.T)
    min_eig = float(np.linalg.eigvalsh(sym).min())
    if min_eig < -tol:
        return PhysicalityReport(
            False, f"not positive semidefinite (min eigenvalue {min_eig:.3e})"
        )
    herm = sym + 1j * _SIGMA
    min_unc = float(np.linalg.eigvalsh(herm).min())
    if min_unc < -tol:
        return PhysicalityReport(
            False, f"violates uncertainty relation (min eigenvalue {min_unc:.3e})"
        )
    return PhysicalityReport(True, "physical")
