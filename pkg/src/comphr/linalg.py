"""Dense complex-matrix kernel for small Hermitian systems.

Matrices are plain numpy arrays of complex dtype.  Everything here is sized
for systems with at most a few tens of levels: no sparsity, no iterative
solvers.  Propagators are computed by spectral decomposition of the (tiny)
Hermitian generator, which keeps them unitary to round-off for any time
argument.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

# Constructed matrices must be symmetric to round-off; anything worse is a bug
# in the caller, not noise.
HERMITICITY_TOL = 1e-12


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValidationError(f"{name} must be two-dimensional, got shape {a.shape}")
    return a


def require_square(m, name: str = "matrix") -> np.ndarray:
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    return a


def require_hermitian(h, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return h as a complex array, raising unless it is Hermitian within tol."""
    a = require_square(h, "generator")
    if not np.all(np.isfinite(a)):
        raise ValidationError("generator contains NaN or Inf entries")
    defect = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if defect > tol:
        raise ValidationError(f"generator is not Hermitian (max asymmetry {defect:.3e})")
    return a


def expm_hermitian(h, t: float) -> np.ndarray:
    """exp(-i*h*t) for a Hermitian matrix h.

    Uses the real-eigenvalue spectral decomposition, so the result is unitary
    to round-off regardless of t.
    """
    a = require_hermitian(h)
    t = float(t)
    if not np.isfinite(t):
        raise ValidationError("time must be finite")
    return expm_hermitian_stack(a, t)


def expm_hermitian_stack(h: np.ndarray, t) -> np.ndarray:
    """Batched exp(-i*h*t) over the leading axes of h (and of t, broadcast).

    No validation: callers construct Hermitian stacks.
    """
    w, v = np.linalg.eigh(h)
    phase = np.exp(-1j * np.asarray(t, dtype=float)[..., None] * w)
    return (v * phase[..., None, :]) @ v.conj().swapaxes(-1, -2)


def frobenius_distance(x, y) -> float:
    """sqrt(sum |x_jk - y_jk|^2) for same-shape matrices."""
    a = as_matrix(x, "x")
    b = as_matrix(y, "y")
    if a.shape != b.shape:
        raise ValidationError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def unitarity_defect(u) -> float:
    """Frobenius norm of u^dagger u - I."""
    a = require_square(u, "operator")
    eye = np.eye(a.shape[0])
    return float(np.linalg.norm(a.conj().T @ a - eye))
