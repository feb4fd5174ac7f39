"""Small symmetric matrix helpers (k <= 4 in practice)."""

from __future__ import annotations

import numpy as np

from .errors import SingularInformation

COND_MAX = 1e12


def symmetrize(m) -> np.ndarray:
    m = np.atleast_2d(np.asarray(m, dtype=float))
    return 0.5 * (m + m.T)


def min_eig(m) -> float:
    return float(np.linalg.eigvalsh(symmetrize(m))[0])


def sym_inverse(m, cond_max: float = COND_MAX) -> np.ndarray:
    """Inverse of a symmetric positive definite matrix via eigendecomposition.

    Raises SingularInformation when an eigenvalue is non-positive or the
    condition number exceeds ``cond_max``.
    """
    w, v = np.linalg.eigh(symmetrize(m))
    if w[0] <= 0.0 or w[-1] / w[0] > cond_max:
        raise SingularInformation(
            f"matrix not invertible within condition bound {cond_max:g} (eigenvalues {w.tolist()})"
        )
    return symmetrize((v / w) @ v.T)


def is_psd(m, rel_tol: float = 1e-8) -> bool:
    m = symmetrize(m)
    scale = max(abs(float(np.trace(m))), 1.0)
    return min_eig(m) >= -rel_tol * scale


def sym_inverse_many(ms, cond_max: float = COND_MAX) -> np.ndarray:
    """Batched :func:`sym_inverse` over a stack of shape (N, k, k)."""
    ms = np.asarray(ms, dtype=float)
    w, v = np.linalg.eigh(0.5 * (ms + np.swapaxes(ms, -1, -2)))
    bad = (w[:, 0] <= 0.0) | (w[:, -1] > cond_max * w[:, 0])
    if np.any(bad):
        i = int(np.argmax(bad))
        raise SingularInformation(
            f"matrix {i} not invertible within condition bound {cond_max:g} (eigenvalues {w[i].tolist()})"
        )
    inv = np.einsum("nik,nk,njk->nij", v, 1.0 / w, v)
    return 0.5 * (inv + np.swapaxes(inv, -1, -2))


def min_eig_many(ms) -> np.ndarray:
    ms = np.asarray(ms, dtype=float)
    return np.linalg.eigvalsh(0.5 * (ms + np.swapaxes(ms, -1, -2)))[:, 0]
