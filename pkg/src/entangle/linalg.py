"""Dense complex kernels for small matrices.

The singular value decomposition is a one-sided (Hestenes) Jacobi iteration
with a round-robin pair ordering, so every rotation inside a round acts on
disjoint column pairs and can be applied as one vectorized update. For the
sizes used here (dimensions up to a few dozen) it converges in a handful of
sweeps and returns singular values to high relative accuracy.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from .errors import InvalidInputError, NumericalFailureError

ComplexMatrix = npt.NDArray[np.complex128]

_EPS = np.finfo(np.float64).eps
# off-diagonal magnitudes this small are noise, rotating on them overflows
_TINY = np.finfo(np.float64).tiny / _EPS
_HERMITIAN_TOL = 1e-9


def as_matrix(c: npt.ArrayLike, name: str = "matrix") -> ComplexMatrix:
    """Return ``c`` as a finite 2-D complex128 array or raise InvalidInputError."""
    arr = np.asarray(c)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInputError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    try:
        arr = arr.astype(np.complex128, copy=False)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name} has non-numeric entries") from exc
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


def frobenius_norm(c: npt.ArrayLike) -> float:
    """Square root of the sum of squared entry magnitudes."""
    arr = as_matrix(c)
    return float(np.sqrt(np.sum(arr.real**2 + arr.imag**2)))


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pair schedule covering every (p, q), p < q, once per sweep."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < 0 or b < 0:
                continue
            ps.append(min(a, b))
            qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _complete_orthonormal(u: ComplexMatrix, filled: np.ndarray) -> ComplexMatrix:
    """Replace the columns of ``u`` not flagged in ``filled`` by an orthonormal completion."""
    m, k = u.shape
    basis = [u[:, j] for j in range(k) if filled[j]]
    candidates = iter(np.eye(m, dtype=np.complex128))
    out = u.copy()
    for j in range(k):
        if filled[j]:
            continue
        for e in candidates:
            v = e.copy()
            # two passes of Gram-Schmidt for numerical orthogonality
            for _ in range(2):
                for b in basis:
                    v -= np.vdot(b, v) * b
            nv = np.linalg.norm(v)
            if nv > 1e-8:
                v /= nv
                basis.append(v)
                out[:, j] = v
                break
    return out


def _jacobi_tall(a: ComplexMatrix) -> tuple[ComplexMatrix, np.ndarray, ComplexMatrix]:
    m, n = a.shape
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    rounds = _round_robin(n)
    max_sweeps = 100 * max(m, n)
    # relative off-diagonal size below which a column pair counts as orthogonal
    tol = m * _EPS
    for _ in range(max_sweeps):
        rotated = False
        for p, q in rounds:
            if p.size == 0:
                continue
            ap, aq = a[:, p], a[:, q]
            alpha = np.sum(ap.real**2 + ap.imag**2, axis=0)
            beta = np.sum(aq.real**2 + aq.imag**2, axis=0)
            gamma = np.sum(ap.conj() * aq, axis=0)
            g = np.abs(gamma)
            active = (g > tol * np.sqrt(alpha) * np.sqrt(beta)) & (g > _TINY)
            if not np.any(active):
                continue
            rotated = True
            g_safe = np.where(active, g, 1.0)
            phase = np.where(active, gamma / g_safe, 1.0)
            zeta = (beta - alpha) / (2.0 * g_safe)
            sign = np.where(zeta >= 0, 1.0, -1.0)
            t = np.where(active, sign / (np.abs(zeta) + np.hypot(1.0, zeta)), 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            aq = aq * phase.conj()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            vp, vq = v[:, p], v[:, q] * phase.conj()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
        if not rotated:
            break
    else:
        raise NumericalFailureError(f"Jacobi SVD did not converge in {max_sweeps} sweeps")

    sigma = np.linalg.norm(a, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, a, v = sigma[order], a[:, order], v[:, order]
    scale = sigma.max(initial=0.0)
    filled = sigma > max(scale, 1e-300) * 1e-14
    u = np.zeros((m, n), dtype=np.complex128)
    u[:, filled] = a[:, filled] / sigma[filled]
    if not np.all(filled):
        u = _complete_orthonormal(u, filled)
    return u, sigma, v


def svd(c: npt.ArrayLike) -> tuple[ComplexMatrix, np.ndarray, ComplexMatrix]:
    """Thin singular value decomposition ``C = U @ diag(sigma) @ V^H``.

    Parameters
    ----------
    c : array_like, shape (m, n)
        Finite complex (or real) matrix.

    Returns
    -------
    u : ndarray, shape (m, k)
        Orthonormal left singular vectors, ``k = min(m, n)``.
    sigma : ndarray, shape (k,)
        Singular values, non-negative and sorted descending. Ties keep
        their pre-sort column order.
    v : ndarray, shape (n, k)
        Orthonormal right singular vectors.

    Raises
    ------
    InvalidInputError
        If ``c`` is empty or contains NaN/Inf.
    NumericalFailureError
        If the sweep cap ``100 * max(m, n)`` is reached.
    """
    arr = as_matrix(c)
    m, n = arr.shape
    if m >= n:
        return _jacobi_tall(arr)
    u, sigma, v = _jacobi_tall(arr.conj().T)
    return v, sigma, u


def hermitian_eig(m: npt.ArrayLike) -> tuple[np.ndarray, ComplexMatrix]:
    """Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix.

    Hermiticity is checked to a relative Frobenius tolerance of 1e-9; the
    matrix is symmetrized before the LAPACK call.
    """
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise InvalidInputError(f"matrix must be square, got shape {arr.shape}")
    skew = frobenius_norm(arr - arr.conj().T)
    if skew > _HERMITIAN_TOL * frobenius_norm(arr):
        raise InvalidInputError(f"matrix is not Hermitian (||M - M^H||_F = {skew:.3e})")
    w, vecs = np.linalg.eigh(0.5 * (arr + arr.conj().T))
    order = np.argsort(-w, kind="stable")
    return w[order], np.ascontiguousarray(vecs[:, order])
