"""Bipartite pure states stored as amplitude matrices.

A state ``sum_ij C[i, j] |i_A>|j_B>`` is held as the matrix ``C`` with rows
indexing subsystem A and columns subsystem B. Local operators act as
``C -> U_A @ C @ U_B.T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
import numpy.typing as npt

from .errors import InvalidInputError, InvalidPartitionError
from .linalg import ComplexMatrix, as_matrix, frobenius_norm

NORM_TOL = 1e-9
UNITARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized bipartite pure state.

    Construction checks the Frobenius norm of ``amplitudes`` against 1 with
    tolerance ``NORM_TOL`` and rescales it to exactly unit norm. The stored
    array is read-only.
    """

    amplitudes: ComplexMatrix

    def __post_init__(self) -> None:
        arr = as_matrix(self.amplitudes, "amplitudes")
        norm = frobenius_norm(arr)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidInputError(f"state is not normalized (norm = {norm!r})")
        arr = arr / norm
        arr.flags.writeable = False
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim_a(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def dim_b(self) -> int:
        return self.amplitudes.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.amplitudes.shape

    def vector(self) -> np.ndarray:
        """Amplitudes flattened in the |i_A j_B> product basis (A index slowest)."""
        return self.amplitudes.reshape(-1).copy()

    def __repr__(self) -> str:
        return f"PureState(dim_a={self.dim_a}, dim_b={self.dim_b})"


def _unit_vector(phi: npt.ArrayLike, name: str) -> np.ndarray:
    vec = np.asarray(phi)
    if vec.ndim != 1 or vec.size < 1:
        raise InvalidInputError(f"{name} must be a non-empty 1-D vector")
    vec = vec.astype(np.complex128)
    if not np.all(np.isfinite(vec)):
        raise InvalidInputError(f"{name} has non-finite entries")
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > NORM_TOL:
        raise InvalidInputError(f"{name} is not a unit vector (norm = {norm!r})")
    return vec / norm


def product_state(phi_a: npt.ArrayLike, phi_b: npt.ArrayLike) -> PureState:
    """Tensor product ``|phi_a> (x) |phi_b>`` of two unit vectors."""
    a = _unit_vector(phi_a, "phi_a")
    b = _unit_vector(phi_b, "phi_b")
    return PureState(np.outer(a, b))


def _probability_vector(lambdas: npt.ArrayLike) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size < 1:
        raise InvalidInputError("Schmidt vector must be a non-empty 1-D array")
    if not np.all(np.isfinite(lam)):
        raise InvalidInputError("Schmidt vector has non-finite entries")
    if np.any(lam < 0):
        raise InvalidInputError("Schmidt vector has negative entries")
    total = lam.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise InvalidInputError(f"Schmidt vector sums to {total!r}, not 1")
    return lam / total


def schmidt_diagonal_state(lambdas: npt.ArrayLike) -> PureState:
    """The state ``sum_i sqrt(lambda_i) |i_A i_B>`` in the computational basis."""
    lam = _probability_vector(lambdas)
    return PureState(np.diag(np.sqrt(lam)).astype(np.complex128))


def random_pure_state(dim_a: int, dim_b: int, seed: int | np.random.Generator | None = None) -> PureState:
    """Haar-random pure state on ``C^dim_a (x) C^dim_b``.

    Entries are i.i.d. standard complex normals, then normalized. The same
    integer seed always gives the same state.
    """
    if dim_a < 1 or dim_b < 1:
        raise InvalidInputError("dimensions must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim_a, dim_b)) + 1j * rng.standard_normal((dim_a, dim_b))
    return PureState(z / np.linalg.norm(z))


def check_unitary(u: npt.ArrayLike, dim: int, name: str = "operator") -> ComplexMatrix:
    arr = as_matrix(u, name)
    if arr.shape != (dim, dim):
        raise InvalidInputError(f"{name} must be {dim}x{dim}, got {arr.shape}")
    err = frobenius_norm(arr.conj().T @ arr - np.eye(dim))
    if err > UNITARY_TOL:
        raise InvalidInputError(f"{name} is not unitary (||U^H U - I||_F = {err:.3e})")
    return arr


def apply_local_unitaries(psi: PureState, u_a: npt.ArrayLike, u_b: npt.ArrayLike) -> PureState:
    """Apply ``u_a (x) u_b`` to ``psi``."""
    ua = check_unitary(u_a, psi.dim_a, "u_a")
    ub = check_unitary(u_b, psi.dim_b, "u_b")
    out = ua @ psi.amplitudes @ ub.T
    # unitaries are only checked to 1e-9, so renormalize explicitly
    return PureState(out / frobenius_norm(out))


def reduced_density_matrix(psi: PureState, subsystem: Literal["A", "B"] = "A") -> ComplexMatrix:
    """Partial trace of ``|psi><psi|`` onto one subsystem.

    ``rho_A = C C^H`` and ``rho_B = C^T conj(C)``.
    """
    c = psi.amplitudes
    key = str(subsystem).upper()
    if key == "A":
        rho = c @ c.conj().T
    elif key == "B":
        rho = c.T @ c.conj()
    else:
        raise InvalidInputError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return 0.5 * (rho + rho.conj().T)


def bipartition(
    amplitude_tensor: npt.ArrayLike,
    part_a: Sequence[int],
    dims: Sequence[int] | None = None,
) -> PureState:
    """Group the factors of a multipartite pure state into a bipartite cut.

    Parameters
    ----------
    amplitude_tensor : array_like
        Either an ``n``-dimensional array whose axes are the factors, or a
        flat vector in row-major order (factor 0 slowest) together with
        ``dims``.
    part_a : sequence of int
        Zero-based factor indices forming subsystem A. Must be a nonempty
        proper subset.
    dims : sequence of int, optional
        Per-factor dimensions; required when ``amplitude_tensor`` is flat.

    Returns
    -------
    PureState
        Rows run over the multi-index of ``part_a`` (in ascending factor
        order), columns over the complement.
    """
    t = np.asarray(amplitude_tensor, dtype=np.complex128)
    if dims is not None:
        dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in dims):
            raise InvalidInputError("factor dimensions must be >= 1")
        if t.size != int(np.prod(dims)):
            raise InvalidInputError(f"tensor has {t.size} entries, dims {dims} need {int(np.prod(dims))}")
        t = t.reshape(dims)
    n = t.ndim
    part = sorted(set(int(i) for i in part_a))
    if not part or len(part) >= n:
        raise InvalidPartitionError(f"part_a must be a nonempty proper subset of {n} factors, got {list(part_a)}")
    if part[0] < 0 or part[-1] >= n:
        raise InvalidPartitionError(f"factor index out of range for {n} factors: {list(part_a)}")
    rest = [i for i in range(n) if i not in part]
    rows = int(np.prod([t.shape[i] for i in part]))
    return PureState(np.transpose(t, part + rest).reshape(rows, -1))
