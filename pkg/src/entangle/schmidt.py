"""Schmidt decomposition and Schmidt-basis outcome statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .linalg import ComplexMatrix, svd
from .states import PureState, _probability_vector

# Schmidt parameters below this are treated as exact zeros
LAMBDA_CLAMP = 1e-12


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``psi = sum_i sqrt(lambdas[i]) basis_a[:, i] (x) basis_b[:, i]``.

    ``lambdas`` is descending with length ``min(dim_a, dim_b)``.
    """

    lambdas: np.ndarray
    basis_a: ComplexMatrix
    basis_b: ComplexMatrix

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.lambdas))

    def reconstruct(self) -> np.ndarray:
        """Amplitude matrix rebuilt from the decomposition."""
        return (self.basis_a * np.sqrt(self.lambdas)) @ self.basis_b.T


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """Outcome probabilities for local measurements in the Schmidt bases.

    ``conditional[n, m]`` is ``P(n_A | m_B)``. It is a masked array: columns
    with ``marginal_b[m] == 0`` are masked because the condition never occurs.
    """

    marginal_a: np.ndarray
    marginal_b: np.ndarray
    joint: np.ndarray
    conditional: np.ma.MaskedArray


def clamp_lambdas(values: npt.ArrayLike) -> np.ndarray:
    lam = np.asarray(values, dtype=float).copy()
    lam[lam < LAMBDA_CLAMP] = 0.0
    return lam / lam.sum()


def schmidt_decompose(psi: PureState) -> SchmidtDecomposition:
    """Schmidt decomposition from the SVD of the amplitude matrix.

    ``lambdas`` are the squared singular values, with entries below
    ``LAMBDA_CLAMP`` set to zero and the rest renormalized. With
    ``C = U diag(sigma) V^H`` the local bases are ``U`` and ``conj(V)``.
    """
    u, sigma, v = svd(psi.amplitudes)
    return SchmidtDecomposition(clamp_lambdas(sigma**2), u, v.conj())


def schmidt_coefficients(psi: PureState) -> np.ndarray:
    """Descending Schmidt parameters of ``psi``."""
    return schmidt_decompose(psi).lambdas


def _lambdas_of(obj: SchmidtDecomposition | npt.ArrayLike) -> np.ndarray:
    if isinstance(obj, SchmidtDecomposition):
        return obj.lambdas
    return _probability_vector(obj)


def probability_table(sd: SchmidtDecomposition | npt.ArrayLike) -> ProbabilityTable:
    """Marginal, joint and conditional probabilities in the Schmidt bases.

    Accepts a decomposition or a bare Schmidt vector. Measuring both
    particles in their Schmidt bases gives perfectly correlated outcomes, so
    the joint distribution is ``diag(lambdas)`` and both marginals equal
    ``lambdas``.
    """
    lam = _lambdas_of(sd)
    joint = np.diag(lam)
    undefined = np.broadcast_to(lam <= 0.0, joint.shape)
    cond = np.divide(joint, lam[np.newaxis, :], out=np.zeros_like(joint), where=~undefined)
    return ProbabilityTable(
        marginal_a=lam.copy(),
        marginal_b=lam.copy(),
        joint=joint,
        conditional=np.ma.masked_array(cond, mask=undefined.copy()),
    )


def correlation_matrix(table: ProbabilityTable) -> np.ndarray:
    """``|P(n_A, m_B) - P(n_A) P(m_B)|`` for every outcome pair."""
    return np.abs(table.joint - np.outer(table.marginal_a, table.marginal_b))


def separable_reference_state(lambdas: npt.ArrayLike) -> PureState:
    """Product state with the same single-particle statistics as ``lambdas``.

    Returns ``(sum_i sqrt(l_i)|i_A>) (x) (sum_j sqrt(l_j)|j_B>)``.
    """
    lam = _probability_vector(lambdas)
    amp = np.sqrt(lam)
    return PureState(np.outer(amp, amp).astype(np.complex128))
