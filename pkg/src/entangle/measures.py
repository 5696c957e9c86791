"""Entanglement measures on Schmidt vectors, plus majorization helpers.

The main measure is built from probability differences. For an ``N``-level
Schmidt vector it is ``N/[2(N-1)]`` times the summed absolute gap between
joint and product probabilities, which simplifies to
``N/(N-1) * (1 - sum(lambda**2))``. Both routes are provided so each can
check the other.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
import numpy.typing as npt

from .errors import InvalidInputError, UndefinedMeasureError
from .schmidt import ProbabilityTable, correlation_matrix, probability_table, schmidt_decompose
from .states import PureState, _probability_vector

MAJORIZATION_TOL = 1e-12
_SUM_TOL = 1e-9


def _require_levels(n: int) -> None:
    if n < 2:
        raise UndefinedMeasureError(
            f"measure is undefined for N = {n}: normalization N/(N-1) diverges and every state is separable"
        )


def entanglement_probability_sum(table: ProbabilityTable, n_schmidt: int | None = None) -> float:
    """``N/[2(N-1)] * sum_{n,m} |P(n_A, m_B) - P(n_A) P(m_B)|``.

    ``n_schmidt`` defaults to the table size; pass ``min(dim_a, dim_b)``
    explicitly when the table comes from elsewhere.
    """
    n = int(table.joint.shape[0] if n_schmidt is None else n_schmidt)
    _require_levels(n)
    total = float(np.sum(correlation_matrix(table)))
    return min(1.0, max(0.0, n / (2.0 * (n - 1)) * total))


def entanglement_closed_form(lambdas: npt.ArrayLike) -> float:
    """``N/(N-1) * (1 - sum(lambda_i**2))`` for a Schmidt vector of length N."""
    lam = _probability_vector(lambdas)
    n = lam.size
    _require_levels(n)
    # clip rounding noise only; the analytic range is [0, 1]
    return min(1.0, max(0.0, n / (n - 1.0) * (1.0 - float(np.dot(lam, lam)))))


def entanglement(psi: PureState) -> float:
    """Closed-form measure of a state, via its Schmidt vector."""
    return entanglement_closed_form(schmidt_decompose(psi).lambdas)


def entropy_of_entanglement(lambdas: npt.ArrayLike) -> float:
    """Von Neumann entropy ``-sum(l ln l)`` in nats, with ``0 ln 0 = 0``."""
    lam = _probability_vector(lambdas)
    nz = lam[lam > 0]
    return float(max(0.0, -np.sum(nz * np.log(nz))))


def two_entropy(lambdas: npt.ArrayLike) -> float:
    """Linear 2-entropy ``1 - sum(lambda_i**2)``."""
    lam = _probability_vector(lambdas)
    return 1.0 - float(np.dot(lam, lam))


def renyi2_entropy(lambdas: npt.ArrayLike) -> float:
    """Renyi-2 entropy ``-ln sum(lambda_i**2)`` in nats."""
    lam = _probability_vector(lambdas)
    return float(max(0.0, -np.log(np.dot(lam, lam))))


def _padded_pair(x: npt.ArrayLike, y: npt.ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    xs = np.asarray(x, dtype=float).ravel()
    ys = np.asarray(y, dtype=float).ravel()
    for name, v in (("x", xs), ("y", ys)):
        if v.size == 0 or not np.all(np.isfinite(v)) or np.any(v < 0):
            raise InvalidInputError(f"{name} must be a nonempty, finite, nonnegative vector")
        if abs(v.sum() - 1.0) > _SUM_TOL:
            raise InvalidInputError(f"{name} sums to {v.sum()!r}, not 1")
    n = max(xs.size, ys.size)
    xs = np.pad(xs, (0, n - xs.size))
    ys = np.pad(ys, (0, n - ys.size))
    return xs, ys


def majorizes(x: npt.ArrayLike, y: npt.ArrayLike) -> bool:
    """True iff ``x`` is majorized by ``y`` (``x < y`` in majorization order).

    Both vectors are sorted descending and zero-padded to a common length.
    Every partial sum of ``x`` must be at most the matching partial sum of
    ``y`` plus ``MAJORIZATION_TOL``.
    """
    xs, ys = _padded_pair(x, y)
    px = np.cumsum(np.sort(xs)[::-1])
    py = np.cumsum(np.sort(ys)[::-1])
    return bool(np.all(px <= py + MAJORIZATION_TOL))


def power_sum(x: npt.ArrayLike, q: float) -> float:
    """``sum(x_i**q)``; Schur convex for ``q >= 1``."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0):
        raise InvalidInputError("power_sum needs a nonnegative vector")
    if q < 1:
        raise InvalidInputError(f"power_sum needs q >= 1, got {q}")
    return float(np.sum(xs**q))


@dataclass(frozen=True)
class EntanglementReport:
    e_probability_sum: float
    e_closed_form: float
    entropy_of_entanglement: float
    two_entropy: float
    renyi2: float
    schmidt_rank: int
    lambdas: tuple[float, ...]
    dim_a: int
    dim_b: int

    def to_dict(self) -> dict:
        out = asdict(self)
        out["lambdas"] = list(self.lambdas)
        return out


def entanglement_report(psi: PureState) -> EntanglementReport:
    """Every measure for one state.

    Raises
    ------
    UndefinedMeasureError
        If either subsystem has a single level.
    """
    sd = schmidt_decompose(psi)
    lam = sd.lambdas
    n = lam.size
    _require_levels(n)
    return EntanglementReport(
        e_probability_sum=entanglement_probability_sum(probability_table(sd), n),
        e_closed_form=entanglement_closed_form(lam),
        entropy_of_entanglement=entropy_of_entanglement(lam),
        two_entropy=two_entropy(lam),
        renyi2=renyi2_entropy(lam),
        schmidt_rank=sd.rank,
        lambdas=tuple(float(v) for v in lam),
        dim_a=psi.dim_a,
        dim_b=psi.dim_b,
    )
