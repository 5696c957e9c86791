"""Local general measurements with classical communication on pure states.

Alice applies an instrument ``{A_i}`` and Bob an instrument ``{B_j}``. The
joint outcome ``(i, j)`` occurs with probability ``||(A_i (x) B_j) psi||^2``
and leaves the normalized state ``(A_i (x) B_j) psi / sqrt(p)``. Classical
communication enters by letting Bob's instrument depend on Alice's result:
pass one set per Alice outcome instead of a single set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import numpy.typing as npt
from scipy.stats import unitary_group

from .errors import InvalidInputError
from .linalg import ComplexMatrix, as_matrix, frobenius_norm
from .measures import entanglement, majorizes
from .schmidt import schmidt_decompose
from .states import PureState

COMPLETENESS_TOL = 1e-9
# outcomes this unlikely carry no post-measurement state
ZERO_PROBABILITY = 1e-14


@dataclass(frozen=True, eq=False)
class LocalMeasurementSet:
    """Measurement operators on one subsystem with ``sum_k A_k^H A_k = I``."""

    operators: tuple[ComplexMatrix, ...]

    def __post_init__(self) -> None:
        ops = tuple(as_matrix(a, "measurement operator") for a in self.operators)
        if not ops:
            raise InvalidInputError("a measurement set needs at least one operator")
        dim = ops[0].shape[0]
        for a in ops:
            if a.shape != (dim, dim):
                raise InvalidInputError(f"operators must all be {dim}x{dim}, got {a.shape}")
        err = self._completeness_error(ops, dim)
        if err > COMPLETENESS_TOL:
            raise InvalidInputError(f"operators are not complete (||sum A^H A - I||_F = {err:.3e})")
        for a in ops:
            a.flags.writeable = False
        object.__setattr__(self, "operators", ops)

    @staticmethod
    def _completeness_error(ops: Sequence[np.ndarray], dim: int) -> float:
        total = sum(a.conj().T @ a for a in ops)
        return frobenius_norm(total - np.eye(dim))

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self) -> int:
        return len(self.operators)

    def completeness_error(self) -> float:
        return self._completeness_error(self.operators, self.dim)


@dataclass(frozen=True)
class MeasurementOutcome:
    index: int
    probability: float
    post_state: PureState | None
    outcome_a: int = 0
    outcome_b: int = 0


@dataclass(frozen=True)
class MonotonicityTrial:
    e_before: float
    outcomes: list[MeasurementOutcome] = field(repr=False)
    e_average_after: float
    margin: float


def random_unitary(dim: int, seed: int | np.random.Generator | None = None) -> ComplexMatrix:
    """Haar-random ``dim x dim`` unitary."""
    if dim < 1:
        raise InvalidInputError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()).reshape(1, 1)
    return unitary_group.rvs(dim, random_state=rng)


def random_measurement_set(
    dim: int, k_outcomes: int, seed: int | np.random.Generator | None = None
) -> LocalMeasurementSet:
    """Random complete instrument with ``k_outcomes`` operators.

    The first ``dim`` columns of a Haar unitary on ``C^(dim * k_outcomes)``
    form an isometry; its ``k_outcomes`` stacked ``dim x dim`` blocks are the
    operators.
    """
    if dim < 1 or k_outcomes < 1:
        raise InvalidInputError("dim and k_outcomes must be >= 1")
    iso = random_unitary(dim * k_outcomes, seed)[:, :dim]
    return LocalMeasurementSet(tuple(iso[k * dim:(k + 1) * dim] for k in range(k_outcomes)))


def trivial_measurement_set(dim: int) -> LocalMeasurementSet:
    """The do-nothing instrument ``{I}``."""
    return LocalMeasurementSet((np.eye(dim, dtype=np.complex128),))


def projective_measurement_set(basis: npt.ArrayLike | int) -> LocalMeasurementSet:
    """Rank-one projectors onto the columns of a unitary ``basis``.

    An integer ``d`` selects the computational basis of ``C^d``.
    """
    b = np.eye(basis, dtype=np.complex128) if isinstance(basis, (int, np.integer)) else as_matrix(basis, "basis")
    return LocalMeasurementSet(tuple(np.outer(b[:, k], b[:, k].conj()) for k in range(b.shape[1])))


def apply_lgm(
    psi: PureState,
    set_a: LocalMeasurementSet,
    set_b: LocalMeasurementSet | Sequence[LocalMeasurementSet],
) -> list[MeasurementOutcome]:
    """Outcome ensemble of a one-way LGM+CC round.

    Parameters
    ----------
    psi : PureState
    set_a : LocalMeasurementSet
        Alice's instrument, acting on the rows of the amplitude matrix.
    set_b : LocalMeasurementSet or sequence of LocalMeasurementSet
        Bob's instrument. A sequence supplies one instrument per Alice
        outcome, chosen after her result is communicated.

    Returns
    -------
    list of MeasurementOutcome
        Ordered by Alice's outcome, then Bob's. ``index`` is the position in
        this list. Outcomes with probability at most ``ZERO_PROBABILITY``
        have ``post_state = None``.
    """
    if set_a.dim != psi.dim_a:
        raise InvalidInputError(f"set_a acts on dim {set_a.dim}, state has dim_a = {psi.dim_a}")
    if isinstance(set_b, LocalMeasurementSet):
        conditional = [set_b] * len(set_a)
    else:
        conditional = list(set_b)
        if len(conditional) != len(set_a):
            raise InvalidInputError(
                f"need one Bob instrument per Alice outcome: {len(set_a)} outcomes, {len(conditional)} instruments"
            )
    for sb in conditional:
        if sb.dim != psi.dim_b:
            raise InvalidInputError(f"set_b acts on dim {sb.dim}, state has dim_b = {psi.dim_b}")

    c = psi.amplitudes
    outcomes = []
    for i, a in enumerate(set_a.operators):
        ac = a @ c
        for j, b in enumerate(conditional[i].operators):
            post = ac @ b.T
            p = frobenius_norm(post) ** 2
            state = PureState(post / np.sqrt(p)) if p > ZERO_PROBABILITY else None
            outcomes.append(MeasurementOutcome(len(outcomes), p, state, i, j))
    return outcomes


def monotonicity_trial(
    psi: PureState,
    set_a: LocalMeasurementSet,
    set_b: LocalMeasurementSet | Sequence[LocalMeasurementSet],
) -> MonotonicityTrial:
    """Compare the measure before a round with its outcome-weighted average after."""
    outcomes = apply_lgm(psi, set_a, set_b)
    e_before = entanglement(psi)
    e_after = sum(o.probability * entanglement(o.post_state) for o in outcomes if o.post_state is not None)
    return MonotonicityTrial(e_before, outcomes, e_after, e_before - e_after)


def locc_transformable(psi: PureState, phi: PureState) -> bool:
    """Whether LGM+CC can deterministically turn ``psi`` into ``phi``.

    True iff the Schmidt vector of ``psi`` is majorized by that of ``phi``.
    """
    return majorizes(schmidt_decompose(psi).lambdas, schmidt_decompose(phi).lambdas)
