"""Seeded randomized property campaigns behind ``entangle verify``.

Trial ``i`` of a campaign draws all of its randomness from
``numpy.random.default_rng(seed + i)``, so results do not depend on how
trials are scheduled across worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .locc import monotonicity_trial, random_measurement_set, random_unitary, trivial_measurement_set
from .measures import entanglement_closed_form, entanglement_probability_sum, majorizes
from .schmidt import probability_table, schmidt_decompose
from .states import apply_local_unitaries, random_pure_state

SUITES = ("equivalence", "monotonicity", "invariance", "majorization")


@dataclass(frozen=True)
class TrialResult:
    index: int
    seed: int
    value: float
    passed: bool
    detail: str = ""


@dataclass
class SuiteSummary:
    suite: str
    trials: int
    tolerance: float
    criterion: str
    results: list[TrialResult] = field(repr=False)

    @property
    def failures(self) -> list[TrialResult]:
        return [r for r in self.results if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def worst(self) -> float:
        values = [r.value for r in self.results]
        # equivalence/invariance report errors (larger is worse), the others margins
        return max(values) if self.suite in ("equivalence", "invariance") else min(values)

    def to_dict(self) -> dict:
        values = np.array([r.value for r in self.results])
        return {
            "suite": self.suite,
            "criterion": self.criterion,
            "tolerance": self.tolerance,
            "trials": self.trials,
            "failures": len(self.failures),
            "worst": float(self.worst()),
            "median": float(np.median(values)),
            "failed_trials": [
                {"index": r.index, "seed": r.seed, "value": r.value, "detail": r.detail} for r in self.failures
            ],
        }


def _dims(rng: np.random.Generator, max_dim: int) -> tuple[int, int]:
    hi = max(2, max_dim)
    return int(rng.integers(2, hi + 1)), int(rng.integers(2, hi + 1))


def equivalence_trial(index: int, seed: int, max_dim: int, tolerance: float) -> TrialResult:
    """Probability-sum route against closed form on one random state."""
    rng = np.random.default_rng(seed)
    da, db = _dims(rng, max_dim)
    sd = schmidt_decompose(random_pure_state(da, db, rng))
    err = abs(entanglement_probability_sum(probability_table(sd)) - entanglement_closed_form(sd.lambdas))
    return TrialResult(index, seed, err, err <= tolerance, f"dims=({da},{db})")


def invariance_trial(index: int, seed: int, max_dim: int, tolerance: float) -> TrialResult:
    """Change of the measure under random local unitaries."""
    rng = np.random.default_rng(seed)
    da, db = _dims(rng, max_dim)
    psi = random_pure_state(da, db, rng)
    moved = apply_local_unitaries(psi, random_unitary(da, rng), random_unitary(db, rng))
    delta = abs(
        entanglement_closed_form(schmidt_decompose(moved).lambdas)
        - entanglement_closed_form(schmidt_decompose(psi).lambdas)
    )
    return TrialResult(index, seed, delta, delta <= tolerance, f"dims=({da},{db})")


def monotonicity_campaign_trial(index: int, seed: int, max_dim: int, tolerance: float) -> TrialResult:
    """One random LGM+CC round: ``E_before - sum_k p_k E_k``.

    The trial index cycles through three protocol shapes: Alice alone,
    independent instruments on both sides, and Bob's instrument chosen by
    Alice's communicated outcome.
    """
    rng = np.random.default_rng(seed)
    da, db = _dims(rng, max_dim)
    psi = random_pure_state(da, db, rng)
    set_a = random_measurement_set(da, int(rng.integers(1, 5)), rng)
    kind = index % 3
    if kind == 0:
        set_b = trivial_measurement_set(db)
        label = "one-sided"
    elif kind == 1:
        set_b = random_measurement_set(db, int(rng.integers(1, 5)), rng)
        label = "independent"
    else:
        set_b = [random_measurement_set(db, int(rng.integers(1, 5)), rng) for _ in range(len(set_a))]
        label = "conditional"
    trial = monotonicity_trial(psi, set_a, set_b)
    return TrialResult(index, seed, trial.margin, trial.margin >= -tolerance, f"{label} dims=({da},{db})")


def t_transform(y: np.ndarray, rng: np.random.Generator, steps: int = 3) -> np.ndarray:
    """Apply random T-transforms; the result is majorized by ``y``."""
    x = np.array(y, dtype=float)
    for _ in range(steps):
        j, k = rng.choice(x.size, size=2, replace=False)
        t = rng.random()
        xj, xk = x[j], x[k]
        x[j] = t * xj + (1 - t) * xk
        x[k] = t * xk + (1 - t) * xj
    return x


def majorization_trial(index: int, seed: int, max_dim: int, tolerance: float) -> TrialResult:
    """Schur concavity of the closed form on a pair ``x`` majorized by ``y``."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max(2, max_dim) + 1))
    y = rng.dirichlet(np.full(n, 0.5))
    x = t_transform(y, rng)
    if not majorizes(x, y):
        return TrialResult(index, seed, float("-inf"), False, "constructed pair failed the majorization check")
    margin = entanglement_closed_form(x) - entanglement_closed_form(y)
    return TrialResult(index, seed, margin, margin >= -tolerance, f"n={n}")


_TRIALS: dict[str, tuple[Callable[[int, int, int, float], TrialResult], str]] = {
    "equivalence": (equivalence_trial, "|E_sum - E_closed| <= tol"),
    "monotonicity": (monotonicity_campaign_trial, "E_before - sum p_k E_k >= -tol"),
    "invariance": (invariance_trial, "|E(U_A x U_B psi) - E(psi)| <= tol"),
    "majorization": (majorization_trial, "E(x) - E(y) >= -tol for x majorized by y"),
}


def run_suite(
    suite: str, trials: int, max_dim: int, seed: int, tolerance: float, jobs: int = 1
) -> SuiteSummary:
    """Run ``trials`` independent trials of one suite."""
    if suite not in _TRIALS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    fn, criterion = _TRIALS[suite]
    args = [(i, seed + i, max_dim, tolerance) for i in range(trials)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda a: fn(*a), args))
    else:
        results = [fn(*a) for a in args]
    results.sort(key=lambda r: r.index)
    return SuiteSummary(suite, trials, tolerance, criterion, results)
