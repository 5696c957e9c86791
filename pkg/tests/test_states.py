import numpy as np
import pytest
from scipy.stats import unitary_group

from entangle.errors import InvalidInputError, InvalidPartitionError
from entangle.locc import random_unitary
from entangle.measures import entanglement, entanglement_closed_form
from entangle.schmidt import schmidt_decompose
from entangle.states import (
    PureState,
    apply_local_unitaries,
    bipartition,
    product_state,
    random_pure_state,
    reduced_density_matrix,
    schmidt_diagonal_state,
)

HADAMARD = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def unit(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def test_pure_state_renormalizes_within_tolerance():
    psi = PureState(np.array([[1.0 + 5e-10, 0.0]]))
    assert np.linalg.norm(psi.amplitudes) == 1.0
    with pytest.raises(InvalidInputError):
        PureState(np.array([[1.1, 0.0]]))
    with pytest.raises(ValueError):
        psi.amplitudes[0, 0] = 2.0


def test_product_state_basis():
    psi = product_state([1, 0], [1, 0])
    np.testing.assert_array_equal(psi.amplitudes, [[1, 0], [0, 0]])


def test_product_state_separable_pair():
    phi = np.sqrt([0.5, 0.5])
    psi = product_state(phi, phi)
    np.testing.assert_allclose(psi.amplitudes, np.full((2, 2), 0.5), atol=1e-15)


def test_product_state_random_has_zero_entanglement(rng):
    psi = product_state(unit(rng, 3), unit(rng, 4))
    assert psi.shape == (3, 4)
    assert entanglement(psi) <= 1e-9


def test_product_state_rejects_unnormalized():
    with pytest.raises(InvalidInputError):
        product_state([1, 1], [1, 0])


def test_schmidt_diagonal_state():
    bell = schmidt_diagonal_state([0.5, 0.5])
    np.testing.assert_allclose(bell.amplitudes, np.eye(2) / np.sqrt(2), atol=1e-15)
    prod = schmidt_diagonal_state([1.0, 0.0])
    np.testing.assert_array_equal(prod.amplitudes, [[1, 0], [0, 0]])
    three = schmidt_diagonal_state([0.5, 0.3, 0.2])
    np.testing.assert_allclose(three.amplitudes, np.diag(np.sqrt([0.5, 0.3, 0.2])), atol=1e-15)


@pytest.mark.parametrize("bad", [[0.5, 0.6], [1.2, -0.2], [np.nan, 1.0]])
def test_schmidt_diagonal_state_rejects(bad):
    with pytest.raises(InvalidInputError):
        schmidt_diagonal_state(bad)


def test_random_pure_state_normalized_and_deterministic():
    for seed in range(20):
        psi = random_pure_state(3, 5, seed)
        assert abs(np.linalg.norm(psi.amplitudes) - 1) <= 1e-12
    a = random_pure_state(4, 2, 99).amplitudes
    b = random_pure_state(4, 2, 99).amplitudes
    assert a.tobytes() == b.tobytes()
    assert random_pure_state(4, 2, 100).amplitudes.tobytes() != a.tobytes()


def test_haar_average_purity_two_qubits():
    # Haar mean purity for d_A x d_B is (d_A + d_B) / (d_A d_B + 1) = 0.8 here
    lam_route = np.mean([np.sum(schmidt_decompose(random_pure_state(2, 2, s)).lambdas ** 2) for s in range(10_000)])
    # independent sampler: first column of a Haar unitary, purity from Tr(rho_A^2)
    rng = np.random.default_rng(123)
    purities = []
    for _ in range(10_000):
        c = unitary_group.rvs(4, random_state=rng)[:, 0].reshape(2, 2)
        rho = c @ c.conj().T
        purities.append(np.real(np.trace(rho @ rho)))
    oracle = float(np.mean(purities))
    assert abs(lam_route - 0.8) <= 0.01
    assert abs(oracle - 0.8) <= 0.01
    assert abs(lam_route - oracle) <= 0.02


def test_apply_local_unitaries_identity(rng):
    psi = random_pure_state(2, 3, 1)
    out = apply_local_unitaries(psi, np.eye(2), np.eye(3))
    np.testing.assert_allclose(out.amplitudes, psi.amplitudes, atol=1e-15)


def test_apply_local_unitaries_hadamard_on_bell():
    bell = schmidt_diagonal_state([0.5, 0.5])
    out = apply_local_unitaries(bell, HADAMARD, HADAMARD)
    assert abs(entanglement(out) - entanglement(bell)) <= 1e-9
    assert entanglement(out) == pytest.approx(1.0, abs=1e-12)


def test_apply_local_unitaries_convention():
    psi = random_pure_state(2, 3, 5)
    ua, ub = random_unitary(2, 1), random_unitary(3, 2)
    out = apply_local_unitaries(psi, ua, ub)
    np.testing.assert_allclose(out.vector(), np.kron(ua, ub) @ psi.vector(), atol=1e-12)


def test_apply_local_unitaries_preserves_schmidt_vector(rng):
    for t in range(1000):
        da, db = rng.integers(1, 7, size=2)
        psi = random_pure_state(da, db, rng)
        out = apply_local_unitaries(psi, random_unitary(da, rng), random_unitary(db, rng))
        np.testing.assert_allclose(schmidt_decompose(out).lambdas, schmidt_decompose(psi).lambdas, atol=1e-9)


def test_apply_local_unitaries_rejects_non_unitary():
    psi = random_pure_state(2, 2, 0)
    with pytest.raises(InvalidInputError):
        apply_local_unitaries(psi, np.diag([1.0, 0.5]), np.eye(2))
    with pytest.raises(InvalidInputError):
        apply_local_unitaries(psi, np.eye(3), np.eye(2))


def test_reduced_density_matrix_product_is_projector(rng):
    a, b = unit(rng, 3), unit(rng, 2)
    psi = product_state(a, b)
    np.testing.assert_allclose(reduced_density_matrix(psi, "A"), np.outer(a, a.conj()), atol=1e-12)
    np.testing.assert_allclose(reduced_density_matrix(psi, "B"), np.outer(b, b.conj()), atol=1e-12)


def test_reduced_density_matrix_bell_is_maximally_mixed():
    bell = schmidt_diagonal_state([0.5, 0.5])
    np.testing.assert_allclose(reduced_density_matrix(bell, "A"), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(reduced_density_matrix(bell, "B"), np.eye(2) / 2, atol=1e-15)


def test_reduced_density_matrix_matches_partial_trace_loop():
    psi = random_pure_state(2, 3, 11)
    v = psi.vector()
    rho = np.outer(v, v.conj()).reshape(2, 3, 2, 3)
    rho_a = np.zeros((2, 2), complex)
    rho_b = np.zeros((3, 3), complex)
    for k in range(3):
        rho_a += rho[:, k, :, k]
    for k in range(2):
        rho_b += rho[k, :, k, :]
    np.testing.assert_allclose(reduced_density_matrix(psi, "A"), rho_a, atol=1e-14)
    np.testing.assert_allclose(reduced_density_matrix(psi, "B"), rho_b, atol=1e-14)


def test_reduced_density_matrices_share_spectrum(rng):
    for _ in range(200):
        da, db = rng.integers(1, 7, size=2)
        psi = random_pure_state(da, db, rng)
        ra, rb = reduced_density_matrix(psi, "A"), reduced_density_matrix(psi, "B")
        for rho in (ra, rb):
            assert abs(np.trace(rho) - 1) <= 1e-10
            assert np.linalg.eigvalsh(rho).min() >= -1e-10
        ea = np.sort(np.linalg.eigvalsh(ra))[::-1]
        eb = np.sort(np.linalg.eigvalsh(rb))[::-1]
        n = max(da, db)
        np.testing.assert_allclose(np.pad(ea, (0, n - da)), np.pad(eb, (0, n - db)), atol=1e-9)


def test_reduced_density_matrix_bad_subsystem():
    with pytest.raises(InvalidInputError):
        reduced_density_matrix(random_pure_state(2, 2, 0), "C")


def ghz():
    t = np.zeros((2, 2, 2), complex)
    t[0, 0, 0] = t[1, 1, 1] = 1 / np.sqrt(2)
    return t


def w_state():
    t = np.zeros((2, 2, 2), complex)
    t[0, 0, 1] = t[0, 1, 0] = t[1, 0, 0] = 1 / np.sqrt(3)
    return t


def test_bipartition_ghz():
    psi = bipartition(ghz(), [0])
    assert psi.shape == (2, 4)
    np.testing.assert_allclose(schmidt_decompose(psi).lambdas, [0.5, 0.5], atol=1e-12)


def test_bipartition_flat_vector_with_dims():
    psi = bipartition(ghz().reshape(-1), [0], dims=[2, 2, 2])
    np.testing.assert_allclose(schmidt_decompose(psi).lambdas, [0.5, 0.5], atol=1e-12)


def test_bipartition_w_state_against_brute_force_rdm():
    t = w_state()
    rho1 = np.zeros((2, 2), complex)
    for a in range(2):
        for a2 in range(2):
            for b in range(2):
                for c in range(2):
                    rho1[a, a2] += t[a, b, c] * np.conj(t[a2, b, c])
    oracle = np.sort(np.linalg.eigvalsh(rho1))[::-1]
    np.testing.assert_allclose(oracle, [2 / 3, 1 / 3], atol=1e-12)
    lam = schmidt_decompose(bipartition(t, [0])).lambdas
    np.testing.assert_allclose(lam, oracle, atol=1e-12)


def test_bipartition_of_product_is_separable(rng):
    factors = [unit(rng, d) for d in (2, 3, 2)]
    t = np.einsum("i,j,k->ijk", *factors)
    for part in ([0], [1], [2], [0, 1], [0, 2], [1, 2]):
        assert entanglement(bipartition(t, part)) <= 1e-9


def test_bipartition_axis_order():
    # part [2, 0] must put factor 0 slowest in the row index
    t = np.arange(12, dtype=complex).reshape(2, 3, 2)
    t /= np.linalg.norm(t)
    psi = bipartition(t, [2, 0])
    np.testing.assert_allclose(psi.amplitudes, np.transpose(t, (0, 2, 1)).reshape(4, 3), atol=1e-15)


@pytest.mark.parametrize("part", [[], [0, 1, 2], [3], [-1]])
def test_bipartition_rejects_bad_partition(part):
    with pytest.raises(InvalidPartitionError):
        bipartition(ghz(), part)


def test_bipartition_cuts_can_differ():
    found = 0.0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        t = rng.standard_normal((2, 3, 2)) + 1j * rng.standard_normal((2, 3, 2))
        t /= np.linalg.norm(t)
        e_a = entanglement_closed_form(schmidt_decompose(bipartition(t, [0])).lambdas)
        e_b = entanglement_closed_form(schmidt_decompose(bipartition(t, [1])).lambdas)
        found = max(found, abs(e_a - e_b))
    assert found > 0.01
