import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from tsvf_lab.hilbert import (DOWN, I2, SIGMA_X, SIGMA_Y, SIGMA_Z, UP, Observable, StateVector, inner, is_projector_set,
                              jacobi_eigh, local_op, random_degenerate_hermitian, random_hermitian, random_state,
                              singlet, spectral_decompose, spin_observable, spin_state, tensor_op, tensor_state,
                              ghz_state)

seeds = st.integers(0, 2 ** 32 - 1)
angles = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)


def boxes():
    return [StateVector.basis(3, k) for k in range(3)]


def test_inner_examples():
    assert inner(UP, UP) == 1
    assert inner(UP, DOWN) == 0
    a, b, c = (s.amplitudes for s in boxes())
    bra = StateVector.from_amplitudes(a + b - c)
    ket = StateVector.from_amplitudes(a + b + c)
    assert inner(bra, ket) == pytest.approx(1 / 3, abs=1e-15)


def test_inner_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        inner(UP, boxes()[0])


def test_state_must_be_normalized():
    with pytest.raises(ValueError):
        StateVector([1.0, 1.0])
    with pytest.raises(ValueError):
        StateVector.from_amplitudes([0, 0])
    s = StateVector.from_amplitudes([3, 4j])
    assert abs(np.vdot(s.amplitudes, s.amplitudes) - 1) < 1e-12
    assert not s.amplitudes.flags.writeable


def test_tensor_state_basis_product():
    s = tensor_state(UP, DOWN)
    assert s.dim == 4
    np.testing.assert_array_equal(s.amplitudes, [0, 1, 0, 0])  # index (0, 1) big-endian


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_tensor_state_norm(seed, da, db):
    rng = np.random.default_rng(seed)
    s = tensor_state(random_state(da, rng), random_state(db, rng))
    assert abs(np.linalg.norm(s.amplitudes) - 1) < 1e-12


def test_ghz_is_not_a_product_state():
    # the reduced state of particle A is mixed, so no tensor_state can produce it
    psi = ghz_state().amplitudes.reshape(2, 4)
    rho_a = psi @ psi.conj().T
    assert np.linalg.matrix_rank(rho_a, tol=1e-12) == 2


def test_tensor_op_identity():
    np.testing.assert_array_equal(tensor_op(I2, I2).matrix, np.eye(4))


def test_sigma_x_sigma_x_on_singlet():
    # hand-written kron(sx, sx): swaps |00> <-> |11> and |01> <-> |10>
    xx = np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    np.testing.assert_array_equal(tensor_op(SIGMA_X, SIGMA_X).matrix, xx)
    np.testing.assert_allclose(xx @ singlet().amplitudes, -singlet().amplitudes, atol=1e-15)


def test_sigma_y_sigma_x_spectrum():
    sf = spectral_decompose(tensor_op(SIGMA_Y, SIGMA_X))
    np.testing.assert_allclose(sf.eigenvalues, [-1, 1], atol=1e-12)
    assert sf.ranks == [2, 2]


def test_spin_observable_axes():
    np.testing.assert_allclose(spin_observable(0, 0).matrix, SIGMA_Z.matrix, atol=1e-15)
    np.testing.assert_allclose(spin_observable(np.pi / 2, 0).matrix, SIGMA_X.matrix, atol=1e-15)
    np.testing.assert_allclose(spin_observable(np.pi / 2, np.pi / 2).matrix, SIGMA_Y.matrix, atol=1e-15)


@given(angles)
def test_spin_up_overlap_with_up_z(theta):
    sf = spectral_decompose(spin_observable(theta, 0))
    plus = sf.projectors[1]
    assert abs(np.vdot(UP.amplitudes, plus @ UP.amplitudes).real - np.cos(theta / 2) ** 2) < 1e-12


@given(angles, angles)
def test_spin_observable_trace_det(theta, phi):
    m = spin_observable(theta, phi).matrix
    assert abs(np.trace(m)) < 1e-12
    assert abs(np.linalg.det(m) + 1) < 1e-12


@given(angles, angles)
def test_spin_state_eigenvectors(theta, phi):
    m = spin_observable(theta, phi).matrix
    up, down = spin_state(theta, phi), spin_state(theta, phi, up=False)
    np.testing.assert_allclose(m @ up.amplitudes, up.amplitudes, atol=1e-12)
    np.testing.assert_allclose(m @ down.amplitudes, -down.amplitudes, atol=1e-12)


def test_spectral_sigma_z():
    sf = spectral_decompose(SIGMA_Z)
    np.testing.assert_allclose(sf.eigenvalues, [-1, 1])
    np.testing.assert_allclose(sf.projectors[0], DOWN.projector(), atol=1e-15)
    np.testing.assert_allclose(sf.projectors[1], UP.projector(), atol=1e-15)


def test_spectral_sum_of_local_sigma_x():
    obs = local_op(SIGMA_X, 0, 2) + local_op(SIGMA_X, 1, 2)
    sf = spectral_decompose(obs)
    # oracle: LAPACK eigensolver, grouped by hand
    w = np.linalg.eigvalsh(obs.matrix)
    np.testing.assert_allclose(w, [-2, 0, 0, 2], atol=1e-12)
    np.testing.assert_allclose(sf.eigenvalues, [-2, 0, 2], atol=1e-12)
    assert sf.ranks == [1, 2, 1]


def test_spectral_box_projector():
    sf = spectral_decompose(boxes()[0].projector())
    np.testing.assert_allclose(sf.eigenvalues, [0, 1], atol=1e-12)
    assert sf.ranks == [2, 1]


def test_spectral_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        spectral_decompose(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        Observable([[0, 1], [0, 0]])


@settings(max_examples=60)
@given(seeds, st.integers(1, 8))
def test_jacobi_matches_lapack(seed, dim):
    m = random_hermitian(dim, np.random.default_rng(seed)).matrix
    w, v = jacobi_eigh(m)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(m), atol=1e-12)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(dim), atol=1e-12)
    np.testing.assert_allclose(m @ v, v * w, atol=1e-11)


def _check_spectral_form(m, sf):
    ps = list(sf.projectors)
    assert is_projector_set(ps, tol=1e-10)
    np.testing.assert_allclose(sf.reconstruct(), m, atol=1e-10)
    assert np.all(np.diff(sf.eigenvalues) > 0)


@settings(max_examples=60)
@given(seeds, st.integers(1, 8))
def test_spectral_invariants_random(seed, dim):
    m = random_hermitian(dim, np.random.default_rng(seed)).matrix
    _check_spectral_form(m, spectral_decompose(m))


@settings(max_examples=60)
@given(seeds, st.integers(2, 8), st.data())
def test_spectral_invariants_degenerate(seed, dim, data):
    levels = data.draw(st.integers(1, dim))
    obs = random_degenerate_hermitian(dim, levels, np.random.default_rng(seed))
    sf = spectral_decompose(obs)
    _check_spectral_form(obs.matrix, sf)
    assert len(sf.eigenvalues) == levels
    assert sum(sf.ranks) == dim


@given(seeds)
def test_kron_associativity(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_state(d, rng) for d in (2, 3, 2))
    left = tensor_state(tensor_state(a, b), c)
    right = tensor_state(a, tensor_state(b, c))
    np.testing.assert_allclose(left.amplitudes, right.amplitudes, atol=1e-14)
    A, B, C = (random_hermitian(d, rng) for d in (2, 2, 3))
    np.testing.assert_allclose(tensor_op(tensor_op(A, B), C).matrix, tensor_op(A, tensor_op(B, C)).matrix, atol=1e-14)


def test_local_op_embedding():
    np.testing.assert_array_equal(local_op(SIGMA_Y, 1, 2).matrix, np.kron(np.eye(2), SIGMA_Y.matrix))
    with pytest.raises(ValueError):
        local_op(SIGMA_Y, 2, 2)
