import math

import numpy as np
import pytest

from qgamelab.errors import (
    DimensionLimitError,
    NormalizationError,
    ShapeMismatchError,
)
from qgamelab.linalg import (
    ALGEBRA_TOL,
    BUILTIN_GATES,
    HADAMARD,
    IDENTITY_1Q,
    PAULI_X,
    PAULI_Z,
    LinearMap,
    StateVector,
    basis_state,
    born_probabilities,
    compose,
    dagger,
    dimension_limit,
    from_matrix,
    identity,
    ket,
    outcome_labels,
    set_dimension_limit,
    states_phase_equal,
    tensor,
)

RT2 = math.sqrt(2)


def test_linear_map_shape_and_entries():
    m = from_matrix([[1, 2], [3, 4]])
    assert m.in_dims == (2,) and m.out_dims == (2,)
    assert m.rows == 2 and m.cols == 2
    assert np.array_equal(m.array, np.array([[1, 2], [3, 4]], dtype=complex))


def test_linear_map_rejects_wrong_shape():
    with pytest.raises(ShapeMismatchError):
        LinearMap(np.zeros((3, 2), dtype=complex), (2,), (2,))


def test_linear_map_rejects_non_finite():
    with pytest.raises(ValueError):
        from_matrix([[np.inf, 0], [0, 1]])


def test_array_is_read_only():
    m = from_matrix([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        m.array[0, 0] = 5


def test_dimension_limit_enforced():
    assert dimension_limit() == 4096
    with pytest.raises(DimensionLimitError):
        identity((2,) * 13)
    set_dimension_limit(8)
    try:
        with pytest.raises(DimensionLimitError):
            identity((2, 2, 2, 2))
        identity((2, 2, 2))
    finally:
        set_dimension_limit(4096)


def test_tensor_is_kron_big_endian():
    # first factor owns the most significant digit
    x0 = tensor(PAULI_X, IDENTITY_1Q)
    state = x0.apply(ket("00"))
    assert born_probabilities(state) == {"00": 0.0, "01": 0.0,
                                         "10": 1.0, "11": 0.0}


def test_compose_applies_right_then_left():
    hx = compose(HADAMARD, PAULI_X)  # X first, then H
    expected = HADAMARD.array @ PAULI_X.array
    assert np.allclose(hx.array, expected)


def test_compose_shape_mismatch_message():
    two = identity((2,))
    three = identity((3,))
    with pytest.raises(ShapeMismatchError):
        compose(two, three)


def test_dagger_is_conjugate_transpose():
    m = from_matrix([[1, 2j], [3, 4]])
    assert np.array_equal(dagger(m).array, m.array.conj().T)
    assert dagger(m).in_dims == m.out_dims


def test_dagger_involution_and_contravariance():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = from_matrix(rng.normal(size=(2, 2))
                        + 1j * rng.normal(size=(2, 2)))
        b = from_matrix(rng.normal(size=(2, 2))
                        + 1j * rng.normal(size=(2, 2)))
        assert dagger(dagger(a)) == a
        assert dagger(compose(a, b)).allclose(
            compose(dagger(b), dagger(a)), tol=ALGEBRA_TOL)


def test_matmul_operator_composes():
    assert (HADAMARD @ HADAMARD).allclose(IDENTITY_1Q)


def test_builtin_gates_unitary():
    for name, gate in BUILTIN_GATES.items():
        assert gate.is_unitary(), name


def test_hadamard_entries():
    assert np.allclose(HADAMARD.array,
                       np.array([[1, 1], [1, -1]]) / RT2)


def test_pauli_algebra():
    assert (PAULI_X @ PAULI_X).allclose(IDENTITY_1Q)
    assert (PAULI_Z @ PAULI_Z).allclose(IDENTITY_1Q)
    xz = (PAULI_X @ PAULI_Z).array
    zx = (PAULI_Z @ PAULI_X).array
    assert np.allclose(xz, -zx)


def test_ket_and_basis_state():
    assert ket("10") == basis_state(2, (2, 2))
    assert ket("012", dim=3).dims == (3, 3, 3)
    amps = ket("012", dim=3).amplitudes
    assert amps[0 * 9 + 1 * 3 + 2] == 1.0
    assert np.count_nonzero(amps) == 1


def test_outcome_labels_qubits_and_qutrits():
    assert outcome_labels((2, 2)) == ["00", "01", "10", "11"]
    assert outcome_labels((3,)) == ["0", "1", "2"]
    assert outcome_labels((2, 12))[:3] == ["0,0", "0,1", "0,2"]


def test_born_probabilities_full_support():
    state = HADAMARD.apply(ket("0"))
    dist = born_probabilities(state)
    assert set(dist) == {"0", "1"}
    assert dist["0"] == pytest.approx(0.5, abs=1e-12)
    assert dist["1"] == pytest.approx(0.5, abs=1e-12)


def test_born_probabilities_rejects_unnormalized():
    state = StateVector(np.array([1.0, 1.0]), (2,))
    with pytest.raises(NormalizationError) as err:
        born_probabilities(state)
    assert err.value.total == pytest.approx(2.0)


def test_apply_shape_check():
    with pytest.raises(ShapeMismatchError):
        HADAMARD.apply(ket("00"))


def test_to_state_requires_column():
    col = LinearMap(np.array([[1.0], [0.0]]), (), (2,))
    assert col.to_state() == ket("0")
    with pytest.raises(ShapeMismatchError):
        HADAMARD.to_state()


def test_state_tensor_and_norm():
    plus = HADAMARD.apply(ket("0"))
    two = plus.tensor(plus)
    assert two.dims == (2, 2)
    assert two.is_normalized()
    assert two.squared_norm == pytest.approx(1.0, abs=1e-12)


def test_states_phase_equal_ignores_global_phase():
    state = ket("01")
    rotated = state.scaled(np.exp(1j * 0.83))
    assert states_phase_equal(state, rotated)
    assert not states_phase_equal(state, ket("10"))


def test_states_phase_equal_respects_relative_phase():
    a = StateVector(np.array([1, 1]) / RT2, (2,))
    b = StateVector(np.array([1, -1]) / RT2, (2,))
    assert not states_phase_equal(a, b)


def test_unitarity_random_products():
    rng = np.random.default_rng(11)
    for _ in range(20):
        # random unitaries via QR of a Ginibre matrix
        q, _r = np.linalg.qr(rng.normal(size=(4, 4))
                             + 1j * rng.normal(size=(4, 4)))
        u = LinearMap(q, (2, 2), (2, 2))
        assert u.is_unitary()
        assert (dagger(u) @ u).allclose(identity((2, 2)), tol=1e-9)
