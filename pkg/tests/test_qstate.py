import math
from functools import reduce

import numpy as np
import pytest

from qwitness.qstate import (
    CNOT,
    MCX,
    MCZ,
    Circuit,
    Gate,
    H,
    PureState,
    Ry,
    X,
    Z,
    apply_gate,
    basis_probability,
    inverse_circuit,
    overlap_probability,
    run_circuit,
    sample_shots,
    zero_state,
)

# ---------------------------------------------------------------------------
# Oracle: explicit unitaries built by Kronecker products, qubit 0 leftmost.

I2 = np.eye(2, dtype=complex)
H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
X_MAT = np.array([[0, 1], [1, 0]], dtype=complex)
Z_MAT = np.array([[1, 0], [0, -1]], dtype=complex)


def ry_mat(t):
    return np.array(
        [[math.cos(t / 2), -math.sin(t / 2)], [math.sin(t / 2), math.cos(t / 2)]],
        dtype=complex,
    )


def kron_all(mats):
    return reduce(np.kron, mats)


def one_qubit_unitary(n, q, m):
    return kron_all([m if i == q else I2 for i in range(n)])


def diag_flip_unitary(n, qubits):
    # -1 on every basis index whose bits are 1 on all the given qubits
    d = np.ones(2**n, dtype=complex)
    for x in range(2**n):
        if all((x >> (n - 1 - q)) & 1 for q in qubits):
            d[x] = -1
    return np.diag(d)


def controlled_x_unitary(n, controls, target):
    u = np.zeros((2**n, 2**n), dtype=complex)
    for x in range(2**n):
        y = x
        if all((x >> (n - 1 - q)) & 1 for q in controls):
            y = x ^ (1 << (n - 1 - target))
        u[y, x] = 1
    return u


def gate_unitary(n, gate):
    if gate.kind == "h":
        return one_qubit_unitary(n, gate.qubits[0], H_MAT)
    if gate.kind == "x":
        return one_qubit_unitary(n, gate.qubits[0], X_MAT)
    if gate.kind == "z":
        return one_qubit_unitary(n, gate.qubits[0], Z_MAT)
    if gate.kind == "ry":
        return one_qubit_unitary(n, gate.qubits[0], ry_mat(gate.angle))
    if gate.kind == "mcz":
        return diag_flip_unitary(n, gate.qubits)
    return controlled_x_unitary(n, gate.qubits[:-1], gate.qubits[-1])


def random_state(n, rng):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return PureState(n, v / np.linalg.norm(v))


# ---------------------------------------------------------------------------


def test_zero_state_basics():
    assert np.allclose(zero_state(1).amplitudes, [1, 0])
    s3 = zero_state(3)
    assert s3.amplitudes.shape == (8,)
    assert s3.amplitudes[0] == 1 and np.all(s3.amplitudes[1:] == 0)


@pytest.mark.parametrize("n", [0, -1, 21])
def test_zero_state_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        zero_state(n)


def test_purestate_rejects_unnormalized():
    with pytest.raises(ValueError):
        PureState(1, np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        PureState(2, np.array([1.0, 0.0]))


def test_hadamard_on_zero():
    s = apply_gate(zero_state(1), H(0))
    assert np.allclose(s.amplitudes, [1 / math.sqrt(2), 1 / math.sqrt(2)])


def test_ry_pi_flips_zero_to_one():
    s = apply_gate(zero_state(1), Ry(0, math.pi))
    assert np.allclose(s.amplitudes, [0, 1], atol=1e-15)


def test_mcz_on_uniform_state_flips_only_all_ones():
    uniform = PureState(3, np.full(8, 1 / math.sqrt(8), dtype=complex))
    got = apply_gate(uniform, MCZ(0, 1, 2))
    expected = diag_flip_unitary(3, (0, 1, 2)) @ uniform.amplitudes
    assert np.allclose(got.amplitudes, expected, atol=1e-15)
    signs = np.sign(got.amplitudes.real)
    assert list(signs) == [1, 1, 1, 1, 1, 1, 1, -1]


@pytest.mark.parametrize(
    "gate",
    [H(0), X(1), Z(2), Ry(1, 0.7), CNOT(0, 2), CNOT(2, 0), MCZ(1), MCZ(0, 2), MCZ(0, 1, 2), MCX((0,), 1), MCX((0, 2), 1), MCX((0, 1), 2)],
)
def test_apply_gate_matches_matrix_oracle(gate):
    rng = np.random.default_rng(11)
    for _ in range(5):
        st = random_state(3, rng)
        got = apply_gate(st, gate).amplitudes
        want = gate_unitary(3, gate) @ st.amplitudes
        assert np.allclose(got, want, atol=1e-13)


def test_apply_gate_index_error():
    with pytest.raises(IndexError):
        apply_gate(zero_state(2), H(2))
    with pytest.raises(IndexError):
        apply_gate(zero_state(2), CNOT(0, 3))


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("cnot", (1, 1))  # duplicate wires
    with pytest.raises(ValueError):
        Ry(0, float("nan"))
    with pytest.raises(ValueError):
        Gate("ry", (0,))  # missing angle
    with pytest.raises(ValueError):
        Gate("frob", (0,))


def test_run_circuit_empty_is_identity():
    rng = np.random.default_rng(3)
    st = random_state(2, rng)
    out = run_circuit(Circuit(2, ()), st)
    assert np.array_equal(out.amplitudes, st.amplitudes)


def test_run_circuit_hh_is_identity():
    st = apply_gate(zero_state(1), Ry(0, 0.4))
    out = run_circuit(Circuit(1, (H(0), H(0))), st)
    assert np.allclose(out.amplitudes, st.amplitudes, atol=1e-12)


def test_run_circuit_sign_string_encoding_block():
    # Hadamard column then a sign flip on the qubit-0=1 half of the register
    circ = Circuit(3, (H(0), H(1), H(2), Z(0)))
    out = run_circuit(circ, zero_state(3))
    want = np.array([1, 1, 1, 1, -1, -1, -1, -1]) / math.sqrt(8)
    assert np.allclose(out.amplitudes, want, atol=1e-12)


def test_run_circuit_dimension_mismatch():
    with pytest.raises(ValueError):
        run_circuit(Circuit(2, ()), zero_state(3))


def test_norm_preserved_on_random_circuits():
    rng = np.random.default_rng(20)
    kinds = ["h", "x", "z", "ry", "cnot", "mcz", "mcx"]
    for _ in range(25):
        n = int(rng.integers(2, 5))
        gates = []
        for _ in range(60):
            kind = kinds[rng.integers(len(kinds))]
            qs = rng.permutation(n)
            if kind in ("h", "x", "z"):
                gates.append(Gate(kind, (int(qs[0]),)))
            elif kind == "ry":
                gates.append(Ry(int(qs[0]), float(rng.uniform(-6, 6))))
            elif kind == "cnot":
                gates.append(CNOT(int(qs[0]), int(qs[1])))
            elif kind == "mcz":
                k = int(rng.integers(1, n + 1))
                gates.append(MCZ(*[int(q) for q in qs[:k]]))
            else:
                k = int(rng.integers(1, n))
                gates.append(MCX(tuple(int(q) for q in qs[:k]), int(qs[k])))
        out = run_circuit(Circuit(n, tuple(gates)), random_state(n, rng))
        assert abs(np.vdot(out.amplitudes, out.amplitudes).real - 1.0) < 1e-12


def test_gate_then_inverse_returns_input():
    rng = np.random.default_rng(7)
    gates = [H(0), X(2), Z(1), Ry(0, 1.234), CNOT(1, 2), MCZ(0, 2), MCX((0, 1), 2)]
    for g in gates:
        st = random_state(3, rng)
        back = apply_gate(apply_gate(st, g), g.inverse())
        assert np.allclose(back.amplitudes, st.amplitudes, atol=1e-12)


def test_inverse_circuit_undoes_run():
    rng = np.random.default_rng(8)
    circ = Circuit(3, (H(0), Ry(1, 0.9), CNOT(0, 2), MCZ(0, 1), Ry(2, -2.2), X(1)))
    st = random_state(3, rng)
    back = run_circuit(inverse_circuit(circ), run_circuit(circ, st))
    assert np.allclose(back.amplitudes, st.amplitudes, atol=1e-12)


def test_mcx_to_ancilla_readout_equals_basis_probability():
    rng = np.random.default_rng(15)
    for _ in range(10):
        st = random_state(3, rng)
        with_ancilla = PureState(4, np.kron(st.amplitudes, [1.0, 0.0]))
        out = apply_gate(with_ancilla, MCX((0, 1, 2), 3))
        # ancilla is qubit 3, the least significant bit; scalar abs keeps the
        # arithmetic identical to basis_probability so equality is exact
        p_ancilla_one = sum(float(abs(a)) ** 2 for a in out.amplitudes[1::2])
        assert p_ancilla_one == basis_probability(st, 7)


def test_overlap_probability_basics():
    rng = np.random.default_rng(2)
    a = random_state(3, rng)
    assert overlap_probability(a, a) == pytest.approx(1.0, abs=1e-12)
    e0 = zero_state(2)
    e3 = PureState(2, np.array([0, 0, 0, 1], dtype=complex))
    assert overlap_probability(e0, e3) == 0.0
    with pytest.raises(ValueError):
        overlap_probability(zero_state(2), zero_state(3))


def test_overlap_probability_sign_pattern_hamming_rule():
    # Two uniform-magnitude sign patterns overlap as (1 - 2d/2^n)^2 where d
    # counts the positions where their signs disagree.
    rng = np.random.default_rng(40)
    for _ in range(30):
        bits_a = rng.integers(0, 2, size=8)
        bits_b = rng.integers(0, 2, size=8)
        a = PureState(3, np.where(bits_a, -1, 1) / math.sqrt(8) + 0j)
        b = PureState(3, np.where(bits_b, -1, 1) / math.sqrt(8) + 0j)
        d = int(np.sum(bits_a != bits_b))
        assert overlap_probability(a, b) == pytest.approx((1 - 2 * d / 8) ** 2, abs=1e-12)


def test_basis_probability_examples():
    assert basis_probability(zero_state(1), 0) == 1.0
    uniform = PureState(3, np.full(8, 1 / math.sqrt(8), dtype=complex))
    assert basis_probability(uniform, 7) == pytest.approx(1 / 8, abs=1e-15)
    with pytest.raises(IndexError):
        basis_probability(uniform, 8)
    with pytest.raises(IndexError):
        basis_probability(uniform, -1)


def test_sample_shots_degenerate_probabilities():
    assert sample_shots(zero_state(3), 0, 100, seed=1) == 1.0
    assert sample_shots(zero_state(3), 5, 100, seed=1) == 0.0


def test_sample_shots_near_true_probability():
    # p = 1/8; three binomial standard errors at 8192 shots is about 0.011
    uniform = PureState(3, np.full(8, 1 / math.sqrt(8), dtype=complex))
    est = sample_shots(uniform, 7, 8192, seed=123)
    assert abs(est - 0.125) < 3 * math.sqrt(0.125 * 0.875 / 8192)


def test_sample_shots_deterministic_and_validates():
    uniform = PureState(2, np.full(4, 0.5, dtype=complex))
    a = sample_shots(uniform, 2, 500, seed=9)
    b = sample_shots(uniform, 2, 500, seed=9)
    assert a == b
    with pytest.raises(ValueError):
        sample_shots(uniform, 2, 0, seed=9)


def test_sample_shots_mean_converges():
    uniform = PureState(3, np.full(8, 1 / math.sqrt(8), dtype=complex))
    estimates = [sample_shots(uniform, 3, 4096, seed=s) for s in range(100)]
    assert abs(float(np.mean(estimates)) - 0.125) < 2e-2
