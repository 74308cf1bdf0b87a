"""Dense statevector simulation for small qubit registers.

States are length-2**n complex vectors over the computational basis.
Qubit 0 is the most significant bit of the basis index (the top wire of a
circuit diagram), so reshaping an amplitude vector to shape (2,)*n puts
qubit q on axis q.

Everything here is a pure function over immutable values: gates and
circuits never mutate a state, they return a new one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PureState",
    "Gate",
    "Circuit",
    "H",
    "X",
    "Z",
    "Ry",
    "CNOT",
    "MCZ",
    "MCX",
    "zero_state",
    "apply_gate",
    "run_circuit",
    "inverse_circuit",
    "overlap_probability",
    "basis_probability",
    "sample_shots",
]

MAX_QUBITS = 20

# Unit-norm slack; covers rounding drift of any reasonable circuit depth.
_NORM_TOL = 1e-12

_H_MATRIX = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)


def _ry_matrix(angle: float) -> np.ndarray:
    # Convention: Ry(t) = exp(-i t Y / 2), real-valued.
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass(frozen=True)
class PureState:
    """Normalized pure state of ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.n_qubits,):
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes for {self.n_qubits} "
                f"qubits, got shape {amps.shape}"
            )
        norm2 = float(np.real(np.vdot(amps, amps)))
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


@dataclass(frozen=True)
class Gate:
    """One gate from the fixed set {H, X, Z, Ry, CNOT, MCZ, MCX}.

    ``qubits`` holds the wires the gate touches: the single target for
    H/X/Z/Ry, (control, target) for CNOT, the full control set for MCZ
    (which is symmetric in its wires), and (*controls, target) for MCX.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    _ARITY = {"h": 1, "x": 1, "z": 1, "ry": 1, "cnot": 2}

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in ("h", "x", "z", "ry", "cnot", "mcz", "mcx"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = self._ARITY.get(self.kind)
        if want is not None and len(self.qubits) != want:
            raise ValueError(f"{self.kind} gate takes {want} qubit(s), got {self.qubits}")
        if self.kind == "mcz" and len(self.qubits) < 1:
            raise ValueError("mcz needs at least one qubit")
        if self.kind == "mcx" and len(self.qubits) < 2:
            raise ValueError("mcx needs at least one control and a target")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"gate qubits must be distinct, got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise IndexError(f"negative qubit index in {self.qubits}")
        if self.kind == "ry":
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"ry needs a finite angle, got {self.angle!r}")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} gate takes no angle")

    def inverse(self) -> "Gate":
        if self.kind == "ry":
            return Gate("ry", self.qubits, -self.angle)
        return self  # every other kind is self-inverse


def H(qubit: int) -> Gate:
    return Gate("h", (qubit,))


def X(qubit: int) -> Gate:
    return Gate("x", (qubit,))


def Z(qubit: int) -> Gate:
    return Gate("z", (qubit,))


def Ry(qubit: int, angle: float) -> Gate:
    return Gate("ry", (qubit,), float(angle))


def CNOT(control: int, target: int) -> Gate:
    return Gate("cnot", (control, target))


def MCZ(*qubits: int) -> Gate:
    return Gate("mcz", tuple(qubits))


def MCX(controls: tuple[int, ...], target: int) -> Gate:
    return Gate("mcx", tuple(controls) + (target,))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed register width."""

    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            _check_indices(g, self.n_qubits)

    def __len__(self) -> int:
        return len(self.gates)


def _check_indices(gate: Gate, n_qubits: int) -> None:
    for q in gate.qubits:
        if not 0 <= q < n_qubits:
            raise IndexError(f"gate qubit {q} out of range for {n_qubits} qubits")


def _apply_gate_array(amps: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    """Apply ``gate`` to an array of shape (2**n,) or (2**n, batch).

    The batch form treats every column as an independent state; it is what
    makes exhaustive sweeps and training loops cheap.
    """
    batch = amps.shape[1:]
    t = amps.reshape((2,) * n + batch)
    kind = gate.kind

    if kind in ("h", "ry"):
        mat = _H_MATRIX if kind == "h" else _ry_matrix(gate.angle)
        q = gate.qubits[0]
        t = np.moveaxis(np.tensordot(mat, t, axes=([1], [q])), 0, q)
    elif kind == "x":
        t = np.flip(t, axis=gate.qubits[0])
    elif kind == "z":
        t = t.copy()
        idx = [slice(None)] * t.ndim
        idx[gate.qubits[0]] = 1
        t[tuple(idx)] *= -1.0
    elif kind == "mcz":
        t = t.copy()
        idx = [slice(None)] * t.ndim
        for q in gate.qubits:
            idx[q] = 1
        t[tuple(idx)] *= -1.0
    else:  # cnot / mcx: flip the target wherever all controls are 1
        controls, target = gate.qubits[:-1], gate.qubits[-1]
        t = t.copy()
        idx = [slice(None)] * t.ndim
        for q in controls:
            idx[q] = 1
        sub_axis = target - sum(1 for q in controls if q < target)
        t[tuple(idx)] = np.flip(t[tuple(idx)], axis=sub_axis)

    return np.ascontiguousarray(t).reshape(amps.shape)


def zero_state(n_qubits: int) -> PureState:
    """The all-zeros basis state |0...0> on ``n_qubits`` wires."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return PureState(n_qubits, amps)


def apply_gate(state: PureState, gate: Gate) -> PureState:
    """Return the state after one gate; the input is left untouched."""
    _check_indices(gate, state.n_qubits)
    return PureState(state.n_qubits, _apply_gate_array(state.amplitudes, gate, state.n_qubits))


def run_circuit(circuit: Circuit, input: PureState) -> PureState:
    """Apply the circuit's gates in list order."""
    if circuit.n_qubits != input.n_qubits:
        raise ValueError(
            f"circuit is on {circuit.n_qubits} qubits but state has {input.n_qubits}"
        )
    amps = input.amplitudes
    for g in circuit.gates:
        amps = _apply_gate_array(amps, g, circuit.n_qubits)
    return PureState(circuit.n_qubits, amps)


def inverse_circuit(circuit: Circuit) -> Circuit:
    """Gate-by-gate inverse in reverse order; undoes ``run_circuit``."""
    return Circuit(circuit.n_qubits, tuple(g.inverse() for g in reversed(circuit.gates)))


def overlap_probability(a: PureState, b: PureState) -> float:
    """|<a|b>|^2."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def basis_probability(state: PureState, basis_index: int) -> float:
    """Probability of measuring the computational basis state ``basis_index``."""
    if not 0 <= basis_index < state.dim:
        raise IndexError(f"basis index {basis_index} out of range for dim {state.dim}")
    return float(abs(state.amplitudes[basis_index]) ** 2)


def sample_shots(state: PureState, observable_index: int, shots: int, seed: int | None = None) -> float:
    """Empirical frequency of ``observable_index`` over ``shots`` sampled measurements.

    Deterministic for a given seed. The estimate is the count of sampled
    basis outcomes equal to the requested index, divided by ``shots``.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if not 0 <= observable_index < state.dim:
        raise IndexError(f"basis index {observable_index} out of range for dim {state.dim}")
    probs = np.abs(state.amplitudes) ** 2
    probs = probs / probs.sum()  # guard against 1e-16 normalization drift
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(state.dim, size=shots, p=probs)
    return float(np.count_nonzero(outcomes == observable_index)) / shots
