"""Layered Ry/CNOT variational ansatz and its activation on REW inputs.

The ansatz alternates a column of Ry rotations with a CNOT ladder
(control i, target j for every i < j), closing with a final Ry column, so
``layers`` entangling blocks use n_qubits * (layers + 1) angles.  Its
activation on an input sign pattern is the probability of the all-ones
readout after encoding the input and running the ansatz, the same readout
the exact witness uses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .qstate import (
    CNOT,
    Circuit,
    PureState,
    Ry,
    basis_probability,
    inverse_circuit,
    run_circuit,
    sample_shots,
    zero_state,
)
from .rewstates import SignVector, encoding_circuit

__all__ = [
    "AnsatzConfig",
    "ansatz_circuit",
    "vqc_activation",
    "batch_activations",
    "classify",
    "save_model",
    "load_model",
]


@dataclass(frozen=True)
class AnsatzConfig:
    """Register width and number of entangling blocks."""

    n_qubits: int
    layers: int = 2

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")

    @property
    def param_count(self) -> int:
        return self.n_qubits * (self.layers + 1)


def _check_params(config: AnsatzConfig, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (config.param_count,):
        raise ValueError(
            f"expected {config.param_count} parameters for {config}, got shape {theta.shape}"
        )
    if not np.all(np.isfinite(theta)):
        raise ValueError("parameters must be finite")
    return theta


def ansatz_circuit(config: AnsatzConfig, theta) -> Circuit:
    """Build the parameterized circuit for one angle vector."""
    theta = _check_params(config, theta)
    n = config.n_qubits
    gates = []
    k = 0
    for _ in range(config.layers):
        for q in range(n):
            gates.append(Ry(q, theta[k]))
            k += 1
        for i in range(n):
            for j in range(i + 1, n):
                gates.append(CNOT(i, j))
    for q in range(n):
        gates.append(Ry(q, theta[k]))
        k += 1
    return Circuit(n, tuple(gates))


def vqc_activation(
    config: AnsatzConfig,
    theta,
    input: SignVector,
    mode: str = "exact",
    shots: int = 1024,
    seed: int | None = None,
) -> float:
    """Probability of the all-ones readout after encoding + ansatz."""
    if input.n_qubits != config.n_qubits:
        raise ValueError("input register size does not match ansatz")
    psi = run_circuit(encoding_circuit(input), zero_state(config.n_qubits))
    out = run_circuit(ansatz_circuit(config, theta), psi)
    ones = out.dim - 1
    if mode == "exact":
        return basis_probability(out, ones)
    if mode == "shots":
        return sample_shots(out, ones, shots, seed)
    raise ValueError(f"mode must be 'exact' or 'shots', got {mode!r}")


def batch_activations(config: AnsatzConfig, theta, encoded: np.ndarray) -> np.ndarray:
    """Exact activations for many pre-encoded inputs at once.

    ``encoded`` has one amplitude column per input (see
    rewstates.encoded_states).  Rather than evolving every column, the
    all-ones readout row is pulled back through the inverse ansatz:
    <1...1|V|psi> = <phi|psi> with |phi> = V^dagger|1...1>.  Agrees with
    vqc_activation in exact mode to machine precision.
    """
    n = config.n_qubits
    if encoded.shape[0] != 2**n:
        raise ValueError(f"encoded states have dimension {encoded.shape[0]}, expected {2**n}")
    ones = np.zeros(2**n, dtype=complex)
    ones[-1] = 1.0
    phi = run_circuit(
        inverse_circuit(ansatz_circuit(config, theta)), PureState(n, ones)
    ).amplitudes
    return np.abs(phi.conj() @ encoded) ** 2


def classify(
    config: AnsatzConfig,
    theta,
    input: SignVector,
    threshold: float,
    mode: str = "exact",
    shots: int = 1024,
    seed: int | None = None,
) -> bool:
    """True iff the activation strictly exceeds the threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    return vqc_activation(config, theta, input, mode, shots, seed) > threshold


def save_model(path, config: AnsatzConfig, theta, seed: int | None = None, extra: dict | None = None) -> None:
    """Persist angles + ansatz shape as JSON for later classification."""
    theta = _check_params(config, theta)
    doc = {
        "n_qubits": config.n_qubits,
        "layers": config.layers,
        "theta": [float(t) for t in theta],
        "seed": seed,
    }
    if extra:
        doc.update(extra)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_model(path) -> tuple[AnsatzConfig, np.ndarray, int | None]:
    """Load a model saved by save_model; validates the parameter count."""
    with open(path) as fh:
        doc = json.load(fh)
    try:
        config = AnsatzConfig(int(doc["n_qubits"]), int(doc["layers"]))
        theta = np.asarray(doc["theta"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed model file {path}: {exc}") from exc
    theta = _check_params(config, theta)
    seed = doc.get("seed")
    return config, theta, None if seed is None else int(seed)
