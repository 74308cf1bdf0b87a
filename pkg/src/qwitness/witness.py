"""Exact projective entanglement witness over REW states.

A witness is built from an entangled reference state |H>.  Its expectation
on an input rho is alpha(|H>) - <H|rho|H>, where alpha is the reference's
largest squared product overlap; a negative value certifies entanglement.
The overlap is evaluated the way a quantum register would: encode the
input, run the reference's inverse-preparation circuit, and read the
probability of the all-ones basis state.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .entanglement import census_records, entanglement_measure
from .qstate import PureState, basis_probability, run_circuit, sample_shots, zero_state
from .rewstates import (
    SignVector,
    encoding_circuit,
    format_sign_vector,
    from_state_id,
    rew_state,
    witness_circuit,
)

__all__ = [
    "WitnessSpec",
    "DetectionRecord",
    "DetectionReport",
    "make_witness",
    "witness_activation",
    "witness_value",
    "detection_sweep",
    "write_detection_csv",
    "detection_summary",
]

MAX_SWEEP_QUBITS = 3


@dataclass(frozen=True)
class WitnessSpec:
    """Reference sign pattern plus its detection threshold alpha."""

    reference: SignVector
    alpha: float


@dataclass(frozen=True)
class DetectionRecord:
    state_id: int
    sign_vector: SignVector
    activation: float
    e_value: float
    detected: bool


@dataclass(frozen=True)
class DetectionReport:
    reference: SignVector
    alpha: float
    records: tuple[DetectionRecord, ...]

    @property
    def detected_count(self) -> int:
        return sum(1 for r in self.records if r.detected)


def make_witness(reference: SignVector) -> WitnessSpec:
    """Build the witness for an entangled reference state.

    Separable references are rejected: with alpha = 1 the witness value is
    nonnegative for every state and nothing can ever be detected.  A
    non-maximally entangled reference is accepted with a warning since its
    higher threshold weakens detection.
    """
    e, alpha = entanglement_measure(rew_state(reference))
    if e < 1e-9:
        raise ValueError(
            f"reference {format_sign_vector(reference)} is separable; "
            "a witness built on it cannot detect anything"
        )
    if e < 0.5 - 1e-9:
        warnings.warn(
            f"reference has E={e:.3g}, not maximally entangled; "
            "detection threshold will be high",
            stacklevel=2,
        )
    return WitnessSpec(reference, alpha)


def _final_state(reference: SignVector, input: SignVector) -> PureState:
    psi = run_circuit(encoding_circuit(input), zero_state(input.n_qubits))
    return run_circuit(witness_circuit(reference), psi)


def witness_activation(
    reference: SignVector,
    input: SignVector,
    mode: str = "exact",
    shots: int = 1024,
    seed: int | None = None,
) -> float:
    """Probability of reading |1...1> after encoding + witness circuit.

    Equals the squared overlap between the two REW states.  "exact" reads
    the basis probability off the statevector; "shots" draws a finite
    sample from it.
    """
    out = _final_state(reference, input)
    ones = out.dim - 1
    if mode == "exact":
        return basis_probability(out, ones)
    if mode == "shots":
        return sample_shots(out, ones, shots, seed)
    raise ValueError(f"mode must be 'exact' or 'shots', got {mode!r}")


def witness_value(
    w: WitnessSpec,
    input: SignVector,
    mode: str = "exact",
    shots: int = 1024,
    seed: int | None = None,
) -> float:
    """alpha - activation; negative means the input is certified entangled."""
    return w.alpha - witness_activation(w.reference, input, mode, shots, seed)


@lru_cache(maxsize=2)
def _e_by_state_id(n_qubits: int) -> dict[int, float]:
    return {rec.state_id: rec.e_value for rec in census_records(n_qubits)}


def detection_sweep(
    w: WitnessSpec,
    mode: str = "exact",
    shots: int = 1024,
    seed: int | None = None,
) -> DetectionReport:
    """Evaluate the witness against every sign pattern of the register.

    Detection is strict: a state counts only when its activation exceeds
    alpha, i.e. the witness expectation is strictly negative.
    """
    n = w.reference.n_qubits
    if n > MAX_SWEEP_QUBITS:
        raise ValueError(f"exhaustive sweep over 2**{2**n} states is not tractable")
    if mode not in ("exact", "shots"):
        raise ValueError(f"mode must be 'exact' or 'shots', got {mode!r}")
    e_values = _e_by_state_id(n)
    wit = witness_circuit(w.reference)
    seeds = np.random.SeedSequence(seed).generate_state(2 ** (2**n)) if mode == "shots" else None
    records = []
    for sid in range(2 ** (2**n)):
        f = from_state_id(n, sid)
        psi = run_circuit(encoding_circuit(f), zero_state(n))
        out = run_circuit(wit, psi)
        ones = out.dim - 1
        if mode == "exact":
            act = basis_probability(out, ones)
        else:
            act = sample_shots(out, ones, shots, int(seeds[sid]))
        records.append(
            DetectionRecord(sid, f, act, e_values[sid], act > w.alpha)
        )
    return DetectionReport(w.reference, w.alpha, tuple(records))


def write_detection_csv(report: DetectionReport, path) -> None:
    """Sweep results as CSV: state_id, sign_vector, activation, E, detected."""
    import csv

    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["state_id", "sign_vector", "activation", "E", "detected"])
        for r in report.records:
            bits = "".join(str(b) for b in r.sign_vector.bits)
            wr.writerow([r.state_id, bits, f"{r.activation:.12g}", f"{r.e_value:.12g}", int(r.detected)])


def detection_summary(report: DetectionReport) -> dict:
    """JSON-ready summary: reference, alpha, detected count, E histogram of hits."""
    hist: dict[str, int] = {}
    for r in report.records:
        if r.detected:
            key = f"{round(r.e_value, 9):g}"
            hist[key] = hist.get(key, 0) + 1
    return {
        "reference": format_sign_vector(report.reference),
        "alpha": report.alpha,
        "detected_count": report.detected_count,
        "detected_e_histogram": dict(sorted(hist.items())),
    }
