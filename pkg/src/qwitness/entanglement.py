"""Exact multipartite entanglement analytics for small pure states.

The degree of entanglement of a pure state is measured per bipartition by
the largest squared Schmidt coefficient (the best squared overlap with any
product state across that cut), and globally by

    E = 1 - max over bipartitions of that coefficient,

which is 0 for biseparable states and 0.5 for maximally entangled 3-qubit
REW states.  The exhaustive census over all sign patterns of a register
classifies each one by E.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qstate import PureState
from .rewstates import SignVector, all_sign_vectors, rew_state, state_id

__all__ = [
    "Bipartition",
    "EntanglementRecord",
    "enumerate_bipartitions",
    "schmidt_squares",
    "schmidt_alpha",
    "entanglement_measure",
    "entanglement_record",
    "census_records",
    "rew_census",
    "is_separable",
    "write_census_csv",
]

SEPARABLE_TOL = 1e-9

# Exhaustive enumeration is 2**2**n states; past n=4 this is out of reach.
MAX_CENSUS_QUBITS = 4


@dataclass(frozen=True)
class Bipartition:
    """One unordered split of the register into side A and its complement.

    Canonical form: side A is the smaller side, with ties broken by
    requiring qubit 0 in A, so each split appears exactly once.
    """

    n_qubits: int
    side_a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(sorted(int(q) for q in self.side_a))
        if not 1 <= len(a) <= self.n_qubits - 1:
            raise ValueError(f"side A must be a nonempty proper subset, got {a}")
        if len(set(a)) != len(a) or a[0] < 0 or a[-1] >= self.n_qubits:
            raise ValueError(f"invalid qubit indices in {a}")
        if 2 * len(a) > self.n_qubits or (2 * len(a) == self.n_qubits and 0 not in a):
            raise ValueError(f"non-canonical bipartition {a} for n={self.n_qubits}")
        object.__setattr__(self, "side_a", a)

    @property
    def side_b(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.n_qubits) if q not in self.side_a)


@dataclass(frozen=True)
class EntanglementRecord:
    """Census entry for one sign pattern."""

    state_id: int
    sign_vector: SignVector
    e_value: float
    alpha: float
    per_bipartition_alpha: dict


def enumerate_bipartitions(n_qubits: int) -> list[Bipartition]:
    """All 2**(n-1) - 1 canonical bipartitions of n qubits."""
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits to bipartition, got {n_qubits}")
    out = []
    for k in range(1, n_qubits // 2 + 1):
        for combo in itertools.combinations(range(n_qubits), k):
            if 2 * k == n_qubits and 0 not in combo:
                continue
            out.append(Bipartition(n_qubits, combo))
    return out


def _split_matrix(state: PureState, split: Bipartition) -> np.ndarray:
    # Rows are side-A bit patterns, columns side-B, both in qubit order.
    if split.n_qubits != state.n_qubits:
        raise ValueError("bipartition does not match state size")
    perm = split.side_a + split.side_b
    t = state.amplitudes.reshape((2,) * state.n_qubits).transpose(perm)
    return t.reshape(2 ** len(split.side_a), 2 ** len(split.side_b))


def schmidt_squares(state: PureState, split: Bipartition) -> np.ndarray:
    """Squared Schmidt coefficients across the split, descending; they sum to 1.

    Computed from the Gram matrix of the smaller side rather than a full
    SVD: its eigenvalues are exactly the squared singular values.
    """
    m = _split_matrix(state, split)
    g = m @ m.conj().T
    asym = float(np.max(np.abs(g - g.conj().T)))
    if asym > 1e-10:
        raise ValueError(f"Gram matrix asymmetry {asym:.3e} exceeds tolerance")
    vals = np.linalg.eigvalsh(g)[::-1]
    return np.clip(vals.real, 0.0, None)


def schmidt_alpha(state: PureState, split: Bipartition) -> float:
    """Largest squared Schmidt coefficient across the split.

    Equals the best squared overlap the state admits with any product state
    |phi_A>|phi_B> over this cut; 1.0 exactly when the state is a product
    across it.
    """
    return float(schmidt_squares(state, split)[0])


def entanglement_measure(state: PureState) -> tuple[float, float]:
    """Return (E, alpha): alpha is the max schmidt_alpha over all bipartitions."""
    if state.n_qubits < 2:
        raise ValueError("entanglement measure needs at least 2 qubits")
    alpha = max(schmidt_alpha(state, split) for split in enumerate_bipartitions(state.n_qubits))
    return 1.0 - alpha, alpha


def is_separable(state: PureState) -> bool:
    """True iff the state is biseparable across some cut (E below tolerance)."""
    e, _ = entanglement_measure(state)
    return e < SEPARABLE_TOL


def entanglement_record(f: SignVector) -> EntanglementRecord:
    state = rew_state(f)
    per = {split: schmidt_alpha(state, split) for split in enumerate_bipartitions(f.n_qubits)}
    alpha = max(per.values())
    return EntanglementRecord(state_id(f), f, 1.0 - alpha, alpha, per)


@lru_cache(maxsize=4)
def census_records(n_qubits: int) -> tuple[EntanglementRecord, ...]:
    """Entanglement record for every sign pattern on ``n_qubits`` qubits."""
    if n_qubits < 2:
        raise ValueError("census needs at least 2 qubits")
    if n_qubits > MAX_CENSUS_QUBITS:
        raise ValueError(
            f"census over 2**{2**n_qubits} sign patterns is not tractable "
            f"(limit n <= {MAX_CENSUS_QUBITS})"
        )
    return tuple(entanglement_record(f) for f in all_sign_vectors(n_qubits))


def rew_census(n_qubits: int) -> dict[float, int]:
    """Histogram {E value: count} over every sign pattern, E bucketed at 1e-9."""
    counts: dict[float, int] = {}
    for rec in census_records(n_qubits):
        bucket = round(rec.e_value, 9)
        counts[bucket] = counts.get(bucket, 0) + 1
    return dict(sorted(counts.items()))


def write_census_csv(records, path) -> None:
    """Census as CSV rows: state_id, sign_vector (compact bits), E, alpha."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["state_id", "sign_vector", "E", "alpha"])
        for rec in records:
            bits = "".join(str(b) for b in rec.sign_vector.bits)
            w.writerow([rec.state_id, bits, f"{rec.e_value:.12g}", f"{rec.alpha:.12g}"])
