"""Real equally weighted (REW) states and their preparation circuits.

A REW state on n qubits has amplitudes ±1/sqrt(2**n); it is fully
described by the sign pattern, a Boolean string of length 2**n.  Sign
patterns are also the class of states preparable by a Hadamard layer
followed by (multi-controlled) Z gates, and this module synthesizes that
circuit for any pattern.

A pattern and its bitwise complement describe the same physical state up
to a global minus sign; the even-numbered pattern (value 0 at index 0) is
used as the canonical representative wherever one is needed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .qstate import Circuit, Gate, H, MCZ, PureState, run_circuit, zero_state

__all__ = [
    "SignVector",
    "state_id",
    "from_state_id",
    "all_sign_vectors",
    "parse_sign_vector",
    "format_sign_vector",
    "complement",
    "rew_state",
    "hsgs",
    "encoding_circuit",
    "witness_circuit",
    "encoded_states",
]


@dataclass(frozen=True)
class SignVector:
    """Sign pattern of a REW state: bit x is 1 iff basis state x gets a minus."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("sign vector entries must be 0 or 1")
        n = len(bits).bit_length() - 1
        if len(bits) < 2 or len(bits) != 2**n:
            raise ValueError(f"sign vector length must be a power of two >= 2, got {len(bits)}")
        object.__setattr__(self, "bits", bits)

    @property
    def n_qubits(self) -> int:
        return len(self.bits).bit_length() - 1


def state_id(f: SignVector) -> int:
    """Integer name of a sign vector: bit x of the id is the sign bit at index x."""
    return sum(b << x for x, b in enumerate(f.bits))


def from_state_id(n_qubits: int, sid: int) -> SignVector:
    size = 2**n_qubits
    if not 0 <= sid < 2**size:
        raise ValueError(f"state id {sid} out of range for {n_qubits} qubits")
    return SignVector(tuple((sid >> x) & 1 for x in range(size)))


def all_sign_vectors(n_qubits: int) -> Iterator[SignVector]:
    """Every sign pattern on n qubits, in state-id order (2**2**n of them)."""
    for sid in range(2 ** (2**n_qubits)):
        yield from_state_id(n_qubits, sid)


def parse_sign_vector(text: str) -> SignVector:
    """Parse "[0, 1, 1, 0]" or the compact bitstring "0110"."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        parts = [p.strip() for p in s[1:-1].split(",")]
        if parts == [""]:
            raise ValueError(f"empty sign vector: {text!r}")
        if not all(p in ("0", "1") for p in parts):
            raise ValueError(f"not a sign vector: {text!r}")
        return SignVector(tuple(int(p) for p in parts))
    if re.fullmatch(r"[01]+", s):
        return SignVector(tuple(int(c) for c in s))
    raise ValueError(f"not a sign vector: {text!r}")


def format_sign_vector(f: SignVector) -> str:
    """Canonical bracketed text form; round-trips through parse_sign_vector."""
    return "[" + ", ".join(str(b) for b in f.bits) + "]"


def complement(f: SignVector) -> SignVector:
    """Flip every sign bit; the resulting state differs by a global minus."""
    return SignVector(tuple(1 - b for b in f.bits))


def rew_state(f: SignVector) -> PureState:
    """The state with amplitude (-1)**f(x) / sqrt(2**n) at basis index x."""
    amps = np.where(np.asarray(f.bits, dtype=bool), -1.0, 1.0) / math.sqrt(len(f.bits))
    return PureState(f.n_qubits, amps.astype(complex))


def _support(index: int, n_qubits: int) -> tuple[int, ...]:
    # Qubit 0 is the most significant bit of the basis index.
    return tuple(q for q in range(n_qubits) if (index >> (n_qubits - 1 - q)) & 1)


def hsgs(target_signs: SignVector) -> list[Gate]:
    """Greedy sign-pattern synthesis over (multi-controlled) Z gates.

    Assumes the Hadamard layer has already been applied, i.e. the register
    holds the uniform superposition.  Works up the Hamming weights: for each
    basis index (in increasing numeric order within a weight) whose
    accumulated sign still disagrees with the target, emit a Z controlled on
    the index's support, which flips every superset index at once.

    A pattern with a minus on index 0 is replaced by its complement first,
    spending the global-phase freedom to keep index 0 positive.
    """
    bits = list(target_signs.bits)
    if bits[0] == 1:
        bits = [1 - b for b in bits]
    n = target_signs.n_qubits
    size = len(bits)
    current = [0] * size
    gates: list[Gate] = []
    for x in sorted(range(1, size), key=lambda x: (x.bit_count(), x)):
        if current[x] != bits[x]:
            gates.append(MCZ(*_support(x, n)))
            for y in range(size):
                if y & x == x:
                    current[y] ^= 1
    return gates


def encoding_circuit(f: SignVector) -> Circuit:
    """Circuit preparing the REW state of ``f`` from |0...0>.

    Output equals rew_state(f) exactly when f has a plus sign on index 0,
    and -rew_state(f) (same physical state) otherwise.
    """
    n = f.n_qubits
    return Circuit(n, tuple(H(q) for q in range(n)) + tuple(hsgs(f)))


def witness_circuit(h: SignVector) -> Circuit:
    """Circuit mapping the REW state of ``h`` to |1...1> up to global phase.

    The inverse of the encoding circuit (every gate there is self-inverse)
    followed by X on each wire, so that the probability of reading |1...1>
    after encoding an input equals the squared overlap with the reference.
    """
    n = h.n_qubits
    enc = encoding_circuit(h)
    x_layer = tuple(Gate("x", (q,)) for q in range(n))
    return Circuit(n, tuple(reversed(enc.gates)) + x_layer)


def encoded_states(fs: Iterable[SignVector]) -> np.ndarray:
    """Column-stacked circuit outputs for a batch of sign vectors.

    Runs each encoding circuit on |0...0>; column j is the amplitude vector
    for the j-th input.  Used to amortize encodings across sweeps.
    """
    cols = []
    for f in fs:
        state = run_circuit(encoding_circuit(f), zero_state(f.n_qubits))
        cols.append(state.amplitudes)
    return np.stack(cols, axis=1)
