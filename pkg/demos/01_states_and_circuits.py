"""
Sign-pattern states and their preparation circuits
===================================================

A real equally weighted (REW) state on n qubits puts amplitude
+-1/sqrt(2**n) on every basis state; the sign pattern is a Boolean string
of length 2**n.  This demo builds a few 3-qubit patterns, synthesizes
their preparation circuits, and checks the overlap rule.
"""

import numpy as np

import qwitness as qw

# the all-plus pattern: a product state, prepared by Hadamards alone
trivial = qw.parse_sign_vector("[0, 0, 0, 0, 0, 0, 0, 0]")
circ = qw.encoding_circuit(trivial)
print("pattern", qw.format_sign_vector(trivial))
print("circuit:", [(g.kind, g.qubits) for g in circ.gates])

# a pattern with minus signs on the qubit-0 = 1 half: one extra Z gate
half = qw.parse_sign_vector("[0, 0, 0, 0, 1, 1, 1, 1]")
circ = qw.encoding_circuit(half)
print("\npattern", qw.format_sign_vector(half))
print("circuit:", [(g.kind, g.qubits) for g in circ.gates])
state = qw.run_circuit(circ, qw.zero_state(3))
print("amplitudes * sqrt(8):", np.round(state.amplitudes.real * np.sqrt(8), 3))

# a maximally entangled pattern needs multi-controlled Z gates
ref = qw.parse_sign_vector("[0, 0, 0, 0, 0, 1, 1, 0]")
circ = qw.encoding_circuit(ref)
print("\npattern", qw.format_sign_vector(ref))
print("circuit:", [(g.kind, g.qubits) for g in circ.gates])

# squared overlap between two REW states depends only on how many sign
# bits disagree: (1 - 2 d / 2**n)**2
for other in (ref, qw.complement(ref), half, trivial):
    d = sum(a != b for a, b in zip(ref.bits, other.bits))
    overlap = qw.overlap_probability(qw.rew_state(ref), qw.rew_state(other))
    print(f"d={d}: overlap {overlap:.4f}  (rule gives {(1 - 2 * d / 8) ** 2:.4f})")

# every pattern and its complement are the same physical state
assert np.allclose(
    qw.rew_state(qw.complement(ref)).amplitudes, -qw.rew_state(ref).amplitudes
)
print("\ncomplementary patterns differ only by a global minus sign")
