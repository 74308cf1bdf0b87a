import math

import numpy as np
import pytest

from qwitness.entanglement import (
    Bipartition,
    census_records,
    entanglement_measure,
    entanglement_record,
    enumerate_bipartitions,
    is_separable,
    rew_census,
    schmidt_alpha,
    schmidt_squares,
)
from qwitness.qstate import PureState
from qwitness.rewstates import SignVector, complement, from_state_id, rew_state

REFERENCE = SignVector((0, 0, 0, 0, 0, 1, 1, 0))


def random_state(n, rng, real=False):
    v = rng.normal(size=2**n)
    if not real:
        v = v + 1j * rng.normal(size=2**n)
    return PureState(n, v / np.linalg.norm(v))


from _oracles import product_overlap_search

# Oracle: largest eigenvalue of the reduced density matrix obtained by
# partial trace of the full projector, an independent route to alpha.


def reduced_density_top_eigenvalue(state, split):
    n = state.n_qubits
    rho = np.outer(state.amplitudes, state.amplitudes.conj())
    t = rho.reshape((2,) * (2 * n))
    perm = split.side_a + split.side_b
    t = t.transpose(perm + tuple(q + n for q in perm))
    da, db = 2 ** len(split.side_a), 2 ** len(split.side_b)
    t = t.reshape(da, db, da, db)
    rho_a = np.einsum("ibjb->ij", t)
    return float(np.linalg.eigvalsh(rho_a)[-1])


# ---------------------------------------------------------------------------


def test_enumerate_bipartitions_counts():
    assert len(enumerate_bipartitions(2)) == 1
    assert len(enumerate_bipartitions(3)) == 3
    assert len(enumerate_bipartitions(4)) == 7
    with pytest.raises(ValueError):
        enumerate_bipartitions(1)


def test_enumerate_bipartitions_n3_sides():
    sides = {b.side_a for b in enumerate_bipartitions(3)}
    assert sides == {(0,), (1,), (2,)}
    b = enumerate_bipartitions(3)[1]
    assert b.side_a == (1,) and b.side_b == (0, 2)


def test_bipartition_canonical_form_enforced():
    with pytest.raises(ValueError):
        Bipartition(3, (1, 2))  # larger side
    with pytest.raises(ValueError):
        Bipartition(4, (2, 3))  # half split must keep qubit 0
    with pytest.raises(ValueError):
        Bipartition(3, ())


def test_schmidt_alpha_product_state_is_one():
    st = rew_state(SignVector((0,) * 8))
    for split in enumerate_bipartitions(3):
        assert schmidt_alpha(st, split) == pytest.approx(1.0, abs=1e-12)


def test_schmidt_alpha_ghz_is_half():
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1 / math.sqrt(2)
    ghz = PureState(3, amps)
    for split in enumerate_bipartitions(3):
        assert schmidt_alpha(ghz, split) == pytest.approx(0.5, abs=1e-12)


def test_schmidt_alpha_vs_product_search_on_rew_states():
    rng = np.random.default_rng(77)
    for _ in range(4):
        f = from_state_id(3, int(rng.integers(256)))
        st = rew_state(f)
        for split in enumerate_bipartitions(3):
            alpha = schmidt_alpha(st, split)
            found = product_overlap_search(st, split, rng, samples=60_000)
            assert found <= alpha + 1e-9
            assert alpha - found < 1e-2


def test_schmidt_squares_sum_to_one():
    rng = np.random.default_rng(31)
    for _ in range(50):
        st = random_state(3, rng)
        for split in enumerate_bipartitions(3):
            assert abs(float(np.sum(schmidt_squares(st, split))) - 1.0) < 1e-10


def test_alpha_matches_reduced_density_route():
    rng = np.random.default_rng(90)
    for _ in range(1000):
        st = random_state(3, rng)
        e, alpha = entanglement_measure(st)
        best = max(
            reduced_density_top_eigenvalue(st, split)
            for split in enumerate_bipartitions(3)
        )
        assert alpha == pytest.approx(best, abs=1e-10)
        assert e == pytest.approx(1.0 - best, abs=1e-10)


def test_entanglement_measure_reference_values():
    e, _ = entanglement_measure(rew_state(SignVector((0,) * 8)))
    assert e == pytest.approx(0.0, abs=1e-12)
    e, _ = entanglement_measure(rew_state(REFERENCE))
    assert e == pytest.approx(0.5, abs=1e-9)
    # one sign flipped relative to the reference: a near-neighbour state
    e, _ = entanglement_measure(rew_state(SignVector((1, 0, 0, 0, 0, 1, 1, 0))))
    assert e == pytest.approx(0.25, abs=1e-9)


def test_entanglement_measure_rejects_single_qubit():
    with pytest.raises(ValueError):
        entanglement_measure(PureState(1, np.array([1.0, 0.0], dtype=complex)))


def test_measure_invariant_under_qubit_relabeling():
    rng = np.random.default_rng(13)
    for _ in range(30):
        st = random_state(3, rng)
        e, _ = entanglement_measure(st)
        perm = tuple(rng.permutation(3))
        permuted = PureState(3, st.amplitudes.reshape(2, 2, 2).transpose(perm).reshape(8))
        e2, _ = entanglement_measure(permuted)
        assert e2 == pytest.approx(e, abs=1e-12)


def test_measure_complement_invariance_exact():
    for sid in range(0, 256, 2):
        f = from_state_id(3, sid)
        assert entanglement_measure(rew_state(f)) == entanglement_measure(
            rew_state(complement(f))
        )


def test_census_n3():
    assert rew_census(3) == {0.0: 64, 0.25: 128, 0.5: 64}
    entangled = sum(c for e, c in rew_census(3).items() if e > 0)
    assert entangled == 192


def test_census_n2_against_product_search():
    counts = rew_census(2)
    assert sum(counts.values()) == 16
    rng = np.random.default_rng(55)
    split = enumerate_bipartitions(2)[0]
    separable = 0
    for sid in range(16):
        st = rew_state(from_state_id(2, sid))
        found = product_overlap_search(st, split, rng, samples=40_000)
        if found > 1.0 - 1e-2:
            separable += 1
    assert counts.get(0.0, 0) == separable


def test_census_resource_guard():
    with pytest.raises(ValueError):
        rew_census(5)
    with pytest.raises(ValueError):
        rew_census(1)


def test_is_separable():
    assert is_separable(rew_state(SignVector((0,) * 8)))
    assert not is_separable(rew_state(REFERENCE))


def test_census_separable_records_agree_with_is_separable():
    for rec in census_records(3):
        if rec.e_value < 1e-9:
            assert is_separable(rew_state(rec.sign_vector))


def test_entanglement_record_consistency():
    rec = entanglement_record(REFERENCE)
    assert rec.alpha == pytest.approx(1.0 - rec.e_value, abs=1e-12)
    assert rec.alpha == max(rec.per_bipartition_alpha.values())
    assert len(rec.per_bipartition_alpha) == 3
