"""qwitness: entanglement witnesses for real equally weighted qubit states.

Layers, bottom up:

* :mod:`qwitness.qstate`        dense statevector simulation
* :mod:`qwitness.rewstates`     sign-pattern states and their circuits
* :mod:`qwitness.entanglement`  Schmidt analysis, measure E, exhaustive census
* :mod:`qwitness.witness`       exact projective witness and detection sweeps
* :mod:`qwitness.vqc`           layered Ry/CNOT ansatz and activations
* :mod:`qwitness.learn`         datasets, metrics, optimizer, training loops
* :mod:`qwitness.cli`           command-line front end
"""

from .entanglement import (
    Bipartition,
    EntanglementRecord,
    census_records,
    entanglement_measure,
    entanglement_record,
    enumerate_bipartitions,
    is_separable,
    rew_census,
    schmidt_alpha,
    schmidt_squares,
)
from .learn import (
    Dataset,
    LabeledState,
    Metrics,
    OptimizerConfig,
    TrainRun,
    build_known_dataset,
    build_unknown_dataset,
    compute_metrics,
    cross_entropy,
    f_beta,
    minimize,
    train_known,
    train_unknown,
)
from .qstate import (
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
from .rewstates import (
    SignVector,
    all_sign_vectors,
    complement,
    encoded_states,
    encoding_circuit,
    format_sign_vector,
    from_state_id,
    hsgs,
    parse_sign_vector,
    rew_state,
    state_id,
    witness_circuit,
)
from .vqc import (
    AnsatzConfig,
    ansatz_circuit,
    batch_activations,
    classify,
    load_model,
    save_model,
    vqc_activation,
)
from .witness import (
    DetectionReport,
    WitnessSpec,
    detection_sweep,
    make_witness,
    witness_activation,
    witness_value,
)

__version__ = "0.1.0"
