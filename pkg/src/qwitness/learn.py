"""Supervised learning of entanglement witnesses with a derivative-free optimizer.

Two tasks share one training loop:

* known witness: labels reproduce the detection set of an exact projective
  witness and the cost is the summed cross entropy between labels and
  circuit activations;
* unknown witness: labels mark every entangled state and the cost is
  1 - F_beta of the thresholded classification, with a small beta so that
  false positives on separable states dominate the cost.

Training restarts from random angle vectors, re-seeding near the best
minimum found so far whenever it looks interesting, and keeps the best
restart.  All cost evaluation is exact-mode (deterministic) unless a
caller opts into sampled readout.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.optimize

from .entanglement import SEPARABLE_TOL, census_records
from .rewstates import SignVector, encoded_states, from_state_id
from .vqc import AnsatzConfig, batch_activations
from .witness import detection_sweep, make_witness

__all__ = [
    "LabeledState",
    "Dataset",
    "Metrics",
    "OptimizerConfig",
    "TrainRun",
    "cross_entropy",
    "f_beta",
    "compute_metrics",
    "build_known_dataset",
    "build_unknown_dataset",
    "minimize",
    "train_known",
    "train_unknown",
    "write_dataset_csv",
    "save_trainrun",
    "metrics_to_dict",
]

PROB_CLAMP = 1e-12


@dataclass(frozen=True)
class LabeledState:
    state_id: int
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label}")


@dataclass(frozen=True)
class Dataset:
    """Ordered, shuffled collection of labeled sign patterns."""

    n_qubits: int
    items: tuple[LabeledState, ...]
    split: str
    provenance: str
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        ids = [it.state_id for it in self.items]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate state ids in dataset")
        if ids and max(ids) >= 2 ** (2**self.n_qubits):
            raise ValueError("state id out of range for register size")

    def __len__(self) -> int:
        return len(self.items)

    @property
    def labels(self) -> np.ndarray:
        return np.array([it.label for it in self.items], dtype=int)


@dataclass(frozen=True)
class Metrics:
    """Confusion counts plus derived scores.

    ``precision`` and ``recall`` are None when their denominator is empty.
    The F score always has a value: an empty prediction set is scored as
    precision 1 with recall 0, so predicting nothing is never rewarded but
    never produces an undefined cost either.
    """

    tp: int
    fp: int
    fn: int
    tn: int
    precision: float | None
    recall: float | None
    f_beta: float
    cross_entropy: float | None = None


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for the polytope descent and its restart loop."""

    max_iterations: int = 2000
    initial_step: float = 1.0
    convergence_tolerance: float = 1e-6
    restarts: int = 50
    warm_start_threshold: float | None = None  # None: any best-so-far is interesting
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1 or self.restarts < 1:
            raise ValueError("max_iterations and restarts must be positive")
        if self.initial_step <= 0 or self.convergence_tolerance <= 0:
            raise ValueError("initial_step and convergence_tolerance must be positive")


@dataclass(frozen=True)
class TrainRun:
    """Outcome of one training: best angles, per-restart costs, metrics."""

    config: AnsatzConfig
    best_params: np.ndarray
    best_cost: float
    cost_trace: tuple[float, ...]
    train_metrics: Metrics
    test_metrics: Metrics | None
    seed: int

    def __post_init__(self):
        params = np.asarray(self.best_params, dtype=float)
        params.setflags(write=False)
        object.__setattr__(self, "best_params", params)
        object.__setattr__(self, "cost_trace", tuple(self.cost_trace))


def cross_entropy(labels, probs) -> float:
    """Summed binary cross entropy, natural log, probabilities clamped to
    [1e-12, 1 - 1e-12] so the value is finite for hard 0/1 predictions."""
    y = np.asarray(labels, dtype=float)
    p = np.asarray(probs, dtype=float)
    if y.shape != p.shape:
        raise ValueError(f"length mismatch: {y.shape} labels vs {p.shape} probabilities")
    p = np.clip(p, PROB_CLAMP, 1.0 - PROB_CLAMP)
    return float(-np.sum(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def f_beta(precision: float, recall: float, beta: float) -> float:
    """Weighted harmonic mean of precision and recall.

    beta < 1 weights precision more heavily; beta -> 0 recovers precision.
    Returns 0 when both inputs are 0.
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if not (0.0 <= precision <= 1.0 and 0.0 <= recall <= 1.0):
        raise ValueError("precision and recall must lie in [0, 1]")
    if precision == 0.0 and recall == 0.0:
        return 0.0
    b2 = beta * beta
    return (1.0 + b2) * precision * recall / (b2 * precision + recall)


def compute_metrics(predictions, labels, beta: float = 1.0) -> Metrics:
    """Confusion counts and scores for a boolean prediction vector."""
    preds = np.asarray(predictions, dtype=bool)
    y = np.asarray(labels, dtype=int)
    if preds.shape != y.shape:
        raise ValueError(f"length mismatch: {preds.shape} predictions vs {y.shape} labels")
    tp = int(np.count_nonzero(preds & (y == 1)))
    fp = int(np.count_nonzero(preds & (y == 0)))
    fn = int(np.count_nonzero(~preds & (y == 1)))
    tn = int(np.count_nonzero(~preds & (y == 0)))
    precision = tp / (tp + fp) if tp + fp > 0 else None
    recall = tp / (tp + fn) if tp + fn > 0 else None
    f = f_beta(1.0 if precision is None else precision,
               0.0 if recall is None else recall, beta)
    return Metrics(tp, fp, fn, tn, precision, recall, f)


def _representatives(records, entangled: bool) -> list[int]:
    # One state id per complement pair: the member whose sign bit at index 0
    # is 0 (even id).  Complementary states are physically identical.
    want = (lambda e: e > SEPARABLE_TOL) if entangled else (lambda e: e <= SEPARABLE_TOL)
    return sorted(r.state_id for r in records if r.state_id % 2 == 0 and want(r.e_value))


def _complement_id(sid: int, n_qubits: int) -> int:
    return (2 ** (2**n_qubits) - 1) - sid


def build_known_dataset(reference: SignVector, seed: int) -> Dataset:
    """Training set for reproducing an exact witness.

    Label 1: every state the witness detects.  Label 0: a seeded 60% sample
    of the remaining entangled states (one per complement pair) plus a 50%
    sample of the separable states (one per complement pair).  Shuffled.
    """
    n = reference.n_qubits
    report = detection_sweep(make_witness(reference))
    detected = [r.state_id for r in report.records if r.detected]
    records = census_records(n)
    rest_ent = [
        sid for sid in _representatives(records, entangled=True)
        if sid not in set(detected) and _complement_id(sid, n) not in set(detected)
    ]
    sep = _representatives(records, entangled=False)
    rng = np.random.default_rng(seed)
    chosen_ent = rng.choice(rest_ent, size=int(0.6 * len(rest_ent)), replace=False)
    chosen_sep = rng.choice(sep, size=len(sep) // 2, replace=False)
    items = [LabeledState(sid, 1) for sid in detected]
    items += [LabeledState(int(sid), 0) for sid in sorted(chosen_ent)]
    items += [LabeledState(int(sid), 0) for sid in sorted(chosen_sep)]
    rng.shuffle(items)
    return Dataset(n, tuple(items), "train", "known", seed)


def build_unknown_dataset(seed: int, n_qubits: int = 3) -> tuple[Dataset, Dataset]:
    """Train/test split for learning a witness from entanglement labels alone.

    Working over one representative per complement pair, the train set
    takes 60% of the entangled representatives (label 1) and 90% of the
    separable ones (label 0).  The test set holds every remaining
    representative plus the complements of all train states; labels come
    from the exact entanglement measure.
    """
    records = census_records(n_qubits)
    e_of = {r.state_id: r.e_value for r in records}
    ent = _representatives(records, entangled=True)
    sep = _representatives(records, entangled=False)
    rng = np.random.default_rng(seed)
    train_ent = sorted(int(s) for s in rng.choice(ent, size=int(0.6 * len(ent)), replace=False))
    train_sep = sorted(int(s) for s in rng.choice(sep, size=int(0.9 * len(sep)), replace=False))
    train_items = [LabeledState(s, 1) for s in train_ent] + [LabeledState(s, 0) for s in train_sep]
    rng.shuffle(train_items)

    train_ids = set(train_ent) | set(train_sep)
    test_ids = [s for s in ent + sep if s not in train_ids]
    test_ids += [_complement_id(s, n_qubits) for s in sorted(train_ids)]
    test_items = [
        LabeledState(s, int(e_of[s] > SEPARABLE_TOL)) for s in test_ids
    ]
    rng.shuffle(test_items)
    return (
        Dataset(n_qubits, tuple(train_items), "train", "unknown", seed),
        Dataset(n_qubits, tuple(test_items), "test", "unknown", seed),
    )


def minimize(cost, x0, config: OptimizerConfig) -> tuple[np.ndarray, float]:
    """Polytope descent from one starting point.

    Nelder-Mead with an initial simplex of edge ``initial_step``; stops when
    the simplex collapses below ``convergence_tolerance`` or at the
    iteration cap.  Deterministic, and returns the best point ever
    evaluated, which the raw scipy result does not guarantee.
    """
    x0 = np.asarray(x0, dtype=float)
    best_x = x0.copy()
    best_f = math.inf

    def wrapped(x):
        nonlocal best_x, best_f
        v = float(cost(x))
        if not math.isfinite(v):
            raise RuntimeError(f"cost function returned non-finite value {v!r} at {x!r}")
        if v < best_f:
            best_f = v
            best_x = np.array(x, dtype=float, copy=True)
        return v

    simplex = np.vstack([x0] + [x0 + config.initial_step * np.eye(x0.size)[i] for i in range(x0.size)])
    scipy.optimize.minimize(
        wrapped,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": config.max_iterations,
            "xatol": config.convergence_tolerance,
            "fatol": config.convergence_tolerance,
            "initial_simplex": simplex,
        },
    )
    return best_x, best_f


def _interesting(best_cost: float, config: OptimizerConfig) -> bool:
    if config.warm_start_threshold is None:
        return True
    return best_cost < config.warm_start_threshold


def _restart_loop(cost, ansatz: AnsatzConfig, opt: OptimizerConfig):
    """Random restarts, alternating with perturbed restarts from the best
    interesting minimum found so far.  Returns (theta, cost, per-restart trace)."""
    rng = np.random.default_rng(opt.seed)
    pc = ansatz.param_count
    best_theta, best_cost = None, math.inf
    trace = []
    for r in range(opt.restarts):
        if r % 2 == 1 and best_theta is not None and _interesting(best_cost, opt):
            x0 = best_theta + rng.normal(scale=0.3, size=pc)
        else:
            x0 = rng.uniform(0.0, 2.0 * math.pi, size=pc)
        theta, c = minimize(cost, x0, opt)
        trace.append(c)
        if c < best_cost:
            best_cost, best_theta = c, theta
    return best_theta, best_cost, tuple(trace)


def _encoded_matrix(n_qubits: int, state_ids) -> np.ndarray:
    return encoded_states(from_state_id(n_qubits, sid) for sid in state_ids)


def train_known(
    reference: SignVector,
    dataset: Dataset,
    ansatz: AnsatzConfig,
    opt: OptimizerConfig,
) -> TrainRun:
    """Fit the ansatz to reproduce an exact witness's detections.

    Minimizes the summed cross entropy between dataset labels and exact
    activations.  Train metrics are over the dataset; test metrics compare
    the thresholded classification at 0.5 against the witness's detection
    verdicts over the full register census.
    """
    n = ansatz.n_qubits
    m_train = _encoded_matrix(n, (it.state_id for it in dataset.items))
    y = dataset.labels

    def cost(theta):
        return cross_entropy(y, batch_activations(ansatz, theta, m_train))

    theta, best_cost, trace = _restart_loop(cost, ansatz, opt)

    acts = batch_activations(ansatz, theta, m_train)
    train_metrics = replace(
        compute_metrics(acts > 0.5, y), cross_entropy=cross_entropy(y, acts)
    )
    report = detection_sweep(make_witness(reference))
    m_all = _encoded_matrix(n, (r.state_id for r in report.records))
    wit_labels = np.array([int(r.detected) for r in report.records])
    acts_all = batch_activations(ansatz, theta, m_all)
    test_metrics = compute_metrics(acts_all > 0.5, wit_labels)
    return TrainRun(ansatz, theta, best_cost, trace, train_metrics, test_metrics, opt.seed)


def train_unknown(
    train: Dataset,
    test: Dataset,
    ansatz: AnsatzConfig,
    opt: OptimizerConfig,
    beta: float = 1.0 / 30.0,
) -> TrainRun:
    """Fit the ansatz to separate entangled from separable states.

    Minimizes 1 - F_beta of the thresholded classification (threshold 0.5)
    on the train set; the small default beta makes any false positive on a
    separable state overwhelm the reward for extra detections.
    """
    n = ansatz.n_qubits
    m_train = _encoded_matrix(n, (it.state_id for it in train.items))
    y_train = train.labels

    def cost(theta):
        preds = batch_activations(ansatz, theta, m_train) > 0.5
        tp = int(np.count_nonzero(preds & (y_train == 1)))
        fp = int(np.count_nonzero(preds & (y_train == 0)))
        fn = int(np.count_nonzero(~preds & (y_train == 1)))
        p = 1.0 if tp + fp == 0 else tp / (tp + fp)
        r = 0.0 if tp + fn == 0 else tp / (tp + fn)
        return 1.0 - f_beta(p, r, beta)

    theta, best_cost, trace = _restart_loop(cost, ansatz, opt)

    train_metrics = compute_metrics(
        batch_activations(ansatz, theta, m_train) > 0.5, y_train, beta
    )
    m_test = _encoded_matrix(n, (it.state_id for it in test.items))
    test_metrics = compute_metrics(
        batch_activations(ansatz, theta, m_test) > 0.5, test.labels, beta
    )
    return TrainRun(ansatz, theta, best_cost, trace, train_metrics, test_metrics, opt.seed)


def metrics_to_dict(m: Metrics | None) -> dict | None:
    if m is None:
        return None
    return {
        "tp": m.tp,
        "fp": m.fp,
        "fn": m.fn,
        "tn": m.tn,
        "precision": m.precision,
        "recall": m.recall,
        "f_beta": m.f_beta,
        "cross_entropy": m.cross_entropy,
    }


def save_trainrun(path, run: TrainRun) -> None:
    """Persist a training outcome as JSON."""
    doc = {
        "n_qubits": run.config.n_qubits,
        "layers": run.config.layers,
        "theta": [float(t) for t in run.best_params],
        "seed": run.seed,
        "best_cost": run.best_cost,
        "cost_trace": list(run.cost_trace),
        "train_metrics": metrics_to_dict(run.train_metrics),
        "test_metrics": metrics_to_dict(run.test_metrics),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def write_dataset_csv(path, datasets) -> None:
    """Manifest rows: state_id, sign_vector (compact bits), label, split."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["state_id", "sign_vector", "label", "split"])
        for ds in datasets:
            for it in ds.items:
                f = from_state_id(ds.n_qubits, it.state_id)
                bits = "".join(str(b) for b in f.bits)
                w.writerow([it.state_id, bits, it.label, ds.split])
