"""Command-line front end.

Subcommands:

* ``census``         entanglement census over every sign pattern
* ``witness``        exact witness detection sweep for a reference state
* ``train-known``    learn the detection set of an exact witness
* ``train-unknown``  learn a witness from entanglement labels alone
* ``classify``       run a saved model on one state

Every run is reproducible from its flags: the same flags (including
``--seed``) produce byte-identical output files.  Option precedence is
command-line flag, then ``--config`` JSON file, then built-in defaults;
the defaults reproduce the 3-qubit case study (2 layers, threshold 0.5,
beta 1/30).  Output files are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .entanglement import census_records, rew_census, write_census_csv
from .learn import (
    OptimizerConfig,
    build_known_dataset,
    build_unknown_dataset,
    cross_entropy,
    metrics_to_dict,
    save_trainrun,
    train_known,
    train_unknown,
    write_dataset_csv,
)
from .rewstates import encoded_states, parse_sign_vector
from .vqc import AnsatzConfig, batch_activations, load_model, vqc_activation
from .witness import (
    detection_summary,
    detection_sweep,
    make_witness,
    write_detection_csv,
)

__all__ = ["RunConfig", "main"]


@dataclass
class RunConfig:
    """Resolved options for one command invocation."""

    n_qubits: int = 3
    layers: int = 2
    shots: int = 1024
    mode: str = "exact"
    beta: float = 1.0 / 30.0
    threshold: float = 0.5
    seed: int = 0
    restarts: int = 50
    out_dir: str = "."


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}


@contextmanager
def _atomic(path: Path):
    """Yield a temp path that replaces ``path`` only on success."""
    tmp = path.with_name(path.name + ".tmp")
    try:
        yield tmp
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    else:
        os.replace(tmp, path)


def _write_json(path: Path, doc: dict) -> None:
    with _atomic(path) as tmp:
        with open(tmp, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    file_values = {}
    if args.config is not None:
        with open(args.config) as fh:
            file_values = json.load(fh)
        unknown = set(file_values) - _CONFIG_KEYS
        if unknown:
            raise ValueError(f"unknown keys in config file: {sorted(unknown)}")
    cfg = RunConfig()
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            setattr(cfg, f.name, flag)
        elif f.name in file_values:
            setattr(cfg, f.name, type(getattr(cfg, f.name))(file_values[f.name]))
    if cfg.mode not in ("exact", "shots"):
        raise ValueError(f"mode must be 'exact' or 'shots', got {cfg.mode!r}")
    return cfg


def _out(cfg: RunConfig, name: str) -> Path:
    d = Path(cfg.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d / name


def cmd_census(cfg: RunConfig) -> int:
    records = census_records(cfg.n_qubits)
    with _atomic(_out(cfg, "census.csv")) as tmp:
        write_census_csv(records, tmp)
    counts = rew_census(cfg.n_qubits)
    summary = ", ".join(f"E={e:g}: {c}" for e, c in counts.items())
    print(f"census n={cfg.n_qubits} over {len(records)} states: {summary}")
    return 0


def cmd_witness(cfg: RunConfig, reference_text: str) -> int:
    reference = parse_sign_vector(reference_text)
    w = make_witness(reference)
    report = detection_sweep(w, mode=cfg.mode, shots=cfg.shots, seed=cfg.seed)
    with _atomic(_out(cfg, "activations.csv")) as tmp:
        write_detection_csv(report, tmp)
    summary = detection_summary(report)
    _write_json(_out(cfg, "metrics.json"), summary)
    print(
        f"reference {summary['reference']}: alpha={w.alpha:g}, "
        f"detected {summary['detected_count']} of {len(report.records)} states"
    )
    return 0


def _write_known_comparison(path: Path, report, ansatz, theta, threshold: float) -> None:
    svs = [r.sign_vector for r in report.records]
    acts = batch_activations(ansatz, theta, encoded_states(svs))
    with _atomic(path) as tmp:
        with open(tmp, "w", newline="") as fh:
            wcsv = csv.writer(fh)
            wcsv.writerow(
                ["state_id", "sign_vector", "exact_activation", "learnt_activation",
                 "exact_detected", "learnt_detected"]
            )
            for rec, act in zip(report.records, acts):
                bits = "".join(str(b) for b in rec.sign_vector.bits)
                wcsv.writerow(
                    [rec.state_id, bits, f"{rec.activation:.12g}", f"{act:.12g}",
                     int(rec.detected), int(act > threshold)]
                )


def cmd_train_known(cfg: RunConfig, reference_text: str) -> int:
    reference = parse_sign_vector(reference_text)
    dataset = build_known_dataset(reference, cfg.seed)
    ansatz = AnsatzConfig(cfg.n_qubits, cfg.layers)
    opt = OptimizerConfig(restarts=cfg.restarts, seed=cfg.seed)
    run = train_known(reference, dataset, ansatz, opt)

    with _atomic(_out(cfg, "trainrun.json")) as tmp:
        save_trainrun(tmp, run)
    with _atomic(_out(cfg, "dataset.csv")) as tmp:
        write_dataset_csv(tmp, [dataset])

    report = detection_sweep(make_witness(reference))
    _write_known_comparison(
        _out(cfg, "activations.csv"), report, ansatz, run.best_params, cfg.threshold
    )
    exact_acts = np.array([r.activation for r in report.records])
    learnt_acts = batch_activations(
        ansatz, run.best_params, encoded_states([r.sign_vector for r in report.records])
    )
    mean_ce = cross_entropy(exact_acts, learnt_acts) / len(report.records)
    _write_json(
        _out(cfg, "metrics.json"),
        {
            "task": "train-known",
            "beta": None,
            "threshold": cfg.threshold,
            "mean_cross_entropy_vs_exact": mean_ce,
            "train": metrics_to_dict(run.train_metrics),
            "test": metrics_to_dict(run.test_metrics),
        },
    )
    tm = run.test_metrics
    print(
        f"best cost {run.best_cost:.6g}; witness match over {len(report.records)} states: "
        f"tp={tm.tp} fp={tm.fp} fn={tm.fn}; mean cross entropy vs exact {mean_ce:.5f}"
    )
    converged = run.train_metrics.fp == 0 and run.train_metrics.fn == 0
    if not converged:
        print("training did not reach a witness-consistent classifier; "
              "best run dumped to trainrun.json", file=sys.stderr)
    return 0 if converged else 1


def cmd_train_unknown(cfg: RunConfig) -> int:
    train, test = build_unknown_dataset(cfg.seed, cfg.n_qubits)
    ansatz = AnsatzConfig(cfg.n_qubits, cfg.layers)
    opt = OptimizerConfig(restarts=cfg.restarts, seed=cfg.seed)
    run = train_unknown(train, test, ansatz, opt, cfg.beta)

    with _atomic(_out(cfg, "trainrun.json")) as tmp:
        save_trainrun(tmp, run)
    with _atomic(_out(cfg, "dataset.csv")) as tmp:
        write_dataset_csv(tmp, [train, test])
    _write_json(
        _out(cfg, "metrics.json"),
        {
            "task": "train-unknown",
            "beta": cfg.beta,
            "threshold": cfg.threshold,
            "mean_cross_entropy_vs_exact": None,
            "train": metrics_to_dict(run.train_metrics),
            "test": metrics_to_dict(run.test_metrics),
        },
    )

    # Bar-chart data over one representative per complement pair; the
    # mirrored half is identical because activations are sign-invariant.
    records = census_records(cfg.n_qubits)
    reps = [r for r in records if r.state_id % 2 == 0]
    acts = batch_activations(
        ansatz, run.best_params, encoded_states([r.sign_vector for r in reps])
    )
    with _atomic(_out(cfg, "activations.csv")) as tmp:
        with open(tmp, "w", newline="") as fh:
            wcsv = csv.writer(fh)
            wcsv.writerow(["state_id", "sign_vector", "activation", "E", "label", "detected"])
            for rec, act in zip(reps, acts):
                bits = "".join(str(b) for b in rec.sign_vector.bits)
                wcsv.writerow(
                    [rec.state_id, bits, f"{act:.12g}", f"{rec.e_value:.12g}",
                     int(rec.e_value > 1e-9), int(act > cfg.threshold)]
                )

    trm, tem = run.train_metrics, run.test_metrics
    print(
        f"best cost {run.best_cost:.6g}; "
        f"train: P={_fmt(trm.precision)} R={_fmt(trm.recall)} F={trm.f_beta:.4f}; "
        f"test: P={_fmt(tem.precision)} R={_fmt(tem.recall)} F={tem.f_beta:.4f}"
    )
    detected_max_ent = [
        int(rec.state_id)
        for rec, act in zip(reps, acts)
        if act > cfg.threshold and abs(rec.e_value - 0.5) < 1e-9
    ]
    if detected_max_ent:
        print(f"maximally entangled representatives detected: {detected_max_ent}")
    converged = trm.fp == 0 and trm.tp > 0
    if not converged:
        print("training did not reach a precision-1 classifier with nonzero recall; "
              "best run dumped to trainrun.json", file=sys.stderr)
    return 0 if converged else 1


def cmd_classify(cfg: RunConfig, model_path: str, state_text: str) -> int:
    ansatz, theta, _ = load_model(model_path)
    if cfg.n_qubits != ansatz.n_qubits or cfg.layers != ansatz.layers:
        raise ValueError(
            f"model shape (n_qubits={ansatz.n_qubits}, layers={ansatz.layers}) "
            f"does not match requested (n_qubits={cfg.n_qubits}, layers={cfg.layers})"
        )
    state = parse_sign_vector(state_text)
    act = vqc_activation(ansatz, theta, state, cfg.mode, cfg.shots, cfg.seed)
    verdict = "entangled" if act > cfg.threshold else "not detected"
    print(f"activation {act:.6g} vs threshold {cfg.threshold:g}: {verdict}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwitness",
        description="REW-state entanglement witnesses: census, exact detection, "
        "and variational witness learning.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-qubits", dest="n_qubits", type=int, help="register width (default 3)")
    common.add_argument("--layers", type=int, help="ansatz entangling blocks (default 2)")
    common.add_argument("--shots", type=int, help="samples per activation in shots mode (default 1024)")
    common.add_argument("--mode", choices=["exact", "shots"],
                        help="activation readout for witness/classify (training is always exact)")
    common.add_argument("--beta", type=float, help="F-score weight (default 1/30)")
    common.add_argument("--threshold", type=float, help="detection threshold (default 0.5)")
    common.add_argument("--seed", type=int, help="RNG seed (default 0)")
    common.add_argument("--restarts", type=int, help="optimizer restarts (default 50)")
    common.add_argument("--out-dir", dest="out_dir", help="output directory (default .)")
    common.add_argument("--config", help="JSON file with default option values")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("census", parents=[common], help="classify every sign pattern by E")
    p = sub.add_parser("witness", parents=[common], help="exact witness sweep")
    p.add_argument("reference", help='reference sign pattern, e.g. "[0, 0, 0, 0, 0, 1, 1, 0]" or "00000110"')
    p = sub.add_parser("train-known", parents=[common], help="learn an exact witness's detections")
    p.add_argument("reference", help="reference sign pattern for the witness to imitate")
    sub.add_parser("train-unknown", parents=[common], help="learn a witness from entanglement labels")
    p = sub.add_parser("classify", parents=[common], help="run a saved model on one state")
    p.add_argument("model", help="path to a model/trainrun JSON file")
    p.add_argument("state", help="sign pattern to classify")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        if args.command == "census":
            return cmd_census(cfg)
        if args.command == "witness":
            return cmd_witness(cfg, args.reference)
        if args.command == "train-known":
            return cmd_train_known(cfg, args.reference)
        if args.command == "train-unknown":
            return cmd_train_unknown(cfg)
        if args.command == "classify":
            return cmd_classify(cfg, args.model, args.state)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError, RuntimeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _fmt(x: float | None) -> str:
    return "n/a" if x is None else f"{x:.4f}"
