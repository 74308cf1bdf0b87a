"""
Learning an unknown witness
===========================

Here the labels say only which states are entangled; nothing tells the
model which ones a witness could detect.  The cost 1 - F_beta with
beta = 1/30 makes one false positive on a separable state costlier than
dozens of missed entangled ones, so training pushes the decision surface
toward the separable set without crossing it.

Unlike the exact witness, the learnt one can detect maximally entangled
states beyond its implicit reference.
"""

import numpy as np

import qwitness as qw

train, test = qw.build_unknown_dataset(seed=0)
print(f"train: {len(train)} states ({int(train.labels.sum())} entangled)")
print(f"test:  {len(test)} states ({int(test.labels.sum())} entangled)")

ansatz = qw.AnsatzConfig(n_qubits=3, layers=2)
opt = qw.OptimizerConfig(max_iterations=2000, restarts=40, seed=0)
run = qw.train_unknown(train, test, ansatz, opt, beta=1 / 30)

print(f"\nbest cost: {run.best_cost:.5f}")
print(f"{'':8s} {'F_beta':>8s} {'Precision':>10s} {'Recall':>8s}")
for name, m in (("train", run.train_metrics), ("test", run.test_metrics)):
    print(f"{name:8s} {m.f_beta:8.4f} {m.precision:10.4f} {m.recall:8.4f}")

# which representatives does the learnt witness detect, and how entangled
# are they?
reps = [r for r in qw.census_records(3) if r.state_id % 2 == 0]
acts = qw.batch_activations(
    ansatz, run.best_params, qw.encoded_states([r.sign_vector for r in reps])
)
print("\ndetected representatives (activation > 0.5):")
for rec, act in zip(reps, acts):
    if act > 0.5:
        tag = "maximally entangled" if abs(rec.e_value - 0.5) < 1e-9 else f"E={rec.e_value:g}"
        print(f"  id {rec.state_id:3d} activation {act:.4f}  ({tag})")

print(f"\nno activation reaches 1.0 (max {acts.max():.4f}): the implicit "
      "reference is not itself a sign-pattern state")
