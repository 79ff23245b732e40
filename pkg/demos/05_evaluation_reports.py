"""Evaluation pipeline: trial outcomes, deterrence rates, confusion metrics.

The benchmark fixtures reproduce the reference desk-scale evaluation: a
52-trial outcome set whose deterrence rate is ~67% (and ~77% once interlace,
the leakiest gesture, is excluded), reconstructed confusion counts matching
the reference precision/recall table, and traces averaging 2780 ms to
detection.
"""

from handsoff.accounting import TrialOutcome, deterrence_report, latency_summary, metrics
from handsoff.benchmarks import (
    RECONSTRUCTED_CONFUSION,
    REFERENCE_EVAL_ROWS,
    deterrence_benchmark_trials,
    latency_benchmark_traces,
)
from handsoff.classifier import GestureClass, classify_trace
from handsoff.gate import GateConfig, detection_latency

trials = deterrence_benchmark_trials()
overall = deterrence_report(trials)
print(f"{overall.total} trials:")
for outcome in TrialOutcome:
    print(f"  {outcome.value:15s} {overall.counts[outcome]}")
print(f"deterrence rate: {overall.deterrence_rate:.1%}")

reduced = deterrence_report(trials, exclude={GestureClass.INTERLACE})
print(f"excluding interlace: {reduced.deterrence_rate:.1%} over {reduced.total} trials")

print("\nconfusion metrics (tp reconstructed from the reference rates):")
print(f"{'gesture':11s} {'tp':>4s} {'fp':>3s} {'fn':>3s}  {'prec':>6s} {'recall':>6s} {'f1':>6s}")
for gesture, counts in RECONSTRUCTED_CONFUSION.items():
    m = metrics(counts)
    row = REFERENCE_EVAL_ROWS[gesture]
    print(
        f"{gesture.value:11s} {counts.tp:4d} {counts.fp:3d} {counts.fn:3d}"
        f"  {m.precision:6.1%} {m.recall:6.1%} {m.f1:6.3f}"
        f"   (targets {row.precision_pct}% / {row.recall_pct}% / {row.f1:.2f})"
    )

config = GateConfig(GestureClass.WAVE)
latencies = [
    detection_latency(trace, classify_trace(trace), config)
    for trace in latency_benchmark_traces()
]
mean, lo, hi = latency_summary(latencies)
print(f"\ndetection latencies: {latencies}")
print(f"mean {mean:.0f} ms (min {lo:.0f}, max {hi:.0f})")
