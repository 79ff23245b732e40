from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from handsoff.accounting import (
    CaptureMethod,
    ConfusionCounts,
    DeterrenceReport,
    EmptyAfterExclusion,
    EmptyInput,
    ScreenshotEvent,
    TrialOutcome,
    TrialRecord,
    UndefinedMetric,
    classify_trial,
    deterrence_report,
    latency_summary,
    metrics,
)
from handsoff.benchmarks import (
    RECONSTRUCTED_CONFUSION,
    REFERENCE_EVAL_ROWS,
    deterrence_benchmark_trials,
)
from handsoff.classifier import GestureClass
from handsoff.gate import Phase


def event(phase, method=CaptureMethod.BUTTON_PRESS, sid="s1", ts=100):
    return ScreenshotEvent(sid, ts, method, phase)


# -- trial outcomes -----------------------------------------------------------


def test_unlocked_event_means_successful():
    record = TrialRecord("s1", GestureClass.WAVE, events=(event(Phase.UNLOCKED),))
    assert classify_trial(record) is TrialOutcome.SUCCESSFUL


def test_locked_only_events_mean_attempted_failed():
    record = TrialRecord(
        "s1", GestureClass.WAVE, events=(event(Phase.LOCKED), event(Phase.LOCKED, CaptureMethod.SECOND_DEVICE))
    )
    assert classify_trial(record) is TrialOutcome.ATTEMPTED_FAILED


def test_no_events_without_attempt_means_skipped():
    record = TrialRecord("s1", GestureClass.WAVE, ended_without_attempt=True)
    assert classify_trial(record) is TrialOutcome.SKIPPED


def test_voice_capture_of_unlocked_screen_counts():
    record = TrialRecord(
        "s1", GestureClass.FRAME, events=(event(Phase.UNLOCKED, CaptureMethod.VOICE_ASSISTANT),)
    )
    assert classify_trial(record) is TrialOutcome.SUCCESSFUL


def test_skip_flag_with_events_is_invalid():
    with pytest.raises(ValueError):
        TrialRecord("s1", GestureClass.WAVE, events=(event(Phase.LOCKED),), ended_without_attempt=True)


def test_outcomes_partition_all_records():
    records = [
        TrialRecord("a", GestureClass.WAVE, events=(event(Phase.UNLOCKED),)),
        TrialRecord("b", GestureClass.WAVE, events=(event(Phase.LOCKED),)),
        TrialRecord("c", GestureClass.WAVE, ended_without_attempt=True),
        TrialRecord("d", GestureClass.WAVE),  # no events, no explicit skip
    ]
    outcomes = [classify_trial(r) for r in records]
    assert all(isinstance(o, TrialOutcome) for o in outcomes)


def test_trial_record_round_trips_as_dict():
    record = TrialRecord("s9", GestureClass.BINOCULARS, events=(event(Phase.LOCKED, sid="s9"),))
    assert TrialRecord.from_dict(record.to_dict()) == record


# -- deterrence ----------------------------------------------------------------


def test_single_skipped_record_rate_is_one():
    report = deterrence_report([TrialRecord("s", GestureClass.WAVE, ended_without_attempt=True)])
    assert report.deterrence_rate == 1.0


def test_benchmark_fixture_rates():
    trials = deterrence_benchmark_trials()
    assert len(trials) == 52
    overall = deterrence_report(trials)
    assert overall.counts[TrialOutcome.SUCCESSFUL] == 17
    assert overall.counts[TrialOutcome.ATTEMPTED_FAILED] == 13
    assert overall.counts[TrialOutcome.SKIPPED] == 22
    assert abs(overall.deterrence_rate - 0.67) <= 0.01

    without_interlace = deterrence_report(trials, {GestureClass.INTERLACE})
    assert without_interlace.total == 39
    assert abs(without_interlace.deterrence_rate - 0.77) <= 0.01


def test_exclusion_of_everything_raises():
    trials = [TrialRecord("s", GestureClass.WAVE, ended_without_attempt=True)]
    with pytest.raises(EmptyAfterExclusion):
        deterrence_report(trials, {GestureClass.WAVE})


def test_rate_complements_success_fraction():
    trials = deterrence_benchmark_trials()
    report = deterrence_report(trials)
    successes = report.counts[TrialOutcome.SUCCESSFUL]
    assert report.deterrence_rate == pytest.approx(1 - successes / report.total)


def test_adding_a_success_never_raises_rate():
    trials = deterrence_benchmark_trials()
    before = deterrence_report(trials).deterrence_rate
    trials.append(
        TrialRecord("extra", GestureClass.WAVE, events=(event(Phase.UNLOCKED, sid="extra"),))
    )
    assert deterrence_report(trials).deterrence_rate <= before


# -- metrics ---------------------------------------------------------------------


def test_metrics_trivial_cases():
    perfect = metrics(ConfusionCounts(100, 0, 0))
    assert (perfect.precision, perfect.recall, perfect.f1) == (1.0, 1.0, 1.0)
    degenerate = metrics(ConfusionCounts(0, 5, 5))
    assert (degenerate.precision, degenerate.recall, degenerate.f1) == (0.0, 0.0, 0.0)


def test_metrics_undefined_on_zero_denominator():
    with pytest.raises(UndefinedMetric):
        metrics(ConfusionCounts(0, 0, 5))
    with pytest.raises(UndefinedMetric):
        metrics(ConfusionCounts(0, 5, 0))


def test_metrics_worked_example():
    m = metrics(ConfusionCounts(147, 3, 1))
    assert m.precision == pytest.approx(0.980, abs=5e-4)
    assert m.recall == pytest.approx(0.993, abs=5e-4)
    assert m.f1 == pytest.approx(0.986, abs=1e-3)


@given(tp=st.integers(0, 500), fp=st.integers(0, 500), fn=st.integers(0, 500))
@settings(max_examples=300, deadline=None)
def test_metrics_bounds_property(tp, fp, fn):
    if tp + fp == 0 or tp + fn == 0:
        with pytest.raises(UndefinedMetric):
            metrics(ConfusionCounts(tp, fp, fn))
        return
    m = metrics(ConfusionCounts(tp, fp, fn))
    assert 0.0 <= m.precision <= 1.0
    assert 0.0 <= m.recall <= 1.0
    assert min(m.precision, m.recall) - 1e-12 <= m.f1 <= max(m.precision, m.recall) + 1e-12


# -- reconstruction oracle ----------------------------------------------------------


def _round_half_up_pct(value: Fraction) -> int:
    return int(100 * value + Fraction(1, 2))


def smallest_consistent_tp(fp: int, fn: int, precision_pct: int, recall_pct: int) -> int:
    """Exhaustive search for the smallest tp whose exact precision and recall
    round (half up) to the reference percentages."""
    for tp in range(1, 1001):
        if (
            _round_half_up_pct(Fraction(tp, tp + fp)) == precision_pct
            and _round_half_up_pct(Fraction(tp, tp + fn)) == recall_pct
        ):
            return tp
    raise AssertionError("no consistent tp in 1..1000")


def test_reconstructed_counts_match_search_oracle():
    for gesture, row in REFERENCE_EVAL_ROWS.items():
        tp = smallest_consistent_tp(row.fp, row.fn, row.precision_pct, row.recall_pct)
        frozen = RECONSTRUCTED_CONFUSION[gesture]
        assert frozen.tp == tp, gesture
        assert (frozen.fp, frozen.fn) == (row.fp, row.fn)


def test_reconstructed_counts_reproduce_reference_rates():
    for gesture, row in REFERENCE_EVAL_ROWS.items():
        m = metrics(RECONSTRUCTED_CONFUSION[gesture])
        assert abs(100 * m.precision - row.precision_pct) <= 1.0, gesture
        assert abs(100 * m.recall - row.recall_pct) <= 1.0, gesture
        assert abs(m.f1 - row.f1) <= 0.01, gesture


# -- latency summary -------------------------------------------------------------------


def test_latency_summary_arithmetic():
    assert latency_summary([1000, 11000]) == (6000, 1000, 11000)
    assert latency_summary([0]) == (0, 0, 0)


def test_latency_summary_empty_input():
    with pytest.raises(EmptyInput):
        latency_summary([])


def test_latency_summary_rejects_negative():
    with pytest.raises(ValueError):
        latency_summary([10, -1])
