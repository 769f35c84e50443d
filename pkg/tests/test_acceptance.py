"""Acceptance suite: one test per release criterion, at stated tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass line
per criterion.
"""

import itertools
import shutil
import time

import numpy as np
import pytest

from hearlink.aggregate import HLDWindow
from hearlink.features.level import intensity
from hearlink.features.pitch import estimate_f0
from hearlink.features.pulses import PeriodTrack, jitter
from hearlink.audio.vad import vad_gate
from hearlink.linkage.config import default_config_document, load_mapping_config
from hearlink.linkage.engine import LinkageEngine
from hearlink.linkage.rules import apply_direction, ema_update, mdd_support, standardize
from hearlink.pipeline import benchmark, run_stream
from hearlink.stats.protocol import run_protocol
from hearlink.stats.tests import bh_fdr
from hearlink.store import METRIC_COLLECTIONS, MetricStore
from hearlink.synth import SyntheticProfile, synth_wav, three_phase_profiles

from conftest import SR, frames_of, sine
from test_stats import brute_force_step_up, manifest_rows


def note(line: str) -> None:
    print(f"\nACCEPTANCE PASS: {line}")


def engine_config(warmup=6, beta5=0.5):
    doc = default_config_document()
    doc["warmup_windows"] = warmup
    doc["indicators"]["5"]["beta"] = beta5
    return doc


def test_count_rule_exhaustive_oracle():
    """All 512 presence vectors match (sum >= 5) AND (B1 or B2); < 1 s."""
    started = time.perf_counter()
    for bits_tuple in itertools.product((0, 1), repeat=9):
        bits = {i + 1: b for i, b in enumerate(bits_tuple)}
        expected = 1 if (sum(bits_tuple) >= 5 and (bits[1] or bits[2])) else 0
        assert mdd_support(bits) == expected
    # the two published examples
    seven_no_anchor = {i: 1 for i in range(3, 10)} | {1: 0, 2: 0}
    assert mdd_support(seven_no_anchor) == 0
    five_with_anchor = {1: 1, 3: 1, 4: 1, 5: 1, 6: 1} | {2: 0, 7: 0, 8: 0, 9: 0}
    assert mdd_support(five_with_anchor) == 1
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    note(f"count-of-nine rule exact over 512 vectors in {elapsed * 1e3:.0f} ms")


def test_standardize_clip_direction_unit_suite():
    """Standardization, epsilon guard, cap, and the direction table; exact."""
    assert standardize(5.0, 5.0, 2.0, tau=3.0) == 0.0
    assert standardize(10.0, 0.0, 2.0, tau=3.0) == 3.0          # z=5 capped at 3
    assert standardize(1e-3, 0.0, 0.0, tau=3.0, epsilon=1e-6) == 3.0
    assert standardize(-1e-3, 0.0, 0.0, tau=3.0, epsilon=1e-6) == -3.0
    for z in (-2.0, -0.7, 0.0, 0.7, 2.0):
        assert apply_direction(z, "positive") == z
        assert apply_direction(z, "negative") == -z
        assert apply_direction(z, "both") == abs(z)
    assert apply_direction(-1.5, "negative") == 1.5
    assert apply_direction(-2.0, "both") == 2.0
    note("standardize/clip/direction unit suite exact")


def test_ema_convergence_and_boundedness():
    """Geometric gap identity within 1e-12 relative; bounds over 1e4 sequences."""
    target = 2.0
    for beta in (0.0, 0.5, 0.9, 0.99):
        smoothed = 0.0
        for n in range(1, 5000):
            smoothed = ema_update(target, smoothed, beta)
            expected_gap = beta**n * abs(0.0 - target)
            if expected_gap < 1e-13 * target:
                break
            # 1e-12 relative at the scale of the trajectory (float64 cannot
            # resolve the gap tighter than ulp(target) once it underflows it)
            assert abs(abs(smoothed - target) - expected_gap) <= 1e-12 * max(
                expected_gap, abs(target)
            )

    rng = np.random.default_rng(42)
    for _ in range(10_000):
        length = int(rng.integers(1, 12))
        values = rng.uniform(-100, 100, size=length)
        beta = float(rng.uniform(0.0, 0.999))
        smoothed = None
        lo, hi = values[0], values[0]
        for v in values:
            smoothed = ema_update(float(v), smoothed, beta)
            lo, hi = min(lo, v), max(hi, v)
            assert lo - 1e-9 <= smoothed <= hi + 1e-9
    note("EMA geometric identity (1e-12 rel) and boundedness over 10^4 sequences")


def test_extractor_oracles_on_synthetic_signals():
    """F0, jitter, intensity and pause recovery at stated tolerances."""
    f0 = estimate_f0(sine(220, 0.025, amplitude=0.5), SR)
    assert f0 is not None and abs(f0 - 220.0) <= 2.0

    constant = PeriodTrack(
        pulse_times=np.cumsum([0.0] + [0.01] * 10),
        periods=np.full(10, 0.01),
        amplitudes=np.ones(10),
    )
    assert jitter(constant) == 0.0
    alternating = [0.010, 0.011] * 5
    perturbed = PeriodTrack(
        pulse_times=np.concatenate([[0.0], np.cumsum(alternating)]),
        periods=np.asarray(alternating),
        amplitudes=np.ones(10),
    )
    assert abs(jitter(perturbed) - 1.0 / 10.5) <= 1e-9

    level = intensity(sine(220, 0.025, amplitude=0.5))
    assert abs(level - (-9.030899869919436)) <= 0.1

    # constructed pause: 4 s tone, 1 s silence, 5 s tone
    x = np.concatenate([
        sine(190, 4.0, amplitude=0.5),
        np.zeros(int(1.0 * SR)),
        sine(190, 5.0, amplitude=0.5),
    ])
    _, segments = vad_gate(frames_of(x))
    assert len(segments) == 2
    assert abs(segments[0].end_time - 4.0) <= 0.025       # within 1 frame
    assert abs(segments[1].start_time - 5.0) <= 0.025
    gap = segments[1].start_time - segments[0].end_time
    assert abs(gap - 1.0) <= 0.050                        # both boundaries
    note("extractor oracles: f0 +/-2 Hz, jitter closed form 1e-9, "
         "intensity -9.03 +/-0.1 dB, pause boundaries +/-1 frame")


def _phase_median_ema(seed: int) -> dict[str, float]:
    """Run the three-phase stream; median smoothed indicator-5 per phase."""
    import tempfile

    wav = synth_wav(three_phase_profiles(120.0, 120.0, 120.0), seed=seed)
    with tempfile.TemporaryDirectory() as tmp:
        run_stream(wav, tmp, config=engine_config(warmup=6), subject_id="s")
        store = MetricStore(tmp)
        rows = store.query("analyzed_metrics", subject_id="s",
                           metric_name="indicator_5_ema")
        boundary_1 = 120.0
        boundary_2 = 250.0   # depressed phase stretches past 240 (pauses add time)
        phases = {"baseline": [], "depressed": [], "recovery": []}
        for record in rows:
            if record.value is None:
                continue
            if record.window_start < boundary_1:
                phases["baseline"].append(record.value)
            elif record.window_start < boundary_2:
                phases["depressed"].append(record.value)
            else:
                phases["recovery"].append(record.value)
    return {k: float(np.median(v)) if v else float("nan") for k, v in phases.items()}


def test_streaming_three_phase_and_spike_bound():
    """Indicator (5) EMA peaks in the flattened phase; spike damped by 1-beta."""
    started = time.perf_counter()
    medians = [_phase_median_ema(seed) for seed in range(5)]
    baseline = float(np.median([m["baseline"] for m in medians]))
    depressed = float(np.median([m["depressed"] for m in medians]))
    recovery = float(np.median([m["recovery"] for m in medians]))
    assert depressed > baseline
    assert depressed > recovery

    # single-window spike at beta = 0.9 on a settled engine
    doc = engine_config(warmup=2, beta5=0.9)
    doc["indicators"]["5"]["beta"] = 0.9
    engine = LinkageEngine(load_mapping_config(doc))
    flat = {"f0_std": 30.0, "pause_duration": 0.5}
    for k, wobble in enumerate((-1.0, 1.0)):
        engine.process_window(HLDWindow(10.0 * k, 10.0,
                                        {m: v + wobble for m, v in flat.items()},
                                        0.8, True))
    settle = engine.process_window(HLDWindow(20.0, 10.0, flat, 0.8, True))
    resting = settle.indicators[5].smoothed
    spiked = engine.process_window(
        HLDWindow(30.0, 10.0, {"f0_std": 0.1, "pause_duration": 30.0}, 0.8, True)
    )
    spike_score = spiked.indicators[5].score
    excursion = spiked.indicators[5].smoothed - resting
    assert excursion <= (1 - 0.9) * (spike_score - resting) + 1e-9

    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    note(f"three-phase EMA ordering over 5 seeds + spike bound in {elapsed:.0f} s")


def test_real_time_feasibility():
    """120 s of synthetic speech: steady-state rtf < 1.0; warmup may exceed."""
    wav = synth_wav([SyntheticProfile(phase="load", duration=121.0)], seed=29)
    report = benchmark(wav, config=engine_config(), runs=1)
    summary = report.summary()
    assert summary["windows_per_run"] >= 12
    assert summary["steady_state_rtf"] < 1.0
    assert isinstance(summary["warmup_excess"], bool)   # flagged, never fatal
    note(f"steady-state rtf {summary['steady_state_rtf']:.3f} < 1.0 "
         f"(warmup_excess={summary['warmup_excess']})")


def test_bh_fdr_oracle():
    """Step-up matches exhaustive evaluation on 1000 grid lists; hand example."""
    reject, _ = bh_fdr([0.01, 0.02, 0.03, 0.04, 0.05], alpha=0.05)
    assert reject == [True] * 5

    rng = np.random.default_rng(314)
    for _ in range(1000):
        m = int(rng.integers(1, 9))
        pvals = list(np.round(rng.integers(0, 101, size=m) * 0.01, 2))
        alpha = float(rng.choice([0.01, 0.05, 0.10]))
        ours, _ = bh_fdr(pvals, alpha)
        expected, k_star = brute_force_step_up(pvals, alpha)
        assert ours == expected
        assert sum(ours) == k_star
    note("BH-FDR exact against brute-force step-up on 1000 grid lists")


def test_permutation_null_and_deterministic_exports(tmp_path):
    """Label-shuffled manifests reject at <= alpha + 0.02; exports byte-stable."""
    rng = np.random.default_rng(271)
    rows = manifest_rows(n=64, seed=5)
    items = [dict(r.phq_items) for r in rows]
    fractions = []
    for _ in range(100):
        perm = rng.permutation(len(rows))
        for row, idx in zip(rows, perm):
            row.phq_items = items[idx]
        report = run_protocol(rows)
        fractions.append(report.rejection_fraction)
    mean_fraction = float(np.mean(fractions))
    assert mean_fraction <= 0.05 + 0.02

    from hearlink.stats.protocol import export_report

    fixed = manifest_rows(n=64, seed=5, effect=0.4)
    first = export_report(run_protocol(fixed), tmp_path / "x")
    second = export_report(run_protocol(manifest_rows(n=64, seed=5, effect=0.4)),
                           tmp_path / "y")
    for name in first:
        assert first[name].read_bytes() == second[name].read_bytes()

    # hypothesized-direction consistency on a constructed negative relation
    for row in fixed:
        row.features["f0_std"] = -float(row.phq_items["phq_q7"]) + 0.001 * hash(row.subject_id) % 7 * 1e-6
    consistent = [
        r for r in run_protocol(fixed).results
        if r.feature == "f0_std" and r.indicator == 5
    ]
    assert consistent and all(r.direction_consistent for r in consistent)
    note(f"permutation-null mean rejection {mean_fraction:.4f} <= 0.07; "
         "exports byte-identical; directions consistent")


def test_end_to_end_determinism(tmp_path):
    """Same WAV + config + seed twice: byte-identical persisted collections."""
    wav = synth_wav(three_phase_profiles(60.0, 40.0, 40.0), seed=77)
    config = engine_config(warmup=3)
    run_stream(wav, tmp_path / "first", config=config, subject_id="subject")
    run_stream(wav, tmp_path / "second", config=config, subject_id="subject")
    compared = 0
    for name in (*METRIC_COLLECTIONS, "traces", "baselines"):
        a = tmp_path / "first" / f"{name}.ndjson"
        b = tmp_path / "second" / f"{name}.ndjson"
        assert a.read_bytes() == b.read_bytes(), name
        compared += 1
    note(f"end-to-end determinism: {compared} collections byte-identical")


def test_explainability_round_trip(tmp_path):
    """Recomputing indicator scores from traces reproduces them exactly."""
    # (a) 100 random windows through the engine
    spec = load_mapping_config(engine_config(warmup=5))
    engine = LinkageEngine(spec)
    rng = np.random.default_rng(99)
    metric_names = [
        "f0_avg", "f0_std", "f0_range", "intensity_std", "intensity_range",
        "jitter", "shimmer", "hnr", "snr", "spectral_flux_mean",
        "pause_duration", "pause_frequency", "speech_rate",
        "articulation_rate", "glottal_pulse_rate",
    ]
    mus = {m: float(rng.uniform(1, 50)) for m in metric_names}
    for k in range(5):
        engine.process_window(HLDWindow(
            10.0 * k, 10.0,
            {m: mus[m] + float(rng.normal(0, 1 + mus[m] * 0.05))
             for m in metric_names},
            0.8, True,
        ))
    assert engine.warmed_up
    checked = 0
    for k in range(5, 105):
        present = [m for m in metric_names if rng.random() > 0.25]
        window = HLDWindow(
            10.0 * k, 10.0,
            {m: mus[m] + float(rng.normal(0, 1 + mus[m] * 0.05)) for m in present},
            0.8, True,
        )
        decision = engine.process_window(window)
        for indicator, state in decision.indicators.items():
            rows = [r for r in decision.trace[indicator] if r.available]
            if state.score is None:
                assert not rows
                continue
            weight = sum(r.weight for r in rows)
            recomputed = sum(r.psi * r.weight for r in rows) / weight
            assert recomputed == state.score
            checked += 1

    # (b) the same property over traces persisted to disk
    wav = synth_wav(three_phase_profiles(50.0, 30.0, 0.001), seed=55)
    run_stream(wav, tmp_path, config=engine_config(warmup=3), subject_id="s")
    store = MetricStore(tmp_path)
    traces = store.query("traces", subject_id="s", metric_name="trace")
    assert traces
    scores = {
        (r.window_start, r.metric_name): r.value
        for r in store.query("analyzed_metrics", subject_id="s")
    }
    disk_checked = 0
    for record in traces:
        for key, rows in record.value.items():
            available = [r for r in rows if "psi" in r]
            stored = scores[(record.window_start, f"indicator_{key}_score")]
            if stored is None:
                assert not available
                continue
            weight = sum(r["weight"] for r in available)
            recomputed = sum(r["psi"] * r["weight"] for r in available) / weight
            assert recomputed == stored
            disk_checked += 1
    assert disk_checked > 0
    note(f"explainability: {checked} engine scores + {disk_checked} persisted "
         "scores reproduced exactly from traces")
