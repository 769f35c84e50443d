"""Dashboard service endpoints over a processed store."""

import pytest
from fastapi.testclient import TestClient

from hearlink.pipeline import run_stream
from hearlink.service.app import create_app
from hearlink.synth import SyntheticProfile, synth_wav

from test_synth_pipeline import fast_config


@pytest.fixture(scope="module")
def processed_dir(tmp_path_factory):
    data = tmp_path_factory.mktemp("served")
    wav = synth_wav([SyntheticProfile(phase="b", duration=70.0)], seed=23)
    run_stream(wav, data, config=fast_config(warmup=2), subject_id="local")
    return data


@pytest.fixture(scope="module")
def client(processed_dir):
    app = create_app(processed_dir, config=fast_config(warmup=2))
    with TestClient(app) as c:
        yield c


def phq9_body(value=0, subject="local", **overrides):
    items = {f"Q{i}": value for i in range(1, 10)}
    items.update(overrides)
    return {"subject_id": subject, "timestamp": "2025-04-01T09:00:00Z",
            "items": items}


class TestReads:
    def test_status_lists_collections(self, client):
        payload = client.get("/status").json()
        assert "local" in payload["subjects"]
        assert payload["collections"]["aggregated_metrics"] > 0

    def test_indicator_trajectories_with_coverage(self, client):
        payload = client.get("/indicators", params={"subject": "local"}).json()
        assert payload["subject_id"] == "local"
        indicators = {s["indicator"]: s for s in payload["indicators"]}
        assert 5 in indicators
        series = indicators[5]
        assert series["points"]
        for point in series["points"]:
            assert point["coverage"] is not None
            assert 0.0 <= point["coverage"] <= 1.0

    def test_support_trajectory(self, client):
        payload = client.get("/support", params={"subject": "local"}).json()
        assert payload["points"]
        assert all(p["support"] in (0, 1) for p in payload["points"])

    def test_raw_and_contextual_metrics(self, client):
        raw = client.get("/metrics/raw",
                         params={"subject": "local", "metric": "f0"}).json()
        assert raw and all(r["metric"] == "f0" for r in raw)
        ctx = client.get("/metrics/contextual", params={"subject": "local"}).json()
        assert ctx
        starts = [r["window_start"] for r in ctx]
        assert starts == sorted(starts)

    def test_time_range_filter(self, client):
        rows = client.get(
            "/metrics/aggregated",
            params={"subject": "local", "start": 20.0, "end": 29.99},
        ).json()
        assert rows
        assert all(20.0 <= r["window_start"] < 30.0 for r in rows)

    def test_unknown_subject_404(self, client):
        assert client.get("/indicators", params={"subject": "ghost"}).status_code == 404
        assert client.get("/metrics/raw", params={"subject": "ghost"}).status_code == 404

    def test_trace_explains_scores(self, client):
        ctx = client.get("/metrics/contextual", params={"subject": "local"}).json()
        window = ctx[0]["window_start"]
        payload = client.get(f"/trace/{window}", params={"subject": "local"}).json()
        assert payload["window_start"] == window
        by_indicator = {t["indicator"]: t for t in payload["indicators"]}
        entry = by_indicator[5]
        available = [r for r in entry["rows"] if r["available"]]
        if entry["score"] is not None:
            weight = sum(r["weight"] for r in available)
            recomputed = sum(r["psi"] * r["weight"] for r in available) / weight
            assert recomputed == pytest.approx(entry["score"], rel=1e-12)

    def test_trace_missing_window_404(self, client):
        assert client.get("/trace/99990.0",
                          params={"subject": "local"}).status_code == 404

    def test_config_exposes_mapping(self, client):
        payload = client.get("/config").json()
        assert len(payload["entries"]) == 54
        assert payload["indicators"]["5"]["beta"] == 0.5


class TestPhq9:
    def test_submission_updates_baseline_counts(self, client):
        before = client.get("/baselines", params={"subject": "local"}).json()
        count_before = before["snapshots"][-1]["metrics"]["f0_avg"]["count"]
        response = client.post("/phq9", json=phq9_body(0))
        assert response.status_code == 200
        payload = response.json()
        assert payload["stored"]
        assert payload["absorbed_windows"] > 0
        assert payload["updated_metrics"]["f0_avg"] > count_before

        after = client.get("/baselines", params={"subject": "local"}).json()
        assert len(after["snapshots"]) == len(before["snapshots"]) + 1
        assert after["snapshots"][-1]["reason"] == "phq9"
        assert after["snapshots"][-1]["metrics"]["f0_avg"]["count"] > count_before

    def test_second_submission_absorbs_nothing_new(self, client):
        response = client.post("/phq9", json=phq9_body(0))
        assert response.status_code == 200
        assert response.json()["absorbed_windows"] == 0

    def test_eight_items_rejected(self, client):
        body = phq9_body(0)
        del body["items"]["Q9"]
        assert client.post("/phq9", json=body).status_code == 422

    def test_out_of_range_item_rejected(self, client):
        assert client.post("/phq9", json=phq9_body(0, Q4=7)).status_code == 422

    def test_unknown_subject_404(self, client):
        assert client.post("/phq9",
                           json=phq9_body(0, subject="ghost")).status_code == 404

    def test_all_threes_leave_baseline_unchanged(self, client):
        before = client.get("/baselines", params={"subject": "local"}).json()
        metrics_before = before["snapshots"][-1]["metrics"]
        response = client.post("/phq9", json=phq9_body(3))
        assert response.status_code == 200
        assert response.json()["updated_metrics"] == {}
        after = client.get("/baselines", params={"subject": "local"}).json()
        assert after["snapshots"][-1]["metrics"] == metrics_before
