/** Live round-trip against a spawned primary service.
 *
 * Seeds a store with the Python CLI, starts the service, and verifies the
 * dashboard's PHQ-9 submission path produces an observable baseline
 * sample-count increase. Requires the hearlink package to be installed in
 * the ambient Python environment.
 */

import assert from "node:assert/strict";
import { execFileSync, spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { after, before, test } from "node:test";

import { ApiClient } from "../src/api";
import { buildSubmission } from "../src/phq9";
import { PHQ9_ITEMS } from "../src/phq9";

const PYTHON = process.env.HEARLINK_PYTHON ?? "python3";
const PORT = 8000 + Math.floor(Math.random() * 20000);
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess | null = null;
let workDir: string;

async function waitForService(timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/status`);
      if (response.ok) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 300));
  }
  throw new Error("service did not come up");
}

before(async () => {
  workDir = mkdtempSync(join(tmpdir(), "hearlink-live-"));
  const wav = join(workDir, "speech.wav");
  const config = join(workDir, "config.json");
  const data = join(workDir, "data");

  execFileSync(PYTHON, ["-m", "hearlink.cli", "synth", "--seed", "6",
                        "--profile", JSON.stringify([{ phase: "p", duration: 70.0 }]),
                        "--out", wav], { stdio: "pipe" });
  const configDoc = execFileSync(
    PYTHON,
    ["-c",
     "import json;from hearlink.linkage.config import default_config_document;" +
     "d=default_config_document();d['warmup_windows']=2;print(json.dumps(d))"],
    { encoding: "utf-8" },
  );
  writeFileSync(config, configDoc);
  execFileSync(PYTHON, ["-m", "hearlink.cli", "run", "--input", wav,
                        "--config", config, "--data", data,
                        "--subject", "local"], { stdio: "pipe" });

  service = spawn(PYTHON, ["-m", "hearlink.cli", "serve", "--data", data,
                           "--config", config, "--port", String(PORT)],
                  { stdio: "ignore" });
  await waitForService();
}, { timeout: 120000 });

after(() => {
  service?.kill();
});

test("all-zero PHQ-9 round-trips to a baseline sample-count increase", { timeout: 60000 }, async () => {
  const api = new ApiClient(BASE);

  const before_ = await api.baselines("local");
  assert.ok(before_.snapshots.length >= 1, "warmup snapshot must exist");
  const latest = before_.snapshots.at(-1)!;
  const metricName = Object.keys(latest.metrics)[0];
  const countBefore = latest.metrics[metricName].count;

  const answers = Object.fromEntries(PHQ9_ITEMS.map((item) => [item.key, 0]));
  const body = buildSubmission("local", answers,
                               () => "2026-02-02T08:00:00Z");
  assert.ok(body, "a complete all-zero form must build");
  const outcome = await api.submitPhq9(body!);
  assert.ok(outcome.absorbed_windows > 0);

  const after_ = await api.baselines("local");
  assert.equal(after_.snapshots.length, before_.snapshots.length + 1);
  const updated = after_.snapshots.at(-1)!;
  assert.equal(updated.reason, "phq9");
  assert.ok(
    updated.metrics[metricName].count > countBefore,
    `sample count must grow (${countBefore} -> ${updated.metrics[metricName].count})`,
  );
});

test("indicator payload served live matches the dashboard's rendering source", { timeout: 30000 }, async () => {
  const api = new ApiClient(BASE);
  const payload = await api.indicators("local");
  assert.ok(payload.indicators.length > 0);
  const { indicatorViews } = await import("../src/viewmodel");
  const views = indicatorViews(payload);
  for (const [i, series] of payload.indicators.entries()) {
    for (const [j, point] of series.points.entries()) {
      assert.equal(views[i].windows[j].ema, point.ema);
      assert.equal(views[i].windows[j].coverage, point.coverage);
    }
  }
});
