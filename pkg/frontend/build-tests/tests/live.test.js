"use strict";
/** Live round-trip against a spawned primary service.
 *
 * Seeds a store with the Python CLI, starts the service, and verifies the
 * dashboard's PHQ-9 submission path produces an observable baseline
 * sample-count increase. Requires the hearlink package to be installed in
 * the ambient Python environment.
 */
var __createBinding = (this && this.__createBinding) || (Object.create ? (function(o, m, k, k2) {
    if (k2 === undefined) k2 = k;
    var desc = Object.getOwnPropertyDescriptor(m, k);
    if (!desc || ("get" in desc ? !m.__esModule : desc.writable || desc.configurable)) {
      desc = { enumerable: true, get: function() { return m[k]; } };
    }
    Object.defineProperty(o, k2, desc);
}) : (function(o, m, k, k2) {
    if (k2 === undefined) k2 = k;
    o[k2] = m[k];
}));
var __setModuleDefault = (this && this.__setModuleDefault) || (Object.create ? (function(o, v) {
    Object.defineProperty(o, "default", { enumerable: true, value: v });
}) : function(o, v) {
    o["default"] = v;
});
var __importStar = (this && this.__importStar) || (function () {
    var ownKeys = function(o) {
        ownKeys = Object.getOwnPropertyNames || function (o) {
            var ar = [];
            for (var k in o) if (Object.prototype.hasOwnProperty.call(o, k)) ar[ar.length] = k;
            return ar;
        };
        return ownKeys(o);
    };
    return function (mod) {
        if (mod && mod.__esModule) return mod;
        var result = {};
        if (mod != null) for (var k = ownKeys(mod), i = 0; i < k.length; i++) if (k[i] !== "default") __createBinding(result, mod, k[i]);
        __setModuleDefault(result, mod);
        return result;
    };
})();
var __importDefault = (this && this.__importDefault) || function (mod) {
    return (mod && mod.__esModule) ? mod : { "default": mod };
};
Object.defineProperty(exports, "__esModule", { value: true });
const strict_1 = __importDefault(require("node:assert/strict"));
const node_child_process_1 = require("node:child_process");
const node_fs_1 = require("node:fs");
const node_os_1 = require("node:os");
const node_path_1 = require("node:path");
const node_test_1 = require("node:test");
const api_1 = require("../src/api");
const phq9_1 = require("../src/phq9");
const phq9_2 = require("../src/phq9");
const PYTHON = process.env.HEARLINK_PYTHON ?? "python3";
const PORT = 8000 + Math.floor(Math.random() * 20000);
const BASE = `http://127.0.0.1:${PORT}`;
let service = null;
let workDir;
async function waitForService(timeoutMs = 20000) {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
        try {
            const response = await fetch(`${BASE}/status`);
            if (response.ok) {
                return;
            }
        }
        catch {
            // not up yet
        }
        await new Promise((resolve) => setTimeout(resolve, 300));
    }
    throw new Error("service did not come up");
}
(0, node_test_1.before)(async () => {
    workDir = (0, node_fs_1.mkdtempSync)((0, node_path_1.join)((0, node_os_1.tmpdir)(), "hearlink-live-"));
    const wav = (0, node_path_1.join)(workDir, "speech.wav");
    const config = (0, node_path_1.join)(workDir, "config.json");
    const data = (0, node_path_1.join)(workDir, "data");
    (0, node_child_process_1.execFileSync)(PYTHON, ["-m", "hearlink.cli", "synth", "--seed", "6",
        "--profile", JSON.stringify([{ phase: "p", duration: 70.0 }]),
        "--out", wav], { stdio: "pipe" });
    const configDoc = (0, node_child_process_1.execFileSync)(PYTHON, ["-c",
        "import json;from hearlink.linkage.config import default_config_document;" +
            "d=default_config_document();d['warmup_windows']=2;print(json.dumps(d))"], { encoding: "utf-8" });
    (0, node_fs_1.writeFileSync)(config, configDoc);
    (0, node_child_process_1.execFileSync)(PYTHON, ["-m", "hearlink.cli", "run", "--input", wav,
        "--config", config, "--data", data,
        "--subject", "local"], { stdio: "pipe" });
    service = (0, node_child_process_1.spawn)(PYTHON, ["-m", "hearlink.cli", "serve", "--data", data,
        "--config", config, "--port", String(PORT)], { stdio: "ignore" });
    await waitForService();
}, { timeout: 120000 });
(0, node_test_1.after)(() => {
    service?.kill();
});
(0, node_test_1.test)("all-zero PHQ-9 round-trips to a baseline sample-count increase", { timeout: 60000 }, async () => {
    const api = new api_1.ApiClient(BASE);
    const before_ = await api.baselines("local");
    strict_1.default.ok(before_.snapshots.length >= 1, "warmup snapshot must exist");
    const latest = before_.snapshots.at(-1);
    const metricName = Object.keys(latest.metrics)[0];
    const countBefore = latest.metrics[metricName].count;
    const answers = Object.fromEntries(phq9_2.PHQ9_ITEMS.map((item) => [item.key, 0]));
    const body = (0, phq9_1.buildSubmission)("local", answers, () => "2026-02-02T08:00:00Z");
    strict_1.default.ok(body, "a complete all-zero form must build");
    const outcome = await api.submitPhq9(body);
    strict_1.default.ok(outcome.absorbed_windows > 0);
    const after_ = await api.baselines("local");
    strict_1.default.equal(after_.snapshots.length, before_.snapshots.length + 1);
    const updated = after_.snapshots.at(-1);
    strict_1.default.equal(updated.reason, "phq9");
    strict_1.default.ok(updated.metrics[metricName].count > countBefore, `sample count must grow (${countBefore} -> ${updated.metrics[metricName].count})`);
});
(0, node_test_1.test)("indicator payload served live matches the dashboard's rendering source", { timeout: 30000 }, async () => {
    const api = new api_1.ApiClient(BASE);
    const payload = await api.indicators("local");
    strict_1.default.ok(payload.indicators.length > 0);
    const { indicatorViews } = await Promise.resolve().then(() => __importStar(require("../src/viewmodel")));
    const views = indicatorViews(payload);
    for (const [i, series] of payload.indicators.entries()) {
        for (const [j, point] of series.points.entries()) {
            strict_1.default.equal(views[i].windows[j].ema, point.ema);
            strict_1.default.equal(views[i].windows[j].coverage, point.coverage);
        }
    }
});
