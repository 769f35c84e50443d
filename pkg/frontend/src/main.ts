/** Page wiring: poll the service, render panels, submit PHQ-9. */

import { ApiClient, ApiError } from "./api";
import { indicatorChart, metricChart, supportStrip } from "./charts";
import { fmt } from "./format";
import { ANSWER_OPTIONS, CRISIS_NOTICE, PHQ9_ITEMS, buildSubmission, validatePhq9 } from "./phq9";
import { tracePanel, traceNotFound } from "./trace";
import type { MappingConfig } from "./types";
import {
  indicatorViews,
  metricNames,
  metricSeries,
  supportWindows,
  traceViews,
} from "./viewmodel";

const POLL_MS = 2000;

const api = new ApiClient("");
const subject = new URLSearchParams(location.search).get("subject") ?? "local";

let mapping: MappingConfig | null = null;
let selectedMetric: string | null = null;
// last-write-wins guards, keyed by newest window rendered
let newestIndicatorWindow = -1;
let renderedIndicatorCount = -1;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id}`);
  }
  return node;
}

function tauOf(feature: string): number {
  if (!mapping) {
    return 3.0;
  }
  return mapping.clip[feature] ?? mapping.clip.default;
}

function setBanner(kind: "" | "degraded" | "warmup" | "empty", text = ""): void {
  const banner = el("banner");
  banner.className = kind ? `banner ${kind}` : "banner hidden";
  banner.textContent = text;
}

async function refreshIndicators(): Promise<void> {
  const payload = await api.indicators(subject);
  const views = indicatorViews(payload);
  const scoredWindows = views.flatMap((v) => v.windows.map((w) => w.windowStart));
  const newest = scoredWindows.length ? Math.max(...scoredWindows) : -1;
  if (newest < newestIndicatorWindow && views.length === renderedIndicatorCount) {
    return; // stale response lost the race; keep the newer rendering
  }
  newestIndicatorWindow = newest;
  renderedIndicatorCount = views.length;

  if (views.length === 0) {
    const status = await api.status();
    if ((status.collections["aggregated_metrics"] ?? 0) > 0) {
      setBanner("warmup",
        "Baseline warmup in progress: windows are calibrating the per-metric " +
        "baseline; indicator scoring starts once warmup completes.");
    } else {
      setBanner("empty", "No data yet for this subject.");
    }
    el("indicators").innerHTML = "";
    return;
  }
  setBanner("");
  el("indicators").innerHTML = views
    .map(
      (view) =>
        `<div class="panel indicator" data-indicator="${view.indicator}">` +
        `<h4>(${view.indicator}) ${view.label} ` +
        `<small>β=${view.beta} ϑ=${view.theta} ` +
        `γ=${fmt(view.windows.at(-1)?.coverage ?? null, 3)}</small></h4>` +
        indicatorChart(view) +
        `</div>`,
    )
    .join("");

  const support = supportWindows(await api.support(subject));
  el("support").innerHTML = `<h4>Support signal (count-of-nine rule)</h4>` +
    supportStrip(support);
}

async function refreshMetrics(): Promise<void> {
  const records = await api.aggregated(subject);
  const names = metricNames(records).filter((n) => n !== "voiced_fraction");
  const select = el("metric-select") as HTMLSelectElement;
  if (select.options.length !== names.length) {
    select.innerHTML = names
      .map((n) => `<option value="${n}">${n}</option>`)
      .join("");
    if (selectedMetric && names.includes(selectedMetric)) {
      select.value = selectedMetric;
    }
  }
  selectedMetric = select.value || names[0] || null;
  if (selectedMetric) {
    el("metric-chart").innerHTML = metricChart(metricSeries(records, selectedMetric));
  }
}

async function openTrace(window: number): Promise<void> {
  const target = el("trace");
  try {
    const payload = await api.trace(subject, window);
    target.innerHTML = tracePanel(
      payload.window_start,
      payload.support,
      traceViews(payload, tauOf),
    );
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      target.innerHTML = traceNotFound(window);
    } else {
      throw error;
    }
  }
}

function buildPhq9Form(): void {
  const form = el("phq9-form");
  form.innerHTML =
    PHQ9_ITEMS.map((item) => {
      const crisis =
        item.key === "Q9"
          ? `<p class="crisis-notice">${CRISIS_NOTICE}</p>`
          : "";
      const options = ANSWER_OPTIONS.map(
        (o) => `<label><input type="radio" name="${item.key}" value="${o.value}"> ${o.label}</label>`,
      ).join(" ");
      return (
        `<fieldset data-item="${item.key}">` +
        `<legend>${item.key}. ${item.text}</legend>${crisis}` +
        `<div class="options">${options}</div>` +
        `<span class="field-error" data-error-for="${item.key}"></span>` +
        `</fieldset>`
      );
    }).join("") +
    `<button id="phq9-submit" type="button">Submit PHQ-9</button>` +
    `<div id="phq9-result"></div>`;

  el("phq9-submit").addEventListener("click", async () => {
    const answers: Record<string, number | null> = {};
    for (const item of PHQ9_ITEMS) {
      const checked = document.querySelector<HTMLInputElement>(
        `input[name="${item.key}"]:checked`,
      );
      answers[item.key] = checked ? Number(checked.value) : null;
    }
    const { valid, errors } = validatePhq9(answers);
    for (const item of PHQ9_ITEMS) {
      const slot = document.querySelector(`[data-error-for="${item.key}"]`);
      if (slot) {
        slot.textContent = errors[item.key] ?? "";
      }
    }
    const result = el("phq9-result");
    if (!valid) {
      result.textContent = "Please answer every item before submitting.";
      return; // no request leaves the page
    }
    const body = buildSubmission(subject, answers);
    if (!body) {
      return;
    }
    try {
      const outcome = await api.submitPhq9(body);
      result.textContent =
        `Stored. ${outcome.absorbed_windows} windows absorbed; updated ` +
        `${Object.keys(outcome.updated_metrics).length} metric baselines.`;
      await refreshBaselines();
    } catch (error) {
      result.textContent = `Submission failed: ${(error as Error).message}`;
    }
  });
}

async function refreshBaselines(): Promise<void> {
  const payload = await api.baselines(subject);
  const latest = payload.snapshots.at(-1);
  if (!latest) {
    el("baselines").innerHTML = `<div class="empty">no baseline snapshot yet</div>`;
    return;
  }
  const rows = Object.keys(latest.metrics)
    .map((name) => {
      const m = latest.metrics[name];
      return (
        `<tr><td>${name}</td><td data-field="mu">${fmt(m.mu, 4)}</td>` +
        `<td data-field="sigma">${fmt(m.sigma, 4)}</td>` +
        `<td data-field="count">${m.count}</td></tr>`
      );
    })
    .join("");
  el("baselines").innerHTML =
    `<h4>Baseline snapshot v${latest.version} (${latest.reason}) — ` +
    `${payload.snapshots.length} total</h4>` +
    `<table class="trace-table"><thead><tr><th>metric</th><th>μ</th><th>σ</th>` +
    `<th>samples</th></tr></thead><tbody>${rows}</tbody></table>`;
}

async function poll(): Promise<void> {
  try {
    await refreshIndicators();
    await refreshMetrics();
    setIntervalBadge(true);
  } catch (error) {
    setIntervalBadge(false);
    setBanner(
      "degraded",
      `Service unreachable (${(error as Error).message}); charts paused, ` +
      `nothing shown is live.`,
    );
    el("indicators").innerHTML = "";
    el("metric-chart").innerHTML = "";
  }
}

function setIntervalBadge(ok: boolean): void {
  el("conn").className = ok ? "conn ok" : "conn down";
  el("conn").textContent = ok ? "live" : "offline";
}

async function start(): Promise<void> {
  el("subject-name").textContent = subject;
  buildPhq9Form();
  document.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const windowAttr = target.getAttribute?.("data-window");
    if (windowAttr) {
      void openTrace(Number(windowAttr));
    }
  });
  (el("metric-select") as HTMLSelectElement).addEventListener("change", () => {
    selectedMetric = (el("metric-select") as HTMLSelectElement).value;
    void refreshMetrics();
  });
  try {
    mapping = await api.config();
  } catch {
    mapping = null; // cap badges fall back to the default tau
  }
  await poll();
  await refreshBaselines();
  setInterval(() => void poll(), POLL_MS);
}

window.addEventListener("load", () => void start());
