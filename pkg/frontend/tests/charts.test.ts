/** Chart semantics: threshold lines, shading, degraded/empty states. */

import assert from "node:assert/strict";
import { test } from "node:test";

import { indicatorChart, metricChart, supportStrip } from "../src/charts";
import type { IndicatorView } from "../src/viewmodel";

function view(overrides: Partial<IndicatorView> = {}): IndicatorView {
  return {
    indicator: 5,
    label: "Psychomotor change",
    beta: 0.5,
    theta: 1.0,
    windows: [
      { windowStart: 0, score: 0.1, ema: 0.1, coverage: 0.5, bit: 0 },
      { windowStart: 10, score: 1.4, ema: 0.75, coverage: 0.5, bit: 0 },
      { windowStart: 20, score: 1.9, ema: 1.32, coverage: 0.5, bit: 1 },
      { windowStart: 30, score: 1.2, ema: 1.26, coverage: 0.5, bit: 1 },
    ],
    ...overrides,
  };
}

test("threshold reference line sits at theta", () => {
  const svg = indicatorChart(view({ theta: 1.25 }));
  assert.ok(svg.includes(`class="threshold"`));
  assert.ok(svg.includes(`data-theta="1.25"`));
});

test("activation shading covers exactly the bit=1 windows", () => {
  const svg = indicatorChart(view());
  const rects = [...svg.matchAll(/class="active"[^/]*data-window="(\d+)"/g)];
  assert.deepEqual(rects.map((m) => m[1]), ["20", "30"]);
});

test("ema polyline skips windows without a smoothed value", () => {
  const v = view();
  v.windows[1] = { ...v.windows[1], ema: null };
  const svg = indicatorChart(v);
  const dots = [...svg.matchAll(/data-window="(\d+)" data-value=/g)];
  assert.deepEqual(dots.map((m) => m[1]), ["0", "20", "30"]);
});

test("no scored windows renders an explicit empty state", () => {
  const svg = indicatorChart(view({ windows: [] }));
  assert.ok(svg.includes("no scored windows"));
  assert.ok(!svg.includes("<svg"));
});

test("metric chart empty state names the metric", () => {
  const html = metricChart({ metric: "hnr", points: [] });
  assert.ok(html.includes("no samples for hnr"));
});

test("support strip marks fired windows distinctly", () => {
  const svg = supportStrip([
    { windowStart: 0, support: 0 },
    { windowStart: 10, support: 1 },
    { windowStart: 20, support: 0 },
  ]);
  assert.equal((svg.match(/support-on/g) ?? []).length, 1);
  assert.equal((svg.match(/support-off/g) ?? []).length, 2);
  assert.ok(svg.includes(`data-support="1"`));
});
